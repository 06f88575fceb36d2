"""Assembly of the saddle-point systems and of the energy-norm matrices.

Weak (Nitsche) flavor::

    A(v, w) = eps^2 [ sum_K (grad curl v, grad curl w)_K
                      - sum_F <d_n curl v, curl w>_F - sum_F <d_n curl w, curl v>_F
                      + sigma sum_F h_F^-1 <curl v, curl w>_F ]
              + (curl v, curl w)

with ``F`` running over boundary faces.  The strong flavor keeps only the
volume terms and constrains the boundary curl-trace DOFs instead.  The
multiplier block is ``B[i, j] = (phi_i, grad q_j)`` and the load is
``(f, phi_i)``.  Constrained DOFs are eliminated.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .element import ElementCache
from .mesh import LOCAL_FACES
from .quadrature import push_forward, tet_rule, tri_rule
from .space import BC_FLAVORS

#: polynomial degree of the assembled integrands (basis degree 7, curl 6, grad-curl 5)
STIFFNESS_DEGREE = 12
MASS_DEGREE = 14
#: the load is not polynomial; degree 16 keeps (f, grad q_h) at round-off for divergence-free f
LOAD_DEGREE = 16


class QuadratureDegreeError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    epsilon: float
    sigma: float = 50.0
    bc_flavor: str = "weak"
    k: int = 1
    quad_assembly: int = 12
    quad_error: int = 14
    quad_load: int = LOAD_DEGREE

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.bc_flavor not in BC_FLAVORS:
            raise ValueError(f"bc_flavor must be one of {BC_FLAVORS}")
        if self.bc_flavor == "weak" and not self.sigma > 0:
            raise ValueError("the Nitsche penalty sigma must be positive")
        if self.quad_load < 1:
            raise QuadratureDegreeError("load quadrature degree must be positive")
        if self.k != 1:
            raise NotImplementedError("only the lowest-order element (k = 1) is available")


@dataclass(eq=False)
class SaddleSystem:
    """``[A B; B^T 0] [u; p] = [rhs_u; 0]`` on the free DOFs."""

    A: sp.csr_matrix
    B: sp.csr_matrix
    rhs_u: np.ndarray
    dof_map: object
    scalar_space: object
    spec: ProblemSpec
    info: dict = field(default_factory=dict)

    @property
    def n_u(self):
        return self.A.shape[0]

    @property
    def n_p(self):
        return self.B.shape[1]

    def block_matrix(self):
        n_p = self.n_p
        return sp.bmat([[self.A, self.B], [self.B.T, sp.csr_matrix((n_p, n_p))]], format="csr")


def cell_rule(element, degree):
    return push_forward(tet_rule(degree), element.vertices)


def boundary_face_groups(mesh, cache):
    """Group boundary faces by (translation class, local face index).

    Returns a dict ``(class, local_face) -> array of face ids``.
    """
    fb = np.flatnonzero(mesh.boundary_faces)
    cells = mesh.face_cells[fb, 0]
    local = np.argmax(mesh.cell_faces[cells] == fb[:, None], axis=1)
    groups = {}
    for f, t, lf in zip(fb, cells, local):
        groups.setdefault((int(cache.cell_class[t]), int(lf)), []).append(f)
    return {key: np.array(v) for key, v in groups.items()}


def face_rule(element, local_face, degree):
    """Quadrature on a face of ``element`` plus outward normal and diameter."""
    x = element.vertices[LOCAL_FACES[local_face]]
    pts, w = push_forward(tri_rule(degree), x)
    n = np.cross(x[1] - x[0], x[2] - x[0])
    n /= np.linalg.norm(n)
    if n @ (x[0] - element.vertices[local_face]) < 0:
        n = -n
    hF = max(np.linalg.norm(x[1] - x[0]), np.linalg.norm(x[2] - x[0]), np.linalg.norm(x[2] - x[1]))
    return pts, w, n, hF


def nitsche_face_matrices(element, local_face, degree):
    """Local boundary matrices ``(S + S^T, P)`` on one face.

    ``S[i, j] = <d_n curl phi_i, curl phi_j>_F`` and
    ``P[i, j] = h_F^-1 <curl phi_i, curl phi_j>_F``.
    """
    pts, w, n, hF = face_rule(element, local_face, degree)
    b = element.eval_basis(pts)
    dn = np.einsum("qicd,d->qic", b.grad_curls, n)
    S = np.einsum("q,qic,qjc->ij", w, dn, b.curls)
    P = np.einsum("q,qic,qjc->ij", w, b.curls, b.curls) / hF
    return S + S.T, P


def _scatter(rows_idx, cols_idx, local, shape):
    nc = len(rows_idx)
    r = np.broadcast_to(rows_idx[:, :, None], (nc, rows_idx.shape[1], cols_idx.shape[1]))
    c = np.broadcast_to(cols_idx[:, None, :], r.shape)
    v = np.broadcast_to(local, r.shape) if local.ndim == 2 else local
    return sp.coo_matrix((v.ravel(), (r.ravel(), c.ravel())), shape=shape).tocsr()


def assemble(mesh, dof_map, scalar_space, spec, source, cache=None):
    """Assemble the saddle-point system for ``spec.bc_flavor``.

    ``source`` maps an (..., 3) point array to (..., 3) load values.
    """
    if spec.bc_flavor != dof_map.bc_flavor:
        raise ValueError("dof map flavor does not match the problem spec")
    if spec.quad_assembly < STIFFNESS_DEGREE:
        raise QuadratureDegreeError(
            f"assembly quadrature degree {spec.quad_assembly} < integrand degree {STIFFNESS_DEGREE}"
        )
    cache = cache or ElementCache(mesh)
    deg = spec.quad_assembly
    eps2 = spec.epsilon**2
    n_u, n_p = dof_map.n_dofs, scalar_space.n_dofs

    A = sp.csr_matrix((n_u, n_u))
    B = sp.csr_matrix((n_u, n_p))
    rhs = np.zeros(n_u)
    for k, el in enumerate(cache.elements):
        cells = cache.cells_of_class(k)
        pts, w = cell_rule(el, deg)
        b = el.eval_basis(pts)
        K_gc = np.einsum("q,qicd,qjcd->ij", w, b.grad_curls, b.grad_curls)
        K_cc = np.einsum("q,qic,qjc->ij", w, b.curls, b.curls)
        r = el.reference_coordinates(pts)
        lam = np.column_stack([1.0 - r.sum(axis=1), r])
        _, grad_q = scalar_space.basis(lam, el.barycentric_gradients)
        K_b = np.einsum("q,qic,qjc->ij", w, b.values, grad_q)

        udofs = dof_map.cell_dofs[cells]
        A = A + _scatter(udofs, udofs, eps2 * K_gc + K_cc, (n_u, n_u))
        B = B + _scatter(udofs, scalar_space.cell_dofs[cells], K_b, (n_u, n_p))

        pts, w = cell_rule(el, spec.quad_load)
        vals = el.eval_basis(pts).values
        shifts = mesh.vertices[mesh.cells[cells, 0]] - el.vertices[0]
        fvals = source(pts[None, :, :] + shifts[:, None, :])
        F = np.einsum("q,cqd,qjd->cj", w, fvals, vals)
        np.add.at(rhs, udofs.ravel(), F.ravel())

    if spec.bc_flavor == "weak":
        for (k, lf), faces in boundary_face_groups(mesh, cache).items():
            el = cache.elements[k]
            sym, pen = nitsche_face_matrices(el, lf, deg)
            udofs = dof_map.cell_dofs[mesh.face_cells[faces, 0]]
            A = A + _scatter(udofs, udofs, eps2 * (spec.sigma * pen - sym), (n_u, n_u))

    fu, fp = dof_map.free_dofs, scalar_space.free_dofs
    A = A[fu][:, fu].tocsr()
    B = B[fu][:, fp].tocsr()
    return SaddleSystem(A=A.tocsr(), B=B, rhs_u=rhs[fu], dof_map=dof_map, scalar_space=scalar_space,
                        spec=spec, info={"n_classes": len(cache), "cache": cache})


def discrete_gradient(mesh, dof_map, scalar_space, cache=None):
    """Matrix ``G`` with ``G @ q`` = DOFs of ``grad q_h`` (all DOFs, both spaces).

    Piecewise quadratic gradients lie in the local space and have matching
    shared DOFs, so ``G`` is well defined; conflicting cell contributions
    indicate a broken numbering and raise ``ValueError``.
    """
    cache = cache or ElementCache(mesh)
    rows, cols, vals = [], [], []
    for k, el in enumerate(cache.elements):

        def grads(x, el=el):
            r = el.reference_coordinates(x.reshape(-1, 3))
            lam = np.column_stack([1.0 - r.sum(axis=1), r])
            g = scalar_space.basis(lam, el.barycentric_gradients)[1]
            return g.reshape(x.shape[:-1] + (10, 3))

        local = el.interpolate(grads, lambda x: np.zeros(x.shape[:-1] + (10, 3)))  # (28, 10)
        cells = cache.cells_of_class(k)
        r = np.repeat(dof_map.cell_dofs[cells], 10, axis=1)
        c = np.tile(scalar_space.cell_dofs[cells], (1, 28))
        rows.append(r.ravel())
        cols.append(c.ravel())
        vals.append(np.broadcast_to(local.ravel(), r.shape).ravel())
    rows, cols, vals = map(np.concatenate, (rows, cols, vals))
    key = rows * scalar_space.n_dofs + cols
    uniq, inv = np.unique(key, return_inverse=True)
    first = np.zeros(len(uniq))
    first[inv] = vals
    if np.abs(first[inv] - vals).max(initial=0.0) > 1e-9 * max(1.0, np.abs(vals).max()):
        raise ValueError("cell contributions to the discrete gradient disagree")
    return sp.csr_matrix((first, (uniq // scalar_space.n_dofs, uniq % scalar_space.n_dofs)),
                         shape=(dof_map.n_dofs, scalar_space.n_dofs))


@dataclass(eq=False)
class EnergyNormMatrices:
    """Quadratic forms on the full (unconstrained) vector DOF space.

    ``grad_curl``: sum_K ||grad curl v||_K^2; ``boundary``: sum over boundary
    faces of h_F^-1 ||curl v||_F^2; ``curl``: ||curl v||^2; ``mass``: ||v||^2.
    """

    grad_curl: sp.csr_matrix
    boundary: sp.csr_matrix
    curl: sp.csr_matrix
    mass: sp.csr_matrix

    @staticmethod
    def _q(M, v):
        return float(v @ (M @ v))

    def gc_h(self, v):
        return np.sqrt(self._q(self.grad_curl, v) + self._q(self.boundary, v))

    def eps_h(self, v, epsilon):
        return np.sqrt(epsilon**2 * self.gc_h(v) ** 2 + self._q(self.curl, v) + self._q(self.mass, v))

    def a_norm(self, v, epsilon):
        return np.sqrt(epsilon**2 * self._q(self.grad_curl, v) + self._q(self.curl, v) + self._q(self.mass, v))


def assemble_energy_norms(mesh, dof_map, spec, cache=None):
    deg = spec.quad_error
    if deg < MASS_DEGREE:
        raise QuadratureDegreeError(f"norm quadrature degree {deg} < integrand degree {MASS_DEGREE}")
    cache = cache or ElementCache(mesh)
    n = dof_map.n_dofs
    mats = {name: sp.csr_matrix((n, n)) for name in ("grad_curl", "boundary", "curl", "mass")}
    for k, el in enumerate(cache.elements):
        cells = cache.cells_of_class(k)
        pts, w = cell_rule(el, deg)
        b = el.eval_basis(pts)
        local = {
            "grad_curl": np.einsum("q,qicd,qjcd->ij", w, b.grad_curls, b.grad_curls),
            "curl": np.einsum("q,qic,qjc->ij", w, b.curls, b.curls),
            "mass": np.einsum("q,qic,qjc->ij", w, b.values, b.values),
        }
        udofs = dof_map.cell_dofs[cells]
        for name, M in local.items():
            mats[name] = mats[name] + _scatter(udofs, udofs, M, (n, n))
    for (k, lf), faces in boundary_face_groups(mesh, cache).items():
        _, pen = nitsche_face_matrices(cache.elements[k], lf, deg)
        udofs = dof_map.cell_dofs[mesh.face_cells[faces, 0]]
        mats["boundary"] = mats["boundary"] + _scatter(udofs, udofs, pen, (n, n))
    return EnergyNormMatrices(**mats)


def write_coordinate(matrix, path):
    """Export a sparse matrix as ``row col value`` lines (0-based)."""
    m = sp.coo_matrix(matrix)
    np.savetxt(path, np.column_stack([m.row, m.col, m.data]), fmt=["%d", "%d", "%.17g"])
