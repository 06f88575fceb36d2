"""The 28-DOF nonconforming grad-curl element (lowest order).

The local space on a tetrahedron ``K`` is the first-kind Nedelec space of
degree one (20 functions) enriched by eight bubbles ``b_K b_F t`` where
``t`` runs over the two tangents of each face ``F``.  Degrees of freedom:

* two Legendre moments of ``u . t_e`` on each of the six edges,
* two tangential averages ``(u x n_F) . t_i`` on each face,
* two curl-trace averages ``((curl u) x n_F) . t_i`` on each face.

Every functional uses the global frame of its edge or face, so the same
functional is seen from both sides of an interior face.  Edge and face
functionals are normalized by the measure of the entity, and the curl-trace
functionals additionally by the face diameter, which only rescales the
global DOFs.

The basis is built in physical space: generators are polynomials in
``xi = (x - barycenter) / h_K`` and the nodal basis is obtained from the
inverse of the generalized Vandermonde matrix ``V[i, j] = l_i(g_j)``.
Internally every polynomial is stored in the monomial basis of the
barycentric coordinates ``(lambda_1, lambda_2, lambda_3)`` of the cell, where
bubbles have O(1) coefficients even on flat cells.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polynomials as poly
from .mesh import LOCAL_EDGES, LOCAL_FACES, sorted_face_frames
from .quadrature import interval_rule, push_forward, tri_rule

N_LOCAL_DOFS = 28
#: DOF layout inside a cell
EDGE_DOFS = slice(0, 12)
FACE_TANGENTIAL_DOFS = slice(12, 20)
FACE_CURL_DOFS = slice(20, 28)

MAX_CONDITION = 1e12


def _unit(i, j):
    m = np.zeros((3, 3))
    m[i, j] = 1.0
    return m


#: basis of 3x3 matrices complementary to the identity; xi x (A xi) spans
#: the homogeneous quadratic fields orthogonal to xi
S2_MATRICES = [_unit(i, j) for i in range(3) for j in range(3) if i != j] + [
    _unit(0, 0) - _unit(1, 1),
    _unit(1, 1) - _unit(2, 2),
]


class ElementConstructionError(RuntimeError):
    def __init__(self, cell_id, message):
        super().__init__(f"cell {cell_id}: {message}")
        self.cell_id = cell_id


@dataclass(frozen=True)
class DofFunctional:
    """One local degree of freedom.

    ``kind`` is ``"edge_moment"``, ``"face_tangential"`` or
    ``"face_curl_trace"``; ``index`` is the Legendre degree (edges) or the
    tangent number 0/1 (faces).  ``frame`` holds the global tangent (edge) or
    ``(n, t1, t2)`` (face).
    """

    kind: str
    index: int
    local_entity: int
    vertex_ids: tuple
    frame: tuple


@dataclass
class BasisValues:
    """Basis evaluations at ``n`` points: values and curls are (n, 28, 3),
    grad-curls (n, 28, 3, 3) with ``grad_curl[..., i, j] = d_j (curl)_i``."""

    values: np.ndarray
    curls: np.ndarray
    grad_curls: np.ndarray


class LocalGradCurlElement:
    """Nodal basis of the enriched space on one tetrahedron.

    Parameters
    ----------
    vertices : (4, 3) array
        Cell vertices (any orientation).
    vertex_ids : sequence of 4 ints
        Global vertex ids; they fix the orientation of every functional.
    cell_id : int, optional
        Used in error messages only.
    dof_degree : int
        Exactness of the edge and face rules used by the functionals.
    """

    order = 1
    dim = N_LOCAL_DOFS

    def __init__(self, vertices, vertex_ids, cell_id=-1, dof_degree=8):
        self.cell_id = cell_id
        self.vertices = np.asarray(vertices, dtype=float)
        self.vertex_ids = tuple(int(i) for i in vertex_ids)
        if len(set(self.vertex_ids)) != 4:
            raise ElementConstructionError(cell_id, "vertex ids must be distinct")
        self.center = self.vertices.mean(axis=0)
        edge_vec = self.vertices[LOCAL_EDGES[:, 1]] - self.vertices[LOCAL_EDGES[:, 0]]
        self.h = float(np.linalg.norm(edge_vec, axis=1).max())
        self.volume = abs(np.linalg.det(self.vertices[1:] - self.vertices[0])) / 6.0
        if self.volume <= 1e-14 * self.h**3:
            raise ElementConstructionError(cell_id, "degenerate cell")

        self.jacobian = (self.vertices[1:] - self.vertices[0]).T
        self.jacobian_inv = np.linalg.inv(self.jacobian)
        self._setup_barycentric()
        self._setup_functionals(dof_degree)
        self.generators = self._generators()

        V = self._apply_to_polynomials(self.generators)
        self.vandermonde = V
        self.condition = float(np.linalg.cond(V))
        if not np.isfinite(self.condition) or self.condition > MAX_CONDITION:
            raise ElementConstructionError(
                cell_id, f"Vandermonde matrix numerically singular (cond = {self.condition:.3e})"
            )
        self.dual_matrix = np.linalg.inv(V)
        self.coef = np.einsum("kj,kcm->jcm", self.dual_matrix, self.generators)
        self.curl_coef = poly.curl(self.coef, self.jacobian_inv)
        self.grad_curl_coef = poly.gradient(self.curl_coef, self.jacobian_inv)
        kron = self._apply_to_polynomials(self.coef)
        self.kronecker_error = float(np.abs(kron - np.eye(self.dim)).max())

    # -- construction --------------------------------------------------
    def _setup_barycentric(self):
        e = np.eye(3)
        self.barycentric = np.array([poly.affine(1.0, -np.ones(3))] + [poly.affine(0.0, e[i]) for i in range(3)])
        self.barycentric_gradients = np.vstack([-self.jacobian_inv.sum(axis=0), self.jacobian_inv])
        # xi = (x0 - c) / h + (J / h) r
        shift = (self.vertices[0] - self.center) / self.h
        self.xi_coef = np.array([poly.affine(shift[j], self.jacobian[j] / self.h) for j in range(3)])

    def _setup_functionals(self, degree):
        ids = np.array(self.vertex_ids)
        erule = interval_rule(degree)
        frule = tri_rule(degree)
        s = erule.points[:, 0]
        legendre = np.stack([np.ones_like(s), 2.0 * s - 1.0])

        self.functionals = []
        self._edge_quad = []
        for k, (a, b) in enumerate(LOCAL_EDGES):
            if ids[a] > ids[b]:
                a, b = b, a
            xa, xb = self.vertices[a], self.vertices[b]
            t = (xb - xa) / np.linalg.norm(xb - xa)
            pts = xa + s[:, None] * (xb - xa)
            self._edge_quad.append((pts, erule.weights[:, None] * legendre.T, t))
            for m in range(2):
                self.functionals.append(DofFunctional("edge_moment", m, k, (ids[a], ids[b]), (t,)))

        self._face_quad = []
        face_info = []
        for f, local in enumerate(LOCAL_FACES):
            local = local[np.argsort(ids[local])]
            x = self.vertices[local]
            n, tt = sorted_face_frames(x[None])
            n, tt = n[0], tt[0]
            pts, w = push_forward(frule, x)
            hF = max(np.linalg.norm(x[1] - x[0]), np.linalg.norm(x[2] - x[0]), np.linalg.norm(x[2] - x[1]))
            self._face_quad.append((pts, w / w.sum(), n, tt, hF))
            face_info.append((tuple(ids[local]), (n, tt[0], tt[1])))
        for kind in ("face_tangential", "face_curl_trace"):
            for f, (fid, frame) in enumerate(face_info):
                for i in range(2):
                    self.functionals.append(DofFunctional(kind, i, f, fid, frame))
        self.face_frames = [frame for _, frame in face_info]

    def _generators(self):
        gens = []
        e = np.eye(3)
        for c in range(3):
            g = np.zeros((3, poly.N_MONOMIALS))
            g[c] = poly.monomial((0, 0, 0))
            gens.append(g)
        xi = list(self.xi_coef)
        for c in range(3):
            for j in range(3):
                g = np.zeros((3, poly.N_MONOMIALS))
                g[c] = xi[j]
                gens.append(g)
        for A in S2_MATRICES:
            w = [sum(A[i, j] * xi[j] for j in range(3)) for i in range(3)]
            g = np.stack([
                poly.multiply(xi[1], w[2]) - poly.multiply(xi[2], w[1]),
                poly.multiply(xi[2], w[0]) - poly.multiply(xi[0], w[2]),
                poly.multiply(xi[0], w[1]) - poly.multiply(xi[1], w[0]),
            ])
            gens.append(g)
        lam = self.barycentric
        for f in range(4):
            b = lam[f]
            for j in range(4):
                if j != f:
                    b = poly.multiply(b, poly.multiply(lam[j], lam[j]))
            _, t1, t2 = self.face_frames[f]
            for t in (t1, t2):
                gens.append(t[:, None] * b[None, :])
        return np.array(gens)

    # -- evaluation ----------------------------------------------------
    def xi(self, points):
        return (np.asarray(points, dtype=float) - self.center) / self.h

    def reference_coordinates(self, points):
        return (np.asarray(points, dtype=float) - self.vertices[0]) @ self.jacobian_inv.T

    def _eval_poly(self, coef, points):
        M = poly.evaluation_matrix(self.reference_coordinates(points))
        return np.tensordot(M, coef, axes=(1, coef.ndim - 1))

    def _apply(self, value, curl):
        """Apply the 28 functionals to fields given as callables.

        ``value(x)`` and ``curl(x)`` return arrays of shape (n, ..., 3).
        """
        rows = []
        for pts, wl, t in self._edge_quad:
            vt = np.tensordot(value(pts), t, axes=(-1, 0))
            rows.extend(np.tensordot(wl.T, vt, axes=(1, 0)))
        faces = [(pts, w, n, tt, hF, value(pts)) for pts, w, n, tt, hF in self._face_quad]
        for pts, w, n, tt, hF, v in faces:
            c = np.cross(v, n)
            for t in tt:
                rows.append(np.tensordot(w, np.tensordot(c, t, axes=(-1, 0)), axes=(0, 0)))
        for pts, w, n, tt, hF, _ in faces:
            c = np.cross(curl(pts), n)
            for t in tt:
                rows.append(hF * np.tensordot(w, np.tensordot(c, t, axes=(-1, 0)), axes=(0, 0)))
        return np.array(rows)

    def _apply_to_polynomials(self, coef):
        curl_coef = poly.curl(coef, self.jacobian_inv)
        return self._apply(lambda x: self._eval_poly(coef, x), lambda x: self._eval_poly(curl_coef, x))

    def eval_basis(self, points):
        M = poly.evaluation_matrix(self.reference_coordinates(points))
        return BasisValues(
            values=np.tensordot(M, self.coef, axes=(1, 2)),
            curls=np.tensordot(M, self.curl_coef, axes=(1, 2)),
            grad_curls=np.tensordot(M, self.grad_curl_coef, axes=(1, 3)),
        )

    def interpolate(self, field, curl_field):
        """DOF values of a smooth field (see :func:`local_interpolate`)."""
        return self._apply(field, curl_field)

    def evaluate(self, coefficients, points):
        """Values, curls and grad-curls of ``sum_j c_j phi_j`` at ``points``."""
        b = self.eval_basis(points)
        c = np.asarray(coefficients)
        return (np.einsum("njc,j->nc", b.values, c),
                np.einsum("njc,j->nc", b.curls, c),
                np.einsum("njcd,j->ncd", b.grad_curls, c))


def build_local_element(mesh, cell_id, dof_degree=8):
    """Construct the element on cell ``cell_id`` of ``mesh``."""
    if dof_degree < 8:
        raise ValueError("DOF quadrature must be exact to degree 8 (degree-7 fields times P1 moments)")
    if not 0 <= cell_id < mesh.n_cells:
        raise IndexError(f"cell id {cell_id} out of range")
    ids = mesh.cells[cell_id]
    return LocalGradCurlElement(mesh.vertices[ids], ids, cell_id=cell_id, dof_degree=dof_degree)


def eval_basis(element, points):
    return element.eval_basis(points)


def local_interpolate(element, field, curl_field):
    """Canonical interpolation: the 28 DOF values of ``field``.

    ``field`` and ``curl_field`` map an (n, 3) point array to (n, 3) values.
    """
    return element.interpolate(field, curl_field)


def class_key(vertices, vertex_ids, scale):
    """Key identifying cells equal up to translation, including id ordering."""
    rel = (vertices[1:] - vertices[0]) / scale
    return tuple(np.argsort(vertex_ids)), tuple(np.round(rel.ravel() * 1e8).astype(np.int64))


class ElementCache:
    """Reuse elements across cells that coincide up to a translation.

    Structured meshes contain only six cell shapes, so building one element
    per translation class removes almost all construction cost.
    """

    def __init__(self, mesh, dof_degree=8):
        self.mesh = mesh
        self.dof_degree = dof_degree
        self._classes = {}
        self.cell_class = np.empty(mesh.n_cells, dtype=np.int64)
        self.elements = []
        scale = mesh.h_max
        for t, ids in enumerate(mesh.cells):
            key = class_key(mesh.vertices[ids], ids, scale)
            k = self._classes.get(key)
            if k is None:
                k = len(self.elements)
                self._classes[key] = k
                self.elements.append(build_local_element(mesh, t, dof_degree))
            self.cell_class[t] = k

    def __len__(self):
        return len(self.elements)

    def shift(self, cell_id):
        """Translation from the class representative to ``cell_id``."""
        rep = self.elements[self.cell_class[cell_id]]
        return self.mesh.vertices[self.mesh.cells[cell_id, 0]] - rep.vertices[0]

    def element(self, cell_id):
        return self.elements[self.cell_class[cell_id]]

    def cells_of_class(self, k):
        return np.flatnonzero(self.cell_class == k)
