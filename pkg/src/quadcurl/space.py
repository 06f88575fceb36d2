"""Global numbering for the grad-curl space and the scalar multiplier space.

Vector DOFs are numbered entity by entity: two per edge (``2 e``, ``2 e + 1``),
then two tangential DOFs per face, then two curl-trace DOFs per face.  Scalar
DOFs are the vertices followed by the edge midpoints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .mesh import LOCAL_EDGES
from .quadrature import tet_rule

BC_FLAVORS = ("weak", "strong")


def _free_maps(n, constrained):
    mask = np.zeros(n, dtype=bool)
    mask[constrained] = True
    free = np.flatnonzero(~mask)
    to_free = np.full(n, -1, dtype=np.int64)
    to_free[free] = np.arange(len(free))
    return mask, free, to_free


@dataclass(eq=False)
class GlobalDofMap:
    """DOF numbering of the grad-curl space with its boundary constraints.

    Both flavors constrain every edge DOF and tangential face DOF on the
    boundary (``u x n = 0``); the strong flavor also constrains boundary
    curl-trace DOFs.
    """

    mesh: object
    bc_flavor: str
    n_dofs: int
    cell_dofs: np.ndarray
    constrained_mask: np.ndarray
    free_dofs: np.ndarray
    global_to_free: np.ndarray

    @property
    def n_free(self):
        return len(self.free_dofs)

    def edge_dofs(self, edge_id):
        return np.array([2 * edge_id, 2 * edge_id + 1])

    def face_tangential_dofs(self, face_id):
        base = 2 * self.mesh.n_edges
        return np.array([base + 2 * face_id, base + 2 * face_id + 1])

    def face_curl_dofs(self, face_id):
        base = 2 * self.mesh.n_edges + 2 * self.mesh.n_faces
        return np.array([base + 2 * face_id, base + 2 * face_id + 1])

    def extend(self, free_values):
        """Zero-extend a vector over free DOFs to all DOFs."""
        full = np.zeros(self.n_dofs)
        full[self.free_dofs] = free_values
        return full


def build_dof_map(mesh, flavor="weak"):
    if flavor not in BC_FLAVORS:
        raise ValueError(f"bc flavor must be one of {BC_FLAVORS}, got {flavor!r}")
    nE, nF = mesh.n_edges, mesh.n_faces
    n_dofs = 2 * nE + 4 * nF
    e = mesh.cell_edges
    f = mesh.cell_faces
    cell_dofs = np.concatenate([
        np.stack([2 * e, 2 * e + 1], axis=2).reshape(-1, 12),
        np.stack([2 * nE + 2 * f, 2 * nE + 2 * f + 1], axis=2).reshape(-1, 8),
        np.stack([2 * nE + 2 * nF + 2 * f, 2 * nE + 2 * nF + 2 * f + 1], axis=2).reshape(-1, 8),
    ], axis=1)

    be = np.flatnonzero(mesh.boundary_edges)
    bf = np.flatnonzero(mesh.boundary_faces)
    constrained = [2 * be, 2 * be + 1, 2 * nE + 2 * bf, 2 * nE + 2 * bf + 1]
    if flavor == "strong":
        constrained += [2 * nE + 2 * nF + 2 * bf, 2 * nE + 2 * nF + 2 * bf + 1]
    mask, free, to_free = _free_maps(n_dofs, np.concatenate(constrained))
    return GlobalDofMap(mesh, flavor, n_dofs, cell_dofs, mask, free, to_free)


@dataclass(eq=False)
class ScalarLagrangeSpace:
    """Continuous piecewise quadratics; DOFs at vertices and edge midpoints."""

    mesh: object
    n_dofs: int
    cell_dofs: np.ndarray
    nodes: np.ndarray
    constrained_mask: np.ndarray
    free_dofs: np.ndarray
    global_to_free: np.ndarray

    @property
    def n_free(self):
        return len(self.free_dofs)

    def barycentric_gradients(self, cells=None):
        """(T, 4, 3) gradients of the barycentric coordinates."""
        X = self.mesh.vertices[self.mesh.cells if cells is None else self.mesh.cells[cells]]
        # column k of T is (1, x_k); row i of T^{-1} holds (.., grad lambda_i)
        T = np.concatenate([np.ones(X.shape[:2] + (1,)), X], axis=2).transpose(0, 2, 1)
        return np.linalg.inv(T)[:, :, 1:]

    def basis(self, lam, grad_lam):
        """Values and gradients of the 10 local basis functions.

        Parameters
        ----------
        lam : (n, 4) barycentric coordinates of the evaluation points
        grad_lam : (4, 3) barycentric gradients of the cell

        Returns
        -------
        values : (n, 10), gradients : (n, 10, 3)
        """
        i, j = LOCAL_EDGES[:, 0], LOCAL_EDGES[:, 1]
        vals = np.concatenate([lam * (2 * lam - 1), 4 * lam[:, i] * lam[:, j]], axis=1)
        gv = (4 * lam - 1)[:, :, None] * grad_lam[None]
        ge = 4 * (lam[:, i, None] * grad_lam[None, j] + lam[:, j, None] * grad_lam[None, i])
        return vals, np.concatenate([gv, ge], axis=1)

    def stiffness_matrix(self):
        """Global ``(grad q_i, grad q_j)`` over all scalar DOFs."""
        rule = tet_rule(2)
        lam = np.column_stack([1.0 - rule.points.sum(axis=1), rule.points])
        G = self.barycentric_gradients()
        vol = np.abs(self.mesh.signed_volumes)
        # gradients are affine in lambda, so evaluate per cell with the shared points
        grads = np.stack([self.basis(lam, g)[1] for g in G])  # (T, q, 10, 3)
        K = np.einsum("q,tqid,tqjd->tij", rule.weights, grads, grads) * (6.0 * vol)[:, None, None]
        r = np.repeat(self.cell_dofs, 10, axis=1).ravel()
        c = np.tile(self.cell_dofs, (1, 10)).ravel()
        return sp.coo_matrix((K.ravel(), (r, c)), shape=(self.n_dofs, self.n_dofs)).tocsr()

    def h1_seminorm(self, values):
        values = np.asarray(values, dtype=float)
        return float(np.sqrt(max(values @ (self.stiffness_matrix() @ values), 0.0)))

    def interpolate(self, q):
        """Nodal interpolation of a scalar function ``q(points)``."""
        return np.asarray(q(self.nodes), dtype=float)


def build_scalar_space(mesh):
    V = mesh.n_vertices
    nodes = np.concatenate([mesh.vertices, mesh.vertices[mesh.edges].mean(axis=1)])
    cell_dofs = np.concatenate([mesh.cells, V + mesh.cell_edges], axis=1)
    constrained = np.concatenate([np.flatnonzero(mesh.boundary_vertices), V + np.flatnonzero(mesh.boundary_edges)])
    mask, free, to_free = _free_maps(V + mesh.n_edges, constrained)
    return ScalarLagrangeSpace(mesh, V + mesh.n_edges, cell_dofs, nodes, mask, free, to_free)
