"""Structured tetrahedral meshes of the unit cube.

The cube is divided into ``N**3`` subcubes and every subcube is split into
six tetrahedra sharing its main diagonal (Kuhn / Freudenthal split).  All
entity lists are deduplicated and stored as sorted vertex-id tuples, and the
geometric frames attached to edges and faces depend only on global vertex ids
so that degrees of freedom shared between cells never need sign flips.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

#: local edges of a tetrahedron as pairs of local vertex indices
LOCAL_EDGES = np.array([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
#: local face ``i`` is opposite local vertex ``i``
LOCAL_FACES = np.array([(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)])


def _signed_volumes(vertices, cells):
    x = vertices[cells]
    d = x[:, 1:, :] - x[:, :1, :]
    return np.linalg.det(d) / 6.0


def sorted_face_frames(x):
    """Normals and tangents of faces given by (F, 3, 3) sorted-vertex coordinates."""
    t1 = x[:, 1] - x[:, 0]
    n = np.cross(t1, x[:, 2] - x[:, 0])
    n = n / np.linalg.norm(n, axis=1)[:, None]
    t1 = t1 / np.linalg.norm(t1, axis=1)[:, None]
    return n, np.stack([t1, np.cross(n, t1)], axis=1)


def _unique_rows(rows):
    """Sort entity rows, deduplicate, return (unique, inverse)."""
    rows = np.sort(rows, axis=1)
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    return uniq, inverse.reshape(-1)


@dataclass(frozen=True)
class EntityFrame:
    """Orientation data of a mesh edge or face.

    For an edge only ``edge_tangent`` is set; for a face ``face_normal`` and
    ``face_tangents`` are set.
    """

    edge_tangent: np.ndarray | None = None
    face_normal: np.ndarray | None = None
    face_tangents: tuple[np.ndarray, np.ndarray] | None = None


@dataclass(frozen=True, eq=False)
class StructuredTetMesh:
    """Tetrahedral mesh with oriented entity connectivity.

    Attributes
    ----------
    n_per_axis : int
        Number of subcubes per axis (``N``).
    vertices : (V, 3) float array
    cells : (T, 4) int array, positively oriented
    edges : (E, 2) int array of sorted vertex ids
    faces : (F, 3) int array of sorted vertex ids
    cell_edges : (T, 6) int array, ordered as :data:`LOCAL_EDGES`
    cell_faces : (T, 4) int array, face ``i`` opposite local vertex ``i``
    face_cells : (F, 2) int array, ``-1`` in the second slot on the boundary
    """

    n_per_axis: int
    vertices: np.ndarray
    cells: np.ndarray
    edges: np.ndarray
    faces: np.ndarray
    cell_edges: np.ndarray
    cell_faces: np.ndarray
    face_cells: np.ndarray
    extra: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_cells(cls, vertices, cells, n_per_axis=0):
        """Derive the full entity connectivity from a vertex/cell table."""
        vertices = np.asarray(vertices, dtype=float)
        cells = np.asarray(cells, dtype=np.int64)
        n_cells = len(cells)

        edges, e_inv = _unique_rows(cells[:, LOCAL_EDGES].reshape(-1, 2))
        faces, f_inv = _unique_rows(cells[:, LOCAL_FACES].reshape(-1, 3))
        cell_edges = e_inv.reshape(n_cells, 6)
        cell_faces = f_inv.reshape(n_cells, 4)

        face_cells = np.full((len(faces), 2), -1, dtype=np.int64)
        counts = np.zeros(len(faces), dtype=np.int64)
        for t, row in enumerate(cell_faces):
            for f in row:
                if counts[f] < 2:
                    face_cells[f, counts[f]] = t
                counts[f] += 1

        mesh = cls(
            n_per_axis=int(n_per_axis),
            vertices=vertices,
            cells=cells,
            edges=edges,
            faces=faces,
            cell_edges=cell_edges,
            cell_faces=cell_faces,
            face_cells=face_cells,
        )
        mesh.extra["face_incidence"] = counts
        for arr in (vertices, cells, edges, faces, cell_edges, cell_faces, face_cells):
            arr.setflags(write=False)
        return mesh

    # -- sizes ---------------------------------------------------------
    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_cells(self):
        return len(self.cells)

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_faces(self):
        return len(self.faces)

    # -- geometry ------------------------------------------------------
    @cached_property
    def signed_volumes(self):
        return _signed_volumes(self.vertices, self.cells)

    @cached_property
    def cell_diameters(self):
        x = self.vertices[self.cells]
        d = x[:, LOCAL_EDGES[:, 1]] - x[:, LOCAL_EDGES[:, 0]]
        return np.linalg.norm(d, axis=2).max(axis=1)

    @cached_property
    def face_diameters(self):
        x = self.vertices[self.faces]
        d = np.stack([x[:, 1] - x[:, 0], x[:, 2] - x[:, 0], x[:, 2] - x[:, 1]], axis=1)
        return np.linalg.norm(d, axis=2).max(axis=1)

    @cached_property
    def face_areas(self):
        x = self.vertices[self.faces]
        return 0.5 * np.linalg.norm(np.cross(x[:, 1] - x[:, 0], x[:, 2] - x[:, 0]), axis=1)

    @cached_property
    def edge_lengths(self):
        x = self.vertices[self.edges]
        return np.linalg.norm(x[:, 1] - x[:, 0], axis=1)

    @property
    def h_max(self):
        """Maximum cell diameter."""
        return float(self.cell_diameters.max())

    @cached_property
    def barycenters(self):
        return self.vertices[self.cells].mean(axis=1)

    # -- boundary ------------------------------------------------------
    @cached_property
    def boundary_faces(self):
        """Boolean mask of faces with a single incident cell."""
        return self.face_cells[:, 1] < 0

    @cached_property
    def boundary_edges(self):
        mask = np.zeros(self.n_edges, dtype=bool)
        fb = self.faces[self.boundary_faces]
        pairs = np.concatenate([fb[:, [0, 1]], fb[:, [0, 2]], fb[:, [1, 2]]])
        lookup = {tuple(e): i for i, e in enumerate(self.edges.tolist())}
        mask[[lookup[tuple(p)] for p in pairs.tolist()]] = True
        return mask

    @cached_property
    def boundary_vertices(self):
        mask = np.zeros(self.n_vertices, dtype=bool)
        mask[self.faces[self.boundary_faces].ravel()] = True
        return mask

    @cached_property
    def boundary_face_outward_normals(self):
        """(F, 3) outward unit normals; rows of interior faces are zero."""
        out = np.zeros((self.n_faces, 3))
        fb = np.flatnonzero(self.boundary_faces)
        n = self.face_normals[fb]
        cell = self.face_cells[fb, 0]
        # the face normal must point away from the cell barycenter
        c = self.barycenters[cell] - self.vertices[self.faces[fb, 0]]
        sign = -np.sign(np.einsum("ij,ij->i", n, c))
        out[fb] = n * sign[:, None]
        return out

    # -- frames --------------------------------------------------------
    @cached_property
    def edge_tangents(self):
        x = self.vertices[self.edges]
        t = x[:, 1] - x[:, 0]
        return t / np.linalg.norm(t, axis=1)[:, None]

    @cached_property
    def _face_frames(self):
        return sorted_face_frames(self.vertices[self.faces])

    @property
    def face_normals(self):
        return self._face_frames[0]

    @property
    def face_tangents(self):
        """(F, 2, 3): ``t1`` along the lowest-id edge, ``t2 = n x t1``."""
        return self._face_frames[1]


def build_structured_mesh(N):
    """Kuhn triangulation of the unit cube with ``N`` subcubes per axis."""
    if int(N) != N or N < 1:
        raise ValueError(f"number of subdivisions must be a positive integer, got {N!r}")
    N = int(N)
    n1 = N + 1
    g = np.arange(n1)
    ii, jj, kk = np.meshgrid(g, g, g, indexing="ij")
    # vertex id = i + (N+1) j + (N+1)^2 k
    vid = lambda i, j, k: i + n1 * j + n1 * n1 * k  # noqa: E731
    order = np.argsort(vid(ii, jj, kk).ravel())
    coords = np.stack([ii.ravel(), jj.ravel(), kk.ravel()], axis=1)[order] / N

    c = np.arange(N)
    ci, cj, ck = (a.ravel() for a in np.meshgrid(c, c, c, indexing="ij"))
    base = np.stack([ci, cj, ck], axis=1)
    unit = np.eye(3, dtype=np.int64)

    cells = []
    for perm in itertools.permutations(range(3)):
        p0 = base
        p1 = p0 + unit[perm[0]]
        p2 = p1 + unit[perm[1]]
        p3 = p0 + 1
        tet = np.stack([vid(*p.T) for p in (p0, p1, p2, p3)], axis=1)
        cells.append(tet)
    # subcube-major ordering: the six tets of one subcube are contiguous
    cells = np.stack(cells, axis=1)
    sub_order = np.lexsort((ci, cj, ck))
    cells = cells[sub_order].reshape(-1, 4)

    vol = _signed_volumes(coords, cells)
    neg = vol < 0
    cells[neg] = cells[neg][:, [0, 1, 3, 2]]
    return StructuredTetMesh.from_cells(coords, cells, n_per_axis=N)


def edge_frame(mesh, edge_id):
    if not 0 <= edge_id < mesh.n_edges:
        raise IndexError(f"edge id {edge_id} out of range [0, {mesh.n_edges})")
    return EntityFrame(edge_tangent=mesh.edge_tangents[edge_id].copy())


def face_frame(mesh, face_id):
    if not 0 <= face_id < mesh.n_faces:
        raise IndexError(f"face id {face_id} out of range [0, {mesh.n_faces})")
    t = mesh.face_tangents[face_id]
    return EntityFrame(face_normal=mesh.face_normals[face_id].copy(),
                       face_tangents=(t[0].copy(), t[1].copy()))


@dataclass
class MeshDiagnostics:
    """Outcome of :func:`validate_mesh`: ``checks[name] = (passed, detail)``."""

    checks: dict
    euler_characteristic: int

    @property
    def ok(self):
        return all(passed for passed, _ in self.checks.values())

    def failures(self):
        return [name for name, (passed, _) in self.checks.items() if not passed]


def validate_mesh(mesh, tol=1e-12):
    """Check the structural invariants of a tetrahedral mesh of the unit cube."""
    checks = {}
    vol = mesh.signed_volumes
    n_neg = int(np.sum(vol <= 0))
    checks["positive_volumes"] = (n_neg == 0, f"{n_neg} cells with non-positive volume")
    total = float(vol.sum())
    checks["total_volume"] = (abs(total - 1.0) < 1e-10, f"sum of signed volumes = {total:.16g}")

    counts = mesh.extra.get("face_incidence")
    if counts is None:
        counts = np.bincount(mesh.cell_faces.ravel(), minlength=mesh.n_faces)
    x = mesh.vertices[mesh.faces]
    on_cube_face = np.zeros(mesh.n_faces, dtype=bool)
    for axis in range(3):
        for val in (0.0, 1.0):
            on_cube_face |= np.all(np.abs(x[:, :, axis] - val) < tol, axis=1)
    bad_incidence = np.sum((counts != 2) & ~on_cube_face) + np.sum((counts != 1) & on_cube_face)
    checks["face_incidence"] = (bool(bad_incidence == 0), f"{int(bad_incidence)} faces with wrong cell count")
    mismatch = int(np.sum(mesh.boundary_faces != on_cube_face))
    checks["boundary_classification"] = (mismatch == 0, f"{mismatch} misclassified faces")

    chi = mesh.n_vertices - mesh.n_edges + mesh.n_faces - mesh.n_cells
    checks["euler_characteristic"] = (chi == 1, f"V - E + F - T = {chi}")

    if mesh.n_per_axis > 0:
        expected_h = float(np.sqrt(3.0) / mesh.n_per_axis)
        checks["h_max"] = (bool(abs(mesh.h_max - expected_h) < 1e-12),
                           f"h_max = {mesh.h_max:.16g}, expected {expected_h:.16g}")
    return MeshDiagnostics(checks=checks, euler_characteristic=chi)


def write_mesh(mesh, path):
    """Dump vertex and cell tables as plain text (debugging aid)."""
    path = Path(path)
    with path.open("w") as fh:
        fh.write(f"vertices {mesh.n_vertices}\n")
        np.savetxt(fh, mesh.vertices, fmt="%.17g")
        fh.write(f"cells {mesh.n_cells}\n")
        np.savetxt(fh, mesh.cells, fmt="%d")
    return path
