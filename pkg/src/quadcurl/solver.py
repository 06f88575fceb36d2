"""Direct solution of the symmetric indefinite saddle-point system.

The preferred backend is MKL PARDISO (through ``pypardiso``) with a
symmetric indefinite Bunch-Kaufman factorization, which also reports the
inertia of the block matrix.  Without MKL, SuperLU solves the system and the
inertia is taken from a dense ``LDL^T`` factorization for small systems.
"""
from __future__ import annotations

import ctypes.util
import importlib.metadata
import logging
import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9
DENSE_INERTIA_LIMIT = 6000


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int


@dataclass(eq=False)
class SolutionVector:
    """Solution of the block system.

    ``u`` and ``p`` are zero-extended to all DOFs; ``u_free`` and ``p_free``
    are the solved unknowns.
    """

    u: np.ndarray
    p: np.ndarray
    u_free: np.ndarray
    p_free: np.ndarray
    residual: float
    inertia: Inertia | None
    backend: str
    perturbed_pivots: int = 0


def _locate_mkl_rt():
    path = os.environ.get("PYPARDISO_MKL_RT") or ctypes.util.find_library("mkl_rt")
    if path:
        return path
    try:
        files = importlib.metadata.files("mkl") or []
    except importlib.metadata.PackageNotFoundError:
        return None
    for f in files:
        if f.name.startswith("libmkl_rt.so"):
            return str(f.locate().resolve())
    return None


_PARDISO = None


def _pardiso_class():
    global _PARDISO
    if _PARDISO is None:
        path = _locate_mkl_rt()
        if path and "PYPARDISO_MKL_RT" not in os.environ:
            os.environ["PYPARDISO_MKL_RT"] = path
        try:
            from pypardiso.pardiso_wrapper import PyPardisoSolver
        except (ImportError, OSError) as exc:
            log.info("PARDISO unavailable (%s); falling back to SuperLU", exc)
            _PARDISO = False
        else:
            _PARDISO = PyPardisoSolver
    return _PARDISO or None


def pardiso_available():
    return _pardiso_class() is not None


def _upper_with_diagonal(K):
    """Upper triangle in CSR with every diagonal entry stored (PARDISO needs it)."""
    U = sp.triu(K, format="coo")
    n = K.shape[0]
    rows = np.concatenate([U.row, np.arange(n)])
    cols = np.concatenate([U.col, np.arange(n)])
    data = np.concatenate([U.data, np.zeros(n)])
    M = sp.csr_matrix((data, (rows, cols)), shape=K.shape)
    M.sort_indices()
    return M


class _PardisoLDLT:
    def __init__(self, K):
        cls = _pardiso_class()
        self.solver = cls(mtype=-2)
        s = self.solver
        s.set_iparm(1, 1)  # no solver defaults
        s.set_iparm(2, 2)  # nested dissection ordering
        s.set_iparm(8, 4)  # iterative refinement steps
        s.set_iparm(10, 8)  # pivot perturbation 1e-8
        s.set_iparm(11, 1)  # symmetric scaling
        s.set_iparm(13, 1)  # symmetric weighted matching
        s.set_iparm(21, 1)  # Bunch-Kaufman pivoting
        s.set_iparm(24, 0)
        s.set_iparm(25, 0)
        self.K = _upper_with_diagonal(K)
        try:
            s.factorize(self.K)
        except Exception as exc:  # PyPardisoError carries the error code
            raise SolverError(f"PARDISO factorization failed: {exc}") from exc
        n = K.shape[0]
        pos, neg = int(s.get_iparm(22)), int(s.get_iparm(23))
        self.inertia = Inertia(pos, neg, n - pos - neg)
        self.perturbed_pivots = int(s.get_iparm(14))

    def solve(self, b):
        return self.solver.solve(self.K, b)

    def free(self):
        self.solver.free_memory(everything=True)


def dense_inertia(K):
    """Inertia from a dense Bunch-Kaufman factorization (small systems only)."""
    Kd = K.toarray() if sp.issparse(K) else np.asarray(K)
    _, d, _ = scipy.linalg.ldl(Kd, lower=True)
    ev = []
    i, n = 0, len(d)
    while i < n:
        if i + 1 < n and d[i + 1, i] != 0:
            ev.extend(np.linalg.eigvalsh(d[i:i + 2, i:i + 2]))
            i += 2
        else:
            ev.append(d[i, i])
            i += 1
    ev = np.array(ev)
    tol = np.abs(ev).max() * 1e-13 * n
    return Inertia(int(np.sum(ev > tol)), int(np.sum(ev < -tol)), int(np.sum(np.abs(ev) <= tol)))


def matrix_inertia(K, backend="auto"):
    """Inertia of a symmetric sparse matrix from its LDL^T factorization."""
    if backend in ("auto", "pardiso") and pardiso_available():
        f = _PardisoLDLT(K)
        f.free()
        return f.inertia
    if backend == "pardiso":
        raise SolverError("PARDISO requested but MKL runtime not found")
    if K.shape[0] > DENSE_INERTIA_LIMIT:
        raise SolverError(f"dense inertia limited to {DENSE_INERTIA_LIMIT} unknowns without PARDISO")
    return dense_inertia(K)


def factorization_inertia(system, backend="auto"):
    """Inertia of the assembled block matrix ``[A B; B^T 0]``."""
    return matrix_inertia(system.block_matrix(), backend)


def solve_saddle(system, backend="auto", tol=RESIDUAL_TOL, check=True):
    """Solve ``[A B; B^T 0][u; p] = [rhs; 0]``.

    Raises :class:`SolverError` on factorization breakdown or, with ``check``,
    when the relative residual exceeds ``tol``.
    """
    if system.n_u == 0 or system.n_p == 0:
        raise SolverError("empty free DOF set")
    K = system.block_matrix()
    b = np.concatenate([system.rhs_u, np.zeros(system.n_p)])
    inertia = None
    perturbed = 0
    if backend in ("auto", "pardiso") and pardiso_available():
        fact = _PardisoLDLT(K)
        x = fact.solve(b)
        inertia, perturbed = fact.inertia, fact.perturbed_pivots
        fact.free()
        used = "pardiso"
    elif backend == "pardiso":
        raise SolverError("PARDISO requested but MKL runtime not found")
    else:
        try:
            lu = spla.splu(K.tocsc(), permc_spec="COLAMD")
        except RuntimeError as exc:
            raise SolverError(f"SuperLU factorization failed: {exc}") from exc
        x = lu.solve(b)
        # a few refinement steps
        for _ in range(2):
            x += lu.solve(b - K @ x)
        if K.shape[0] <= DENSE_INERTIA_LIMIT:
            inertia = dense_inertia(K)
        used = "superlu"

    bnorm = np.linalg.norm(b)
    r = np.linalg.norm(K @ x - b)
    residual = float(r / bnorm) if bnorm > 0 else float(r)
    if check and not residual <= tol:
        raise SolverError(f"relative residual {residual:.3e} exceeds {tol:.1e} ({used})")
    u_free, p_free = x[:system.n_u], x[system.n_u:]
    u = system.dof_map.extend(u_free)
    p = np.zeros(system.scalar_space.n_dofs)
    p[system.scalar_space.free_dofs] = p_free
    return SolutionVector(u=u, p=p, u_free=u_free, p_free=p_free, residual=residual,
                          inertia=inertia, backend=used, perturbed_pivots=perturbed)
