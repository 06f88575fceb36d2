import numpy as np
import pytest
import scipy.sparse as sp

from quadcurl.forms import ProblemSpec, assemble
from quadcurl.manufactured import example1
from quadcurl.solver import (
    Inertia,
    SolverError,
    dense_inertia,
    factorization_inertia,
    matrix_inertia,
    pardiso_available,
    solve_saddle,
)

needs_pardiso = pytest.mark.skipif(not pardiso_available(), reason="MKL runtime not found")


@pytest.fixture(scope="module")
def small_system(mesh2, spaces2):
    maps, scalar = spaces2
    return assemble(mesh2, maps["weak"], scalar, ProblemSpec(1.0), example1(1.0).source)


def test_solution_and_residual(small_system):
    sol = solve_saddle(small_system)
    assert sol.residual <= 1e-9
    assert sol.inertia == Inertia(small_system.n_u, small_system.n_p, 0)
    # the load is only discretely divergence free up to its quadrature error
    assert np.abs(sol.p).max() <= 1e-4 * np.abs(sol.u).max()
    assert sol.u.shape == (small_system.dof_map.n_dofs,)


def test_zero_rhs_gives_zero(small_system):
    import copy

    S = copy.copy(small_system)
    S.rhs_u = np.zeros(S.n_u)
    sol = solve_saddle(S)
    assert np.abs(sol.u).max() == 0.0 and np.abs(sol.p).max() == 0.0


def test_superlu_matches_default(small_system):
    a = solve_saddle(small_system)
    b = solve_saddle(small_system, backend="superlu")
    assert b.backend == "superlu"
    assert np.allclose(a.u, b.u, atol=1e-9 * np.abs(a.u).max())
    assert b.inertia == Inertia(small_system.n_u, small_system.n_p, 0)


@needs_pardiso
def test_pardiso_inertia_matches_dense_oracle(small_system):
    K = small_system.block_matrix()
    assert factorization_inertia(small_system, "pardiso") == dense_inertia(K)


def test_dense_inertia_oracle():
    rng = np.random.default_rng(5)
    Q, _ = np.linalg.qr(rng.normal(size=(7, 7)))
    d = np.array([3.0, 1.0, 0.5, -2.0, -1.0, 0.0, 4.0])
    M = Q @ np.diag(d) @ Q.T
    assert dense_inertia(M) == Inertia(4, 2, 1)
    assert matrix_inertia(sp.csr_matrix(np.diag([1.0, -1.0, 2.0])), backend="dense") == Inertia(2, 1, 0)


def test_deterministic(small_system):
    a, b = solve_saddle(small_system), solve_saddle(small_system)
    assert np.array_equal(a.u, b.u)


def test_residual_check_raises(small_system):
    with pytest.raises(SolverError):
        solve_saddle(small_system, tol=0.0)
