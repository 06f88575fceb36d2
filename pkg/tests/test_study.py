import numpy as np
import pytest

from quadcurl.forms import ProblemSpec, QuadratureDegreeError
from quadcurl.mesh import build_structured_mesh
from quadcurl.solver import SolverError
from quadcurl.space import build_dof_map
from quadcurl import study
from quadcurl.study import (
    DiscreteField,
    StudyConfig,
    SubdomainError,
    cells_in_subdomain,
    compute_errors,
    compute_rates,
    run_convergence,
)


def test_rates_examples():
    assert compute_rates([4.0, 1.0], [0.2, 0.1])[0] == pytest.approx(2.0)
    assert compute_rates([1.0, 1.0], [0.3, 0.1])[0] == 0.0
    # first two rows of the eps = 1 weak table, L2 column
    r = compute_rates([1.734e-01, 1.179e-01], [0.2165, 0.1732])[0]
    assert round(r, 2) == 1.73


def test_rates_errors():
    with pytest.raises(ValueError):
        compute_rates([1.0, 0.0], [0.2, 0.1])
    with pytest.raises(ValueError):
        compute_rates([1.0, 0.5], [0.1, 0.2])
    with pytest.raises(ValueError):
        compute_rates([1.0], [0.1])


def test_self_reference_gives_zero_errors():
    mesh = build_structured_mesh(2)
    dm = build_dof_map(mesh, "weak")
    u = np.random.default_rng(0).standard_normal(dm.n_dofs)
    rep = compute_errors(mesh, u, DiscreteField(mesh, dm, u), ProblemSpec(1.0), dm)
    assert max(rep.E_L2, rep.E_curl, rep.E_gc, rep.E_energy) <= 1e-12


def test_error_quadrature_guard():
    mesh = build_structured_mesh(2)
    dm = build_dof_map(mesh, "weak")
    with pytest.raises(QuadratureDegreeError):
        compute_errors(mesh, np.zeros(dm.n_dofs), None, ProblemSpec(1.0, quad_error=12), dm)


def test_subdomain_selection():
    mesh = build_structured_mesh(8)
    inside = cells_in_subdomain(mesh)
    assert inside.sum() == 6 * 6**3
    with pytest.raises(SubdomainError):
        cells_in_subdomain(build_structured_mesh(6))
    with pytest.raises(SubdomainError):
        StudyConfig(example=2, Ns=(8, 12), subdomain=True)


def test_config_defaults():
    assert StudyConfig(example=1).sigma == 50
    assert StudyConfig(example=2).sigma == 20


def test_small_study_rows_and_monotone():
    table = run_convergence(StudyConfig(example=1, epsilons=(1.0, 1e-2), Ns=(2, 3, 4)))
    assert [(r.epsilon, r.N) for r in table.rows] == [(e, n) for e in (1.0, 1e-2) for n in (2, 3, 4)]
    for eps in (1.0, 1e-2):
        rows = table.block(eps)
        assert rows[0].rates == {}
        e = [r.report.E_energy for r in rows]
        assert e[0] > e[1] > e[2]
        assert all(r > 0 for r in table.rates("E_energy", eps))


def test_failure_recorded(monkeypatch):
    def boom(*a, **k):
        raise SolverError("forced")

    monkeypatch.setattr(study, "solve_saddle", boom)
    table = run_convergence(StudyConfig(example=1, Ns=(2, 3)))
    assert all(r.report is None and "forced" in r.failure for r in table.rows)
    assert all(r.rates == {} for r in table.rows)


def test_energy_full_includes_boundary():
    rep, _ = study.solve_row(StudyConfig(example=2, epsilons=(1e-2,), Ns=(2,)), 1e-2, 2)
    assert rep.E_energy_full >= rep.E_energy
