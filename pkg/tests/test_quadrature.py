import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadcurl.checks import quadrature_sweep
from quadcurl.quadrature import interval_rule, push_forward, tet_rule, tri_rule


def exact_simplex(exps):
    return math.prod(math.factorial(a) for a in exps) / math.factorial(len(exps) + sum(exps))


def test_sweep_up_to_16():
    assert quadrature_sweep(16) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 16), st.data())
def test_tet_monomials(D, data):
    a = data.draw(st.integers(0, D))
    b = data.draw(st.integers(0, D - a))
    c = data.draw(st.integers(0, D - a - b))
    r = tet_rule(D)
    val = r.integrate(r.points[:, 0] ** a * r.points[:, 1] ** b * r.points[:, 2] ** c)
    assert val == pytest.approx(exact_simplex((a, b, c)), rel=1e-12)


def test_weights_sum_to_measure():
    for D in range(17):
        assert interval_rule(D).weights.sum() == pytest.approx(1.0, abs=1e-14)
        assert tri_rule(D).weights.sum() == pytest.approx(0.5, abs=1e-14)
        assert tet_rule(D).weights.sum() == pytest.approx(1 / 6, abs=1e-14)


def test_point_counts():
    assert len(tet_rule(12)) == 343
    assert len(tet_rule(14)) == 512
    assert tet_rule(12).exactness_degree >= 12


def test_not_exact_beyond_degree():
    r = tet_rule(2)
    val = r.integrate(r.points[:, 0] ** 6)
    assert abs(val - exact_simplex((6, 0, 0))) > 1e-8


def test_rules_are_immutable():
    with pytest.raises(ValueError):
        tet_rule(4).weights[0] = 1.0


def test_push_forward_integrates_physical_monomials(rng):
    X = rng.normal(size=(4, 3))
    pts, w = push_forward(tet_rule(6), X)
    vol = abs(np.linalg.det(X[1:] - X[0])) / 6
    assert w.sum() == pytest.approx(vol, rel=1e-13)
    # linear function: mean value at the centroid
    assert np.dot(w, pts[:, 0]) == pytest.approx(vol * X[:, 0].mean(), rel=1e-12)
    F = rng.normal(size=(3, 3))
    _, wf = push_forward(tri_rule(4), F)
    assert wf.sum() == pytest.approx(0.5 * np.linalg.norm(np.cross(F[1] - F[0], F[2] - F[0])), rel=1e-13)


def test_push_forward_errors():
    with pytest.raises(ValueError):
        push_forward(tet_rule(2), np.zeros((4, 3)))
    with pytest.raises(ValueError):
        push_forward(tet_rule(2), np.eye(3))
    with pytest.raises(ValueError):
        tet_rule(-1)
