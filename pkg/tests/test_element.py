import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quadcurl import polynomials as poly
from quadcurl.element import (
    EDGE_DOFS,
    FACE_CURL_DOFS,
    FACE_TANGENTIAL_DOFS,
    ElementCache,
    ElementConstructionError,
    LocalGradCurlElement,
    build_local_element,
    local_interpolate,
)
from quadcurl.mesh import LOCAL_EDGES, LOCAL_FACES, build_structured_mesh
from quadcurl.quadrature import push_forward, tri_rule

IDS = (3, 0, 7, 5)


def shape_quality(X):
    vol = abs(np.linalg.det(X[1:] - X[0])) / 6
    h = max(np.linalg.norm(X[i] - X[j]) for i, j in LOCAL_EDGES)
    return vol / h**3 if h > 0 else 0.0


def random_tet(rng, min_quality=0.01):
    while True:
        X = rng.normal(size=(4, 3))
        if shape_quality(X) > min_quality:
            return X


@pytest.fixture(scope="module")
def element():
    X = np.array([[0.1, 0.0, 0.2], [1.0, 0.2, 0.0], [0.3, 0.9, 0.1], [0.2, 0.3, 1.1]])
    return LocalGradCurlElement(X, IDS)


def zero_curl(x):
    return np.zeros(np.shape(x))


@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(arrays(np.float64, (4, 3), elements=st.floats(-2, 2)), st.permutations(range(4)))
def test_unisolvence_random_tets(X, perm):
    assume(shape_quality(X) > 0.01)
    el = LocalGradCurlElement(X, [10 * p for p in perm])
    assert el.condition < 1e9
    assert el.kronecker_error <= 1e-9


def test_unisolvence_on_mesh_cells():
    mesh = build_structured_mesh(4)
    worst = max(build_local_element(mesh, c).kronecker_error for c in range(mesh.n_cells))
    assert worst <= 1e-9


def test_dimension_and_functional_order(element):
    assert element.dim == 28 and len(element.functionals) == 28
    kinds = [f.kind for f in element.functionals]
    assert kinds[EDGE_DOFS] == ["edge_moment"] * 12
    assert kinds[FACE_TANGENTIAL_DOFS] == ["face_tangential"] * 8
    assert kinds[FACE_CURL_DOFS] == ["face_curl_trace"] * 8


def reproduce(el, value, curl, pts):
    c = local_interpolate(el, value, curl)
    v, cu, _ = el.evaluate(c, pts)
    return np.abs(v - value(pts)).max(), np.abs(cu - curl(pts)).max()


def interior_points(el, rng, n=20):
    lam = rng.dirichlet(np.ones(4), n)
    return lam @ el.vertices


def test_constant_field_reproduced(element, rng):
    pts = interior_points(element, rng)
    err = reproduce(element, lambda x: np.broadcast_to([1.0, 0.0, 0.0], np.shape(x)), zero_curl, pts)
    assert max(err) <= 1e-12


def test_quadratic_nedelec_field_reproduced(element, rng):
    c, h = element.center, element.h

    def field(x):
        xi = (x - c) / h
        return np.cross(xi, np.stack([xi[..., 1], np.zeros_like(xi[..., 0]), np.zeros_like(xi[..., 0])], -1))

    def curl(x):
        # xi x (xi2, 0, 0) = (0, xi2 xi3, -xi2^2), so curl = (-3 xi2, 0, 0) / h
        xi = (x - c) / h
        zero = np.zeros_like(xi[..., 0])
        return np.stack([-3 * xi[..., 1], zero, zero], -1) / h

    pts = interior_points(element, rng)
    err = reproduce(element, field, curl, pts)
    assert max(err) <= 1e-10


def test_bubble_reproduced(element, rng):
    lam_g = np.linalg.inv(np.c_[np.ones(4), element.vertices].T)
    f = 2
    _, t1, _ = element.face_frames[f]

    def lam(x):
        return np.c_[np.ones(len(x)), x] @ lam_g.T

    def field(x):
        L = lam(x)
        bf = np.prod(L, axis=1) * np.prod(np.delete(L, f, axis=1), axis=1)
        return bf[:, None] * t1

    def curl(x, d=1e-5):
        out = np.zeros_like(x)
        J = np.stack([(field(x + d * e) - field(x - d * e)) / (2 * d) for e in np.eye(3)], -1)
        out[:, 0] = J[:, 2, 1] - J[:, 1, 2]
        out[:, 1] = J[:, 0, 2] - J[:, 2, 0]
        out[:, 2] = J[:, 1, 0] - J[:, 0, 1]
        return out

    pts = interior_points(element, rng)
    coef = local_interpolate(element, field, curl)
    v, _, _ = element.evaluate(coef, pts)
    assert np.abs(v - field(pts)).max() <= 1e-9
    assert np.abs(coef[:20]).max() <= 1e-12


def test_dofs_of_interpolant_match_field(element):
    def field(x):
        return np.stack([x[..., 1] ** 2, np.zeros(x.shape[:-1]), np.zeros(x.shape[:-1])], -1)

    def curl(x):
        return np.stack([np.zeros(x.shape[:-1]), np.zeros(x.shape[:-1]), -2 * x[..., 1]], -1)

    c = local_interpolate(element, field, curl)
    again = local_interpolate(element, lambda x: element.evaluate(c, x.reshape(-1, 3))[0].reshape(x.shape),
                              lambda x: element.evaluate(c, x.reshape(-1, 3))[1].reshape(x.shape))
    assert np.abs(again - c).max() <= 1e-12


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**31))
def test_gradient_inclusion(seed):
    rng = np.random.default_rng(seed)
    el = LocalGradCurlElement(random_tet(rng), IDS)
    Q = rng.normal(size=(3, 3))
    Q = Q + Q.T
    b = rng.normal(size=3)

    def grad_q(x):
        return x @ Q + b

    c = local_interpolate(el, grad_q, zero_curl)
    assert np.abs(c[FACE_CURL_DOFS]).max() <= 1e-12
    pts = interior_points(el, rng)
    v, cu, _ = el.evaluate(c, pts)
    assert np.abs(v - grad_q(pts)).max() <= 1e-10 * max(1.0, np.abs(grad_q(pts)).max())
    assert np.abs(cu).max() <= 1e-9


def test_curl_matches_finite_differences(element, rng):
    pts = interior_points(element, rng, 10)
    h = 1e-6
    b = element.eval_basis(pts)
    J = np.stack([(element.eval_basis(pts + h * e).values - element.eval_basis(pts - h * e).values) / (2 * h)
                  for e in np.eye(3)], -1)
    fd = np.stack([J[..., 2, 1] - J[..., 1, 2], J[..., 0, 2] - J[..., 2, 0], J[..., 1, 0] - J[..., 0, 1]], -1)
    scale = np.abs(b.curls).max()
    assert np.abs(fd - b.curls).max() <= 1e-6 * scale


def test_grad_curl_matches_finite_differences(element, rng):
    pts = interior_points(element, rng, 5)
    h = 1e-6
    fd = np.stack([(element.eval_basis(pts + h * e).curls - element.eval_basis(pts - h * e).curls) / (2 * h)
                   for e in np.eye(3)], -1)
    b = element.eval_basis(pts)
    assert np.abs(fd - b.grad_curls).max() <= 1e-6 * np.abs(b.grad_curls).max()


def test_polynomial_degrees(element):
    tol = 1e-10 * np.abs(element.coef).max()
    assert poly.degree(element.coef, tol) <= 7
    assert poly.degree(element.curl_coef, tol) <= 6
    assert poly.degree(element.grad_curl_coef, tol) <= 5


def test_linear_curl_has_constant_grad_curl(element, rng):
    # the 8 quadratic Nedelec generators have linear curls
    gens = element.generators[12:20]
    gc = poly.gradient(poly.curl(gens, element.jacobian_inv), element.jacobian_inv)
    assert np.abs(gc[..., 1:]).max() <= 1e-12 * np.abs(gc).max()
    curl0 = poly.curl(element.generators[:3], element.jacobian_inv)
    assert np.abs(curl0).max() == 0.0


def face_quadrature(el, f):
    x = el.vertices[LOCAL_FACES[f]]
    return push_forward(tri_rule(8), x)


def test_tangential_trace_locality(element):
    for f in range(4):
        n, _, _ = element.face_frames[f]
        owned = set(range(12, 20)[2 * f:2 * f + 2])
        for e, (a, b) in enumerate(LOCAL_EDGES):
            if a != f and b != f:
                owned |= {2 * e, 2 * e + 1}
        pts, _ = face_quadrature(element, f)
        vals = element.eval_basis(pts).values
        for j in range(28):
            if j not in owned:
                assert np.abs(np.cross(vals[:, j], n)).max() <= 1e-9


def test_curl_trace_locality(element):
    for f in range(4):
        n, t1, t2 = element.face_frames[f]
        pts, w = face_quadrature(element, f)
        c = np.cross(element.eval_basis(pts).curls, n)
        means = np.einsum("q,qjd,id->ji", w, c, np.stack([t1, t2]))
        mask = np.ones(28, dtype=bool)
        mask[20 + 2 * f:22 + 2 * f] = False
        assert np.abs(means[mask]).max() <= 1e-10


def test_bubble_generators_have_no_trace_dofs(element):
    V = element.vandermonde
    assert np.abs(V[:20, 20:]).max() == 0.0 or np.abs(V[:20, 20:]).max() <= 1e-14


def test_degenerate_cell_rejected():
    X = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
    with pytest.raises(ElementConstructionError):
        LocalGradCurlElement(X, IDS, cell_id=9)


def test_low_dof_degree_rejected(mesh2):
    with pytest.raises(ValueError):
        build_local_element(mesh2, 0, dof_degree=4)
    with pytest.raises(IndexError):
        build_local_element(mesh2, mesh2.n_cells)


def test_cache_translation_classes(mesh2, cache2, rng):
    assert len(cache2) == 6
    for cell in rng.choice(mesh2.n_cells, 8, replace=False):
        fresh = build_local_element(mesh2, cell)
        pts = interior_points(fresh, rng, 5)
        a = fresh.eval_basis(pts)
        b = cache2.element(cell).eval_basis(pts - cache2.shift(cell))
        assert np.allclose(a.values, b.values, atol=1e-10)
        assert np.allclose(a.grad_curls, b.grad_curls, atol=1e-7 * np.abs(a.grad_curls).max())
