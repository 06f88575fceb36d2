import numpy as np
import pytest

from quadcurl.manufactured import SUBDOMAIN, example1, example2, get_example

H = 1e-4


def jac(f, x):
    return np.stack([(f(x + H * e) - f(x - H * e)) / (2 * H) for e in np.eye(3)], -1)


def curl_fd(f, x):
    J = jac(f, x)
    return np.stack([J[..., 2, 1] - J[..., 1, 2], J[..., 0, 2] - J[..., 2, 0], J[..., 1, 0] - J[..., 0, 1]], -1)


def lap_fd(f, x):
    return sum((f(x + H * e) - 2 * f(x) + f(x - H * e)) / H**2 for e in np.eye(3))


@pytest.fixture
def pts(rng):
    return rng.uniform(0.05, 0.95, (15, 3))


@pytest.mark.parametrize("make", [lambda: example1(1.0), lambda: example2()])
def test_derivative_chain(make, pts):
    p = make()
    scale = lambda a: max(1.0, np.abs(a).max())  # noqa: E731
    assert np.abs(curl_fd(p.u, pts) - p.curl(pts)).max() <= 1e-6 * scale(p.curl(pts))
    assert np.abs(jac(p.curl, pts) - p.grad_curl(pts)).max() <= 1e-6 * scale(p.grad_curl(pts))
    div = np.trace(jac(p.u, pts), axis1=-2, axis2=-1)
    assert np.abs(div).max() <= 1e-7


def d4(f, x, e, h):
    return (-f(x + 2 * h * e) + 8 * f(x + h * e) - 8 * f(x - h * e) + f(x - 2 * h * e)) / (12 * h)


def curl4(f, x, h=2e-3):
    J = np.stack([d4(f, x, e, h) for e in np.eye(3)], -1)
    return np.stack([J[..., 2, 1] - J[..., 1, 2], J[..., 0, 2] - J[..., 2, 0], J[..., 1, 0] - J[..., 0, 1]], -1)


def lap4(f, x, h=2e-3):
    return sum((-f(x + 2 * h * e) + 16 * f(x + h * e) - 30 * f(x) + 16 * f(x - h * e) - f(x - 2 * h * e))
               / (12 * h * h) for e in np.eye(3))


@pytest.mark.parametrize("eps", [1.0, 1e-2, 1e-5])
def test_example1_source_nested_fd(eps, rng):
    """Source against fourth-order stencils nested five levels deep, starting from u."""
    x = rng.uniform(0.05, 0.95, (10, 3))
    p = example1(eps)
    c = lambda y: curl4(p.u, y)  # noqa: E731
    expect = -eps**2 * curl4(lambda y: lap4(c, y), x) + curl4(c, x)
    assert np.abs(p.source(x) - expect).max() <= 1e-5 * np.abs(expect).max()


def test_example1_center_value():
    assert np.abs(example1(1.0).u(np.array([0.5, 0.5, 0.5]))).max() <= 1e-15


def test_example2_source(pts):
    p = example2()
    assert np.abs(p.source(pts) - curl_fd(p.curl, pts)).max() <= 1e-7


def boundary_points(rng, n=20):
    x = rng.uniform(0, 1, (n, 3))
    axis = rng.integers(0, 3, n)
    side = rng.integers(0, 2, n).astype(float)
    x[np.arange(n), axis] = side
    normal = np.zeros((n, 3))
    normal[np.arange(n), axis] = 1.0
    return x, normal


def test_boundary_conditions(rng):
    x, n = boundary_points(rng)
    for p in (example1(1.0), example2()):
        assert np.abs(np.cross(p.u(x), n)).max() <= 1e-14
    assert np.abs(example1(1.0).curl(x)).max() <= 1e-12
    # the reduced field keeps a nonzero curl on the boundary, which creates the layers
    assert np.abs(example2().curl(x)).max() > 1e-4


def test_metadata_and_validation():
    assert example1(0.5).default_sigma == 50 and example2().default_sigma == 20
    assert example2().reference_kind == "reduced_u"
    assert get_example(2).epsilon == 1e-6
    assert SUBDOMAIN == (0.125, 0.875)
    with pytest.raises(ValueError):
        example1(0.0)
    with pytest.raises(ValueError):
        example1(2.0)
    with pytest.raises(ValueError):
        get_example(3)


def test_broadcasting():
    x = np.full((2, 5, 3), 0.3)
    p = example1(1.0)
    assert p.u(x).shape == (2, 5, 3)
    assert p.grad_curl(x).shape == (2, 5, 3, 3)
    assert example2().u(x).shape == (2, 5, 3)
