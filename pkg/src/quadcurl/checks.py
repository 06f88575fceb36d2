"""Quick self-checks run by ``quadcurl check``.

Each check returns a :class:`CheckResult`; none of them needs more than a few
seconds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .element import ElementCache, build_local_element
from .manufactured import example1, example2
from .mesh import build_structured_mesh, validate_mesh
from .quadrature import interval_rule, push_forward, tet_rule, tri_rule
from .space import build_dof_map, build_scalar_space


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def simplex_monomial_integral(exponents):
    """Integral of prod x_i^a_i over the unit simplex: prod a_i! / (d + sum a)!."""
    num = math.prod(math.factorial(a) for a in exponents)
    return num / math.factorial(len(exponents) + sum(exponents))


def quadrature_sweep(max_degree=16):
    """Worst relative monomial error over all rules up to ``max_degree``."""
    worst = 0.0
    for D in range(max_degree + 1):
        r = interval_rule(D)
        for a in range(D + 1):
            exact = 1.0 / (a + 1)
            worst = max(worst, abs(r.integrate(r.points[:, 0] ** a) - exact) / exact)
        for rule, dim in ((tri_rule(D), 2), (tet_rule(D), 3)):
            for exps in _exponents(dim, D):
                exact = simplex_monomial_integral(exps)
                vals = np.prod(rule.points ** np.array(exps), axis=1)
                worst = max(worst, abs(rule.integrate(vals) - exact) / exact)
    return worst


def _exponents(dim, degree):
    if dim == 1:
        return [(a,) for a in range(degree + 1)]
    return [(a,) + rest for a in range(degree + 1) for rest in _exponents(dim - 1, degree - a)]


def interface_defects(mesh, dof_map, coefs, cache=None, degree=8):
    """Largest jumps across interior faces for a global coefficient vector.

    Returns ``(tangential, curl_trace_mean)``: the pointwise jump of ``u x n``
    and the face-averaged jump of ``(curl u) x n`` against the face tangents.
    """
    cache = cache or ElementCache(mesh)
    tang = curl_mean = 0.0
    interior = np.flatnonzero(mesh.face_cells[:, 1] >= 0)
    for f in interior:
        x = mesh.vertices[mesh.faces[f]]
        pts, w = push_forward(tri_rule(degree), x)
        n, t = mesh.face_normals[f], mesh.face_tangents[f]
        vals = []
        for c in mesh.face_cells[f]:
            el = cache.element(c)
            v, cu, _ = el.evaluate(coefs[dof_map.cell_dofs[c]], pts - cache.shift(c))
            vals.append((v, cu))
        dv = vals[0][0] - vals[1][0]
        dc = vals[0][1] - vals[1][1]
        tang = max(tang, float(np.abs(np.cross(dv, n)).max()))
        mean = np.einsum("q,qd,id->i", w, np.cross(dc, n), t) / w.sum()
        curl_mean = max(curl_mean, float(np.abs(mean).max()))
    return tang, curl_mean


def _finite_difference_curl(field, x, h=1e-5):
    J = np.empty(x.shape + (3,))
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        J[..., j] = (field(x + e) - field(x - e)) / (2 * h)
    return np.stack([J[..., 2, 1] - J[..., 1, 2], J[..., 0, 2] - J[..., 2, 0], J[..., 1, 0] - J[..., 0, 1]], axis=-1)


def run_checks():
    results = []

    mesh = build_structured_mesh(2)
    diag = validate_mesh(mesh)
    results.append(CheckResult("mesh", diag.ok, ", ".join(diag.failures()) or "N=2 invariants hold"))

    worst = quadrature_sweep(16)
    results.append(CheckResult("quadrature", bool(worst <= 1e-12), f"max relative error {worst:.2e} up to degree 16"))

    err = max(build_local_element(mesh, c).kronecker_error for c in range(mesh.n_cells))
    results.append(CheckResult("element", err <= 1e-9, f"max Kronecker deviation {err:.2e}"))

    dm = build_dof_map(mesh, "weak")
    u = np.random.default_rng(7).standard_normal(dm.n_dofs)
    tang, curl_mean = interface_defects(mesh, dm, u)
    ok = tang <= 1e-9 and curl_mean <= 1e-9
    results.append(CheckResult("space", ok, f"tangential jump {tang:.1e}, mean curl-trace jump {curl_mean:.1e}"))

    scalar = build_scalar_space(mesh)
    ok = scalar.n_dofs == mesh.n_vertices + mesh.n_edges
    results.append(CheckResult("scalar space", ok, f"{scalar.n_free} free of {scalar.n_dofs}"))

    x = np.random.default_rng(3).uniform(0.1, 0.9, (20, 3))
    worst = 0.0
    for prob in (example1(1.0), example2()):
        fd = _finite_difference_curl(prob.u, x)
        worst = max(worst, float(np.abs(fd - prob.curl(x)).max()))
    results.append(CheckResult("manufactured", bool(worst <= 1e-6), f"curl vs finite differences {worst:.1e}"))
    return results
