"""Mesh-refinement studies: relative errors, convergence rates and tables."""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .element import ElementCache
from .forms import LOAD_DEGREE, ProblemSpec, QuadratureDegreeError, assemble, boundary_face_groups, cell_rule, face_rule
from .manufactured import SUBDOMAIN, get_example
from .mesh import build_structured_mesh
from .solver import SolverError, solve_saddle
from .space import build_dof_map, build_scalar_space

log = logging.getLogger(__name__)

ERROR_KEYS = ("E_L2", "E_curl", "E_gc", "E_energy")


class SubdomainError(ValueError):
    pass


@dataclass
class ErrorReport:
    """Relative errors of one discrete solution.

    ``E_energy`` is ``E_eps_h`` for the weak flavor and ``E_A`` for the strong
    one; both share the numerator
    ``(eps^2 |grad_h curl e|^2 + |curl e|^2 + |e|^2)^(1/2)``.  ``E_energy_full``
    adds the boundary penalty term ``eps^2 sum_F h_F^-1 |curl e|_F^2`` to the
    numerator (the discrete energy norm of the analysis; weak flavor only).
    """

    h: float
    N: int
    epsilon: float
    E_L2: float
    E_curl: float
    E_gc: float
    E_energy: float
    E_energy_full: float | None = None
    subdomain: dict | None = None

    def values(self, keys=ERROR_KEYS, subdomain=False):
        src = self.subdomain if subdomain else self.__dict__
        return [src[k] for k in keys]


def cells_in_subdomain(mesh, box=SUBDOMAIN):
    """Cells whose barycenter lies in the open cube ``box**3``."""
    N = mesh.n_per_axis
    if N <= 0 or N % 8 != 0:
        raise SubdomainError(f"subdomain errors need N divisible by 8, got N = {N}")
    c = mesh.barycenters
    lo, hi = box
    return np.all((c > lo) & (c < hi), axis=1)


def locate_cells(mesh, points):
    """Cell containing each point of a structured unit-cube mesh."""
    N = mesh.n_per_axis
    if N <= 0:
        raise ValueError("point location needs a structured mesh")
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    ijk = np.clip(np.floor(pts * N).astype(np.int64), 0, N - 1)
    first = 6 * (ijk[:, 0] + N * ijk[:, 1] + N * N * ijk[:, 2])
    cand = first[:, None] + np.arange(6)
    X = mesh.vertices[mesh.cells[cand]]  # (n, 6, 4, 3)
    J = np.swapaxes(X[:, :, 1:] - X[:, :, :1], -1, -2)
    r = np.linalg.solve(J, (pts[:, None, :] - X[:, :, 0])[..., None])[..., 0]
    lam = np.concatenate([1.0 - r.sum(axis=-1, keepdims=True), r], axis=-1)
    return cand[np.arange(len(pts)), np.argmax(lam.min(axis=-1), axis=1)]


class DiscreteField:
    """Point evaluation of a global coefficient vector, usable as a reference."""

    def __init__(self, mesh, dof_map, coefficients, cache=None):
        self.mesh, self.dof_map = mesh, dof_map
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.cache = cache or ElementCache(mesh)

    def _eval(self, points, which):
        pts = np.asarray(points, dtype=float)
        flat = pts.reshape(-1, 3)
        cells = locate_cells(self.mesh, flat)
        out = np.empty((len(flat), 3, 3) if which == 2 else (len(flat), 3))
        for c in np.unique(cells):
            sel = cells == c
            el = self.cache.element(c)
            res = el.evaluate(self.coefficients[self.dof_map.cell_dofs[c]], flat[sel] - self.cache.shift(c))
            out[sel] = res[which]
        return out.reshape(pts.shape[:-1] + out.shape[1:])

    def u(self, points):
        return self._eval(points, 0)

    def curl(self, points):
        return self._eval(points, 1)

    def grad_curl(self, points):
        return self._eval(points, 2)


def interpolate_field(mesh, dof_map, field, curl, cache=None):
    """Canonical interpolant of a smooth field into the global space (all DOFs)."""
    cache = cache or ElementCache(mesh)
    out = np.zeros(dof_map.n_dofs)
    for c in range(mesh.n_cells):
        el, s = cache.element(c), cache.shift(c)
        out[dof_map.cell_dofs[c]] = el.interpolate(lambda x: field(x + s), lambda x: curl(x + s))
    return out


def _cellwise_sq_errors(mesh, cache, u_coef, reference, cell_dofs, degree):
    """Per-cell squared error and reference norms (L2, curl, grad-curl)."""
    T = mesh.n_cells
    err = np.zeros((3, T))
    ref = np.zeros((3, T))
    for k, el in enumerate(cache.elements):
        cells = cache.cells_of_class(k)
        pts, w = cell_rule(el, degree)
        b = el.eval_basis(pts)
        for chunk in np.array_split(cells, max(1, len(cells) // 512)):
            c = u_coef[cell_dofs[chunk]]  # (nc, 28)
            shifts = mesh.vertices[mesh.cells[chunk, 0]] - el.vertices[0]
            x = pts[None] + shifts[:, None]
            uh = np.einsum("cj,qjd->cqd", c, b.values)
            ch = np.einsum("cj,qjd->cqd", c, b.curls)
            gh = np.einsum("cj,qjde->cqde", c, b.grad_curls)
            u, cu, gu = reference.u(x), reference.curl(x), reference.grad_curl(x)
            err[0, chunk] = np.einsum("q,cqd->c", w, (u - uh) ** 2)
            err[1, chunk] = np.einsum("q,cqd->c", w, (cu - ch) ** 2)
            err[2, chunk] = np.einsum("q,cqde->c", w, (gu - gh) ** 2)
            ref[0, chunk] = np.einsum("q,cqd->c", w, u**2)
            ref[1, chunk] = np.einsum("q,cqd->c", w, cu**2)
            ref[2, chunk] = np.einsum("q,cqde->c", w, gu**2)
    return err, ref


def _boundary_curl_terms(mesh, cache, u_coef, reference, cell_dofs, degree):
    """sum_F h_F^-1 ||curl(u - u_h)||_F^2 and sum_F h_F^-1 ||curl u||_F^2."""
    err = ref = 0.0
    for (k, lf), faces in boundary_face_groups(mesh, cache).items():
        el = cache.elements[k]
        pts, w, _, hF = face_rule(el, lf, degree)
        curls = el.eval_basis(pts).curls
        cells = mesh.face_cells[faces, 0]
        shifts = mesh.vertices[mesh.cells[cells, 0]] - el.vertices[0]
        cu = reference.curl(pts[None] + shifts[:, None])
        ch = np.einsum("cj,qjd->cqd", u_coef[cell_dofs[cells]], curls)
        err += np.einsum("q,cqd->", w, (cu - ch) ** 2) / hF
        ref += np.einsum("q,cqd->", w, cu**2) / hF
    return float(err), float(ref)


def compute_errors(mesh, u_coef, reference, spec, dof_map, subdomain=False, cache=None):
    """Relative errors of the discrete field ``u_coef`` against ``reference``.

    ``reference`` needs ``u``, ``curl`` and ``grad_curl`` evaluators.  With
    ``subdomain`` the same quantities restricted to the interior cube are
    attached under ``report.subdomain``.
    """
    if spec.quad_error < 14:
        raise QuadratureDegreeError(f"error quadrature degree {spec.quad_error} < 14")
    inside = cells_in_subdomain(mesh) if subdomain else None
    cache = cache or ElementCache(mesh)
    eps2 = spec.epsilon**2
    err, ref = _cellwise_sq_errors(mesh, cache, u_coef, reference, dof_map.cell_dofs, spec.quad_error)
    b_err, b_ref = _boundary_curl_terms(mesh, cache, u_coef, reference, dof_map.cell_dofs, spec.quad_error)

    def rel(mask, with_boundary):
        e = err[:, mask].sum(axis=1) if mask is not None else err.sum(axis=1)
        r = ref[:, mask].sum(axis=1) if mask is not None else ref.sum(axis=1)
        energy_num = eps2 * e[2] + e[1] + e[0]
        energy_den = eps2 * r[2] + r[1] + r[0]
        if with_boundary and spec.bc_flavor == "weak":
            energy_den += eps2 * b_ref
        out = {
            "E_L2": math.sqrt(e[0] / r[0]),
            "E_curl": math.sqrt(e[1] / r[1]),
            "E_gc": math.sqrt(e[2] / r[2]),
            "E_energy": math.sqrt(energy_num / energy_den),
        }
        return out, energy_num, energy_den

    whole, num, den = rel(None, True)
    full = math.sqrt((num + eps2 * b_err) / den) if spec.bc_flavor == "weak" else None
    report = ErrorReport(h=mesh.h_max, N=mesh.n_per_axis, epsilon=spec.epsilon, E_energy_full=full, **whole)
    if subdomain:
        report.subdomain = rel(inside, False)[0]
    return report


def compute_rates(errors, hs):
    """Rates ``ln(E[i-1] / E[i]) / ln(h[i-1] / h[i])`` between consecutive rows."""
    errors = np.asarray(errors, dtype=float)
    hs = np.asarray(hs, dtype=float)
    if len(errors) != len(hs) or len(errors) < 2:
        raise ValueError("need at least two (error, h) pairs")
    if np.any(errors <= 0) or not np.all(np.isfinite(errors)):
        raise ValueError("errors must be positive and finite")
    if np.any(np.diff(hs) >= 0):
        raise ValueError("mesh sizes must be strictly decreasing")
    return np.log(errors[:-1] / errors[1:]) / np.log(hs[:-1] / hs[1:])


@dataclass
class StudyConfig:
    example: int = 1
    epsilons: tuple = (1.0,)
    Ns: tuple = (8, 10, 12)
    bc_flavor: str = "weak"
    sigma: float | None = None
    subdomain: bool = False
    quad_assembly: int = 12
    quad_error: int = 14
    quad_load: int = LOAD_DEGREE

    def __post_init__(self):
        if self.sigma is None:
            self.sigma = 50.0 if int(self.example) == 1 else 20.0
        if self.subdomain:
            bad = [n for n in self.Ns if n % 8 != 0]
            if bad:
                raise SubdomainError(f"subdomain errors need N divisible by 8, got {bad}")

    def spec(self, epsilon):
        return ProblemSpec(epsilon=epsilon, sigma=self.sigma, bc_flavor=self.bc_flavor,
                           quad_assembly=self.quad_assembly, quad_error=self.quad_error,
                           quad_load=self.quad_load)


@dataclass
class StudyRow:
    epsilon: float
    N: int
    report: ErrorReport | None
    rates: dict = field(default_factory=dict)
    subdomain_rates: dict = field(default_factory=dict)
    residual: float | None = None
    failure: str | None = None
    seconds: float = 0.0


@dataclass
class StudyTable:
    config: StudyConfig
    rows: list

    def block(self, epsilon):
        return [r for r in self.rows if r.epsilon == epsilon]

    def rates(self, key, epsilon, subdomain=False):
        rows = self.block(epsilon)
        src = "subdomain_rates" if subdomain else "rates"
        return [getattr(r, src).get(key) for r in rows[1:]]


def solve_row(config, epsilon, N, mesh=None):
    """Build, assemble, solve and measure one (epsilon, N) configuration."""
    spec = config.spec(epsilon)
    problem = get_example(config.example, epsilon)
    mesh = mesh or build_structured_mesh(N)
    dof_map = build_dof_map(mesh, config.bc_flavor)
    scalar = build_scalar_space(mesh)
    cache = ElementCache(mesh)
    system = assemble(mesh, dof_map, scalar, spec, problem.source, cache=cache)
    sol = solve_saddle(system)
    report = compute_errors(mesh, sol.u, problem, spec, dof_map, subdomain=config.subdomain, cache=cache)
    return report, sol


def run_convergence(config, progress=None):
    """Run every (epsilon, N) pair of ``config`` and attach rates."""
    rows = []
    for eps in config.epsilons:
        block = []
        for N in sorted(config.Ns):
            t0 = time.perf_counter()
            try:
                report, sol = solve_row(config, eps, N)
                row = StudyRow(eps, N, report, residual=sol.residual)
            except (SolverError, QuadratureDegreeError, MemoryError) as exc:
                log.error("row eps=%g N=%d failed: %s", eps, N, exc)
                row = StudyRow(eps, N, None, failure=f"{type(exc).__name__}: {exc}")
            row.seconds = time.perf_counter() - t0
            if progress:
                progress(row)
            block.append(row)
        _attach_rates(block, config.subdomain)
        rows.extend(block)
    return StudyTable(config, rows)


def _attach_rates(block, subdomain):
    for prev, cur in zip(block, block[1:]):
        if prev.report is None or cur.report is None:
            continue
        hs = [prev.report.h, cur.report.h]
        for key in ERROR_KEYS:
            cur.rates[key] = float(compute_rates([getattr(prev.report, key), getattr(cur.report, key)], hs)[0])
            if subdomain:
                cur.subdomain_rates[key] = float(
                    compute_rates([prev.report.subdomain[key], cur.report.subdomain[key]], hs)[0])


def with_flavor(config, flavor):
    return replace(config, bc_flavor=flavor)
