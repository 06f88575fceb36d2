"""Manufactured test problems on the unit cube.

Both fields are divergence free and satisfy ``u x n = 0`` on the boundary.
Example 1 also has ``curl u = 0`` on the boundary, so it solves the full
problem with ``f = -eps^2 curl Lap curl u + curl curl u``.  Example 2 is the
solution of the reduced (``eps = 0``) problem with ``f = curl curl u``; its
curl does not vanish on the boundary, which creates boundary layers in the
solution for small ``eps``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _manufactured_exprs as ex

#: interior subdomain on which boundary-layer pollution is measured
SUBDOMAIN = (0.125, 0.875)


def _vector(fn):
    def wrapped(points):
        p = np.asarray(points, dtype=float)
        comps = fn(p[..., 0], p[..., 1], p[..., 2])
        return np.stack(np.broadcast_arrays(*comps), axis=-1)

    return wrapped


def _matrix(fn):
    vec = _vector(fn)

    def wrapped(points):
        v = vec(points)
        return v.reshape(v.shape[:-1] + (3, 3))

    return wrapped


@dataclass(frozen=True)
class ManufacturedSolution:
    """Reference field with derivatives and load.

    ``grad_curl(x)[..., i, j]`` is ``d_j (curl u)_i``.  ``reference_kind`` is
    ``"exact_u"`` when the field solves the discrete problem's continuous
    counterpart, ``"reduced_u"`` when it solves the ``eps = 0`` problem.
    """

    name: str
    epsilon: float
    u: Callable
    curl: Callable
    grad_curl: Callable
    source: Callable
    reference_kind: str
    default_sigma: float
    divergence_free: bool = True


def example1(epsilon):
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    eps2 = float(epsilon) ** 2
    cc = _vector(ex.ex1_curlcurl)
    c4 = _vector(ex.ex1_curl_lap_curl)

    def source(points):
        return eps2 * c4(points) + cc(points)

    return ManufacturedSolution(
        name="example1",
        epsilon=float(epsilon),
        u=_vector(ex.ex1_u),
        curl=_vector(ex.ex1_curl),
        grad_curl=_matrix(ex.ex1_grad_curl),
        source=source,
        reference_kind="exact_u",
        default_sigma=50.0,
    )


def example2(epsilon=1e-6):
    """Reduced-problem field with polynomial ``u``; errors are measured against it."""
    return ManufacturedSolution(
        name="example2",
        epsilon=float(epsilon),
        u=_vector(ex.ex2_u),
        curl=_vector(ex.ex2_curl),
        grad_curl=_matrix(ex.ex2_grad_curl),
        source=_vector(ex.ex2_curlcurl),
        reference_kind="reduced_u",
        default_sigma=20.0,
    )


def get_example(example_id, epsilon=None):
    if int(example_id) == 1:
        return example1(1.0 if epsilon is None else epsilon)
    if int(example_id) == 2:
        return example2(1e-6 if epsilon is None else epsilon)
    raise ValueError(f"unknown example {example_id!r}")
