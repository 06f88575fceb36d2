"""Quadrature on the reference interval, triangle and tetrahedron.

Simplex rules are collapsed (Duffy-type) tensor products of Gauss-Jacobi
rules, which gives arbitrary exactness degree at a cost of roughly
``((D + 2) / 2) ** dim`` points.

Reference entities:

* interval ``[0, 1]``
* triangle with vertices ``(0,0), (1,0), (0,1)``
* tetrahedron with vertices ``(0,0,0), (1,0,0), (0,1,0), (0,0,1)``
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

REFERENCE_MEASURE = {"edge": 1.0, "face": 0.5, "cell": 1.0 / 6.0}


@dataclass(frozen=True, eq=False)
class QuadRule:
    points: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    entity_kind: str

    def __len__(self):
        return len(self.weights)

    def integrate(self, values):
        """Sum ``values`` (quadrature points on axis 0) against the weights."""
        return np.tensordot(self.weights, values, axes=(0, 0))


def _gauss_jacobi_01(n, alpha):
    """``n``-point rule on [0, 1] for the weight ``(1 - s) ** alpha``."""
    x, w = roots_jacobi(n, alpha, 0.0)
    return (x + 1.0) / 2.0, w / 2.0 ** (alpha + 1)


def _npts(degree):
    return max(1, (degree + 2) // 2)


@lru_cache(maxsize=None)
def interval_rule(D):
    if D < 0:
        raise ValueError("exactness degree must be non-negative")
    n = _npts(D)
    s, w = _gauss_jacobi_01(n, 0.0)
    rule = QuadRule(s[:, None], w, 2 * n - 1, "edge")
    _freeze(rule)
    return rule


@lru_cache(maxsize=None)
def tri_rule(D):
    if D < 0:
        raise ValueError("exactness degree must be non-negative")
    n = _npts(D)
    a, wa = _gauss_jacobi_01(n, 1.0)
    b, wb = _gauss_jacobi_01(n, 0.0)
    A, B = np.meshgrid(a, b, indexing="ij")
    x = A
    y = (1.0 - A) * B
    w = np.outer(wa, wb)
    rule = QuadRule(np.stack([x.ravel(), y.ravel()], axis=1), w.ravel(), 2 * n - 1, "face")
    _freeze(rule)
    return rule


@lru_cache(maxsize=None)
def tet_rule(D):
    if D < 0:
        raise ValueError("exactness degree must be non-negative")
    n = _npts(D)
    a, wa = _gauss_jacobi_01(n, 2.0)
    b, wb = _gauss_jacobi_01(n, 1.0)
    c, wc = _gauss_jacobi_01(n, 0.0)
    A, B, C = np.meshgrid(a, b, c, indexing="ij")
    x = A
    y = (1.0 - A) * B
    z = (1.0 - A) * (1.0 - B) * C
    w = wa[:, None, None] * wb[None, :, None] * wc[None, None, :]
    pts = np.stack([x.ravel(), y.ravel(), z.ravel()], axis=1)
    rule = QuadRule(pts, w.ravel(), 2 * n - 1, "cell")
    _freeze(rule)
    return rule


def _freeze(rule):
    rule.points.setflags(write=False)
    rule.weights.setflags(write=False)


def push_forward(rule, vertices):
    """Map a reference rule onto an affine simplex.

    Parameters
    ----------
    rule : QuadRule
    vertices : (d+1, 3) array
        Vertices of the physical edge, face or cell, matching ``rule``.

    Returns
    -------
    points : (nq, 3) array
    weights : (nq,) array, scaled by the measure ratio
    """
    vertices = np.asarray(vertices, dtype=float)
    dim = rule.points.shape[1]
    if vertices.shape[0] != dim + 1:
        raise ValueError(f"{rule.entity_kind} rule needs {dim + 1} vertices, got {vertices.shape[0]}")
    J = (vertices[1:] - vertices[0]).T  # (3, dim)
    gram = J.T @ J
    scale = np.sqrt(abs(np.linalg.det(gram)))
    if scale <= 1e-14 * max(1.0, np.abs(J).max() ** dim):
        raise ValueError("degenerate entity: zero measure")
    points = vertices[0] + rule.points @ J.T
    return points, rule.weights * scale

