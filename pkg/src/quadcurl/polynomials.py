"""Dense trivariate polynomials in the monomial basis.

A polynomial of total degree at most :data:`MAX_DEGREE` is stored as a
coefficient vector over :data:`EXPONENTS`; leading axes of a coefficient
array are free (vector or matrix valued fields).
"""
from __future__ import annotations

import numpy as np

MAX_DEGREE = 7

EXPONENTS = np.array(
    [(a, b, d - a - b) for d in range(MAX_DEGREE + 1) for a in range(d, -1, -1) for b in range(d - a, -1, -1)],
    dtype=np.int64,
)
N_MONOMIALS = len(EXPONENTS)
DEGREES = EXPONENTS.sum(axis=1)
_INDEX = {tuple(e): i for i, e in enumerate(EXPONENTS.tolist())}


def _derivative_tables():
    src, factor = [], []
    for axis in range(3):
        s = np.full(N_MONOMIALS, -1)
        f = np.zeros(N_MONOMIALS)
        for i, e in enumerate(EXPONENTS):
            if e[axis] > 0:
                d = e.copy()
                d[axis] -= 1
                s[_INDEX[tuple(d)]] = i
                f[_INDEX[tuple(d)]] = e[axis]
        src.append(s)
        factor.append(f)
    return np.array(src), np.array(factor)


# d/dx_axis maps coefficient of monomial src[axis][k] (times factor) to k
_DSRC, _DFAC = _derivative_tables()


def monomial(exponent):
    c = np.zeros(N_MONOMIALS)
    c[_INDEX[tuple(exponent)]] = 1.0
    return c


def affine(const, grad):
    """Coefficients of ``const + grad . xi``."""
    c = np.zeros(N_MONOMIALS)
    c[0] = const
    c[1:4] = [grad[0], grad[1], grad[2]]
    return c


def degree(coef, tol=0.0):
    nz = np.abs(coef).reshape(-1, N_MONOMIALS).max(axis=0) > tol
    return int(DEGREES[nz].max()) if nz.any() else -1


def multiply(a, b):
    """Product of two scalar polynomials; the result must fit MAX_DEGREE."""
    out = np.zeros(N_MONOMIALS)
    ia = np.flatnonzero(a)
    ib = np.flatnonzero(b)
    for i in ia:
        for j in ib:
            e = EXPONENTS[i] + EXPONENTS[j]
            k = _INDEX.get(tuple(e))
            if k is None:
                raise ValueError("product exceeds the maximal polynomial degree")
            out[k] += a[i] * b[j]
    return out


def derivative(coef, axis):
    """Partial derivative along ``axis`` of a (..., N_MONOMIALS) array."""
    src = _DSRC[axis]
    valid = src >= 0
    out = np.zeros_like(coef)
    out[..., valid] = coef[..., src[valid]] * _DFAC[axis][valid]
    return out


def gradient(coef, jacobian_inv=None):
    """Gradient along a new second-to-last axis: (..., 3, N_MONOMIALS).

    When the polynomial variables are ``r = jacobian_inv @ (x - x0)``, the
    gradient with respect to ``x`` is returned.
    """
    d = np.stack([derivative(coef, m) for m in range(3)], axis=-2)
    if jacobian_inv is None:
        return d
    return np.einsum("ml,...mk->...lk", jacobian_inv, d)


def curl(coef, jacobian_inv=None):
    """Curl of a vector field with coefficients of shape (..., 3, N_MONOMIALS)."""
    g = gradient(coef, jacobian_inv)  # g[..., i, j, :] = d_j u_i
    return np.stack([g[..., 2, 1, :] - g[..., 1, 2, :],
                     g[..., 0, 2, :] - g[..., 2, 0, :],
                     g[..., 1, 0, :] - g[..., 0, 1, :]], axis=-2)


def evaluation_matrix(xi):
    """(npts, N_MONOMIALS) array of monomial values at the points ``xi``."""
    xi = np.asarray(xi, dtype=float)
    pw = xi[:, None, :] ** np.arange(MAX_DEGREE + 1)[None, :, None]  # (n, p, 3)
    return pw[:, EXPONENTS[:, 0], 0] * pw[:, EXPONENTS[:, 1], 1] * pw[:, EXPONENTS[:, 2], 2]
