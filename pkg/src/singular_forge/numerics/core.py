"""Scalar and batched numerical primitives.

Root finding is Aberth-Ehrlich simultaneous iteration (see the kernel
modules); everything here is deterministic, with no random state, so a
given input always produces the same output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import NoConvergence, NoSignChange
from ._backend import BACKEND, kernels

# Residual acceptance factor for all_roots: |p(root)| must come in below
# RESIDUAL_FACTOR * sum|c_i| * max(1, |root|)^d.
RESIDUAL_FACTOR = 1e-9

LEADING_TOL = 1e-30


def backend_name():
    """Name of the active root-kernel backend ('cython' or 'python')."""
    return BACKEND


def _thread_count():
    try:
        n = int(os.environ.get("SF_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


@dataclass(frozen=True)
class ComplexPoly:
    """Dense univariate polynomial, coefficients ascending (c_0 .. c_d)."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        object.__setattr__(self, "coeffs", arr)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must be a nonempty 1-d array")
        top = np.abs(arr).max()
        if top == 0.0 or abs(arr[-1]) <= LEADING_TOL * top:
            raise ValueError("leading coefficient is numerically zero")

    @property
    def degree(self):
        return self.coeffs.size - 1

    def eval(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out

    def derivative(self):
        d = self.degree
        if d == 0:
            raise ValueError("derivative of a constant is not a valid poly")
        return ComplexPoly(self.coeffs[1:] * np.arange(1, d + 1))


def _horner_rows(c, z):
    out = np.zeros_like(z)
    for idx in range(c.shape[1] - 1, -1, -1):
        out = out * z + c[:, idx, None]
    return out


def roots_batch(coeffs, max_iter=500):
    """Roots for a batch of same-degree polynomials, rows sorted
    lexicographically by (Re, Im).

    coeffs has shape (B, d+1), ascending. Raises NoConvergence when any
    row misses the residual criterion after the sweep cap; ValueError on
    a numerically zero leading coefficient.
    """
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if c.ndim != 2 or c.shape[1] < 2:
        raise ValueError("roots_batch needs shape (B, d+1) with d >= 1")
    amax = np.abs(c).max(axis=1)
    bad = (amax == 0.0) | (np.abs(c[:, -1]) <= LEADING_TOL * amax)
    if bad.any():
        raise ValueError(
            f"{int(bad.sum())} rows have a numerically zero leading coefficient"
        )

    threads = _thread_count()
    B = c.shape[0]
    if threads > 1 and B >= 2 * threads:
        # Rows are independent; chunked execution is deterministic for
        # any thread count because results are placed by index.
        chunks = np.array_split(np.arange(B), threads)
        roots = np.empty((B, c.shape[1] - 1), dtype=np.complex128)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = [
                (idx, pool.submit(kernels.aberth_batch, c[idx], max_iter))
                for idx in chunks
                if idx.size
            ]
            for idx, fut in futs:
                roots[idx] = fut.result()[0]
    else:
        roots, _ = kernels.aberth_batch(c, max_iter)

    roots = np.sort(roots, axis=1)  # numpy sorts complex lexicographically
    d = c.shape[1] - 1
    resid = np.abs(_horner_rows(c, roots))
    bound = (
        RESIDUAL_FACTOR
        * np.abs(c).sum(axis=1)[:, None]
        * np.maximum(1.0, np.abs(roots)) ** d
    )
    misses = resid >= bound
    if misses.any():
        worst = float((resid / bound).max())
        raise NoConvergence(
            f"{int(misses.sum())} roots missed the residual criterion "
            f"(worst ratio {worst:.3e})"
        )
    return roots


def all_roots(poly, max_iter=500):
    """All roots (with multiplicity) of one polynomial, sorted by
    (Re, Im). Accepts a ComplexPoly or an ascending coefficient array."""
    if not isinstance(poly, ComplexPoly):
        poly = ComplexPoly(np.asarray(poly))
    if poly.degree < 1:
        raise ValueError("all_roots needs degree >= 1")
    return roots_batch(poly.coeffs[None, :], max_iter)[0]


def bisect(f, lo, hi, tol=1e-12, max_iter=200):
    """Root of a scalar function on [lo, hi] by bisection.

    Requires a sign change (or a zero endpoint); converges to interval
    width tol. Raises NoSignChange otherwise.
    """
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ValueError("bisect needs lo < hi")
    fa, fb = f(lo), f(hi)
    if fa == 0.0:
        return lo
    if fb == 0.0:
        return hi
    if np.sign(fa) == np.sign(fb):
        raise NoSignChange(f"no sign change on [{lo:.6g}, {hi:.6g}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(fa):
            lo, fa = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fd_jacobian(f, x, h=1e-6):
    """Central-difference Jacobian of f: R^n -> R^m at x; shape (m, n)."""
    if not 1e-8 <= h <= 1e-4:
        raise ValueError("step h must lie in [1e-8, 1e-4]")
    x = np.asarray(x, dtype=float)
    cols = []
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        cols.append((np.asarray(f(x + e), float) - np.asarray(f(x - e), float)) / (2 * h))
    return np.stack(cols, axis=-1)
