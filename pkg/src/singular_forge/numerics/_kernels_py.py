"""Pure numpy root-finder kernel.

Fallback twin of the compiled extension: batched Aberth-Ehrlich iteration
with deterministic perturbed-circle initial guesses. The compiled kernel
sweeps Gauss-Seidel style; this one updates all roots simultaneously
(Jacobi style) so the batch stays vectorized. Both stop on the same
criteria and finish with one Newton polish per root.
"""

import numpy as np

_TINY = 1e-300


def _horner_pair(c, z):
    """Polynomial and derivative values, coefficients ascending in c."""
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for idx in range(c.shape[1] - 1, -1, -1):
        dp = dp * z + p
        p = p * z + c[:, idx, None]
    return p, dp


def aberth_batch(coeffs, max_iter=500, tol=1e-14):
    """Roots of a batch of polynomials; coeffs shape (B, d+1), ascending.

    Returns (roots (B, d) complex, sweeps (B,) int64).
    """
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    B, d1 = c.shape
    d = d1 - 1
    if d < 1:
        raise ValueError("aberth_batch needs degree >= 1")

    lead = np.abs(c[:, -1])
    radius = 0.9 * (1.0 + np.max(np.abs(c[:, :-1]), axis=1) / lead)
    angles = 2.0 * np.pi * np.arange(d) / d + 0.43
    z = radius[:, None] * np.exp(1j * angles)[None, :]

    one_norm = np.abs(c).sum(axis=1)
    sweeps = np.full(B, max_iter, dtype=np.int64)
    active = np.ones(B, dtype=bool)
    eye = np.eye(d, dtype=bool)

    for it in range(max_iter):
        if not active.any():
            break
        za = z[active]
        ca = c[active]
        p, dp = _horner_pair(ca, za)
        dp_safe = np.where(dp == 0, _TINY, dp)
        newton = p / dp_safe

        diff = za[:, :, None] - za[:, None, :]
        diff = np.where(np.abs(diff) < _TINY, _TINY, diff)
        inv = 1.0 / diff
        inv[:, eye] = 0.0
        aberth_sum = inv.sum(axis=2)

        denom = 1.0 - newton * aberth_sum
        denom = np.where(np.abs(denom) < 1e-12, 1.0, denom)
        w = newton / denom
        za = za - w
        z[active] = za

        delta = (np.abs(w) / (1.0 + np.abs(za))).max(axis=1)
        done = delta < tol
        if not done.all():
            # Clustered roots stall the correction; accept them once the
            # residual is far below the convergence criterion.
            stalled = (delta < 1e-6) & ~done
            if stalled.any():
                pa, _ = _horner_pair(ca[stalled], za[stalled])
                scale = one_norm[active][stalled, None] * np.maximum(
                    1.0, np.abs(za[stalled])
                ) ** d
                done[stalled] |= (np.abs(pa) <= 1e-12 * scale).all(axis=1)
        if done.any():
            idx = np.flatnonzero(active)[done]
            sweeps[idx] = it + 1
            active[idx] = False

    p, dp = _horner_pair(c, z)
    dp_safe = np.where(dp == 0, _TINY, dp)
    z = np.where(dp == 0, z, z - p / dp_safe)
    return z, sweeps
