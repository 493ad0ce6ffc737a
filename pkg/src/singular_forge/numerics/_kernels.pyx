# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled root-finder kernel: batched Aberth-Ehrlich iteration.

Twin of _kernels_py (which documents the contract). Per-row Gauss-Seidel
sweeps with the same initial guesses, stopping criteria and Newton polish.
"""

import numpy as np

from libc.math cimport pow, fmax

cdef extern from "complex.h" nogil:
    double cabs(double complex)


cdef inline void _horner_pair(const double complex* c, Py_ssize_t d,
                              double complex z,
                              double complex* p, double complex* dp) nogil:
    cdef double complex pv = 0, dv = 0
    cdef Py_ssize_t i
    for i in range(d, -1, -1):
        dv = dv * z + pv
        pv = pv * z + c[i]
    p[0] = pv
    dp[0] = dv


def aberth_batch(coeffs, int max_iter=500, double tol=1e-14):
    """Roots of a batch of polynomials; coeffs shape (B, d+1), ascending.

    Returns (roots (B, d) complex, sweeps (B,) int64).
    """
    c_arr = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if c_arr.ndim != 2 or c_arr.shape[1] < 2:
        raise ValueError("aberth_batch needs degree >= 1")
    cdef double complex[:, ::1] c = c_arr
    cdef Py_ssize_t B = c.shape[0]
    cdef Py_ssize_t d = c.shape[1] - 1

    roots_arr = np.empty((B, d), dtype=np.complex128)
    sweeps_arr = np.full(B, max_iter, dtype=np.int64)
    init_arr = np.exp(1j * (2.0 * np.pi * np.arange(d) / d + 0.43))
    cdef double complex[:, ::1] z = roots_arr
    cdef long long[::1] sweeps = sweeps_arr
    cdef double complex[::1] init = init_arr

    cdef Py_ssize_t b, i, j, k, it
    cdef double complex p, dp, newton, ssum, denom, w, diff
    cdef double radius, cmax, one_norm, delta, ad, scale, worst
    cdef bint stop

    with nogil:
        for b in range(B):
            cmax = 0.0
            one_norm = 0.0
            for i in range(d + 1):
                ad = cabs(c[b, i])
                one_norm += ad
                if i < d and ad > cmax:
                    cmax = ad
            radius = 0.9 * (1.0 + cmax / cabs(c[b, d]))
            for j in range(d):
                z[b, j] = radius * init[j]

            for it in range(max_iter):
                delta = 0.0
                for j in range(d):
                    _horner_pair(&c[b, 0], d, z[b, j], &p, &dp)
                    if dp == 0:
                        dp = 1e-300
                    newton = p / dp
                    ssum = 0
                    for k in range(d):
                        if k == j:
                            continue
                        diff = z[b, j] - z[b, k]
                        if cabs(diff) < 1e-300:
                            diff = 1e-300
                        ssum = ssum + 1.0 / diff
                    denom = 1.0 - newton * ssum
                    if cabs(denom) < 1e-12:
                        denom = 1.0
                    w = newton / denom
                    z[b, j] = z[b, j] - w
                    delta = fmax(delta, cabs(w) / (1.0 + cabs(z[b, j])))
                stop = delta < tol
                if not stop and delta < 1e-6:
                    # Residual-based stall exit for clustered roots.
                    stop = True
                    for j in range(d):
                        _horner_pair(&c[b, 0], d, z[b, j], &p, &dp)
                        scale = one_norm * pow(fmax(1.0, cabs(z[b, j])), d)
                        if cabs(p) > 1e-12 * scale:
                            stop = False
                            break
                if stop:
                    sweeps[b] = it + 1
                    break

            for j in range(d):
                _horner_pair(&c[b, 0], d, z[b, j], &p, &dp)
                if dp != 0:
                    z[b, j] = z[b, j] - p / dp

    return roots_arr, sweeps_arr
