"""Sparse trigonometric (Laurent) polynomials in one angle variable.

A TrigPoly is a finite sum  sum_j c_j e^{ijt}  with complex coefficients
stored sparsely by integer frequency. Real-valued data (the x- and
y-coordinates of braid parametrisations) satisfies c_{-j} = conj(c_j);
that property is detected at construction and preserved by arithmetic.
"""

from __future__ import annotations

import cmath
import numbers

import numpy as np

# Relative threshold below which product coefficients are dropped.
MUL_DROP = 1e-14

# Relative tolerance for the conjugate-symmetry (real-valuedness) test.
REAL_TOL = 1e-12


class TrigPoly:
    """Finite Laurent series sum_j coeffs[j] * e^{ijt}."""

    __slots__ = ("coeffs", "real_valued")

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for j, c in coeffs.items():
                c = complex(c)
                if c != 0:
                    data[int(j)] = c
        self.coeffs = data
        self.real_valued = self._check_real()

    def _check_real(self):
        if not self.coeffs:
            return True
        scale = max(abs(c) for c in self.coeffs.values())
        for j, c in self.coeffs.items():
            mirror = self.coeffs.get(-j, 0j)
            if abs(mirror - c.conjugate()) > REAL_TOL * max(1.0, scale):
                return False
        return True

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({0: complex(c)})

    @classmethod
    def cosine(cls, freq, amplitude=1.0):
        """amplitude * cos(freq * t), exact dyadic coefficients."""
        freq = int(freq)
        if freq == 0:
            return cls({0: complex(amplitude)})
        half = 0.5 * amplitude
        return cls({freq: complex(half), -freq: complex(half)})

    @classmethod
    def sine(cls, freq, amplitude=1.0):
        """amplitude * sin(freq * t), exact dyadic coefficients."""
        freq = int(freq)
        if freq == 0:
            return cls()
        half = 0.5 * amplitude
        return cls({freq: complex(0.0, -half), -freq: complex(0.0, half)})

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        if isinstance(other, numbers.Number):
            other = TrigPoly.constant(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            v = out.get(j, 0j) + c
            if v == 0:
                out.pop(j, None)
            else:
                out[j] = v
        return TrigPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly({j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, TrigPoly) else TrigPoly.constant(-other))

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            other = complex(other)
            return TrigPoly({j: c * other for j, c in self.coeffs.items()})
        if not isinstance(other, TrigPoly):
            return NotImplemented
        out = {}
        for j1, c1 in self.coeffs.items():
            for j2, c2 in other.coeffs.items():
                k = j1 + j2
                out[k] = out.get(k, 0j) + c1 * c2
        if out:
            top = max(abs(c) for c in out.values())
            out = {j: c for j, c in out.items() if abs(c) > MUL_DROP * top}
        return TrigPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TrigPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "TrigPoly(0)"
        parts = [f"{c!r}*e^{{{j}it}}" for j, c in sorted(self.coeffs.items())]
        return "TrigPoly(" + " + ".join(parts) + ")"

    # ------------------------------------------------------------------
    # analysis

    def eval(self, t):
        """Evaluate at t (scalar or ndarray). Returns complex values."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for j, c in self.coeffs.items():
            out += c * np.exp(1j * j * t)
        return out if out.shape else complex(out)

    def eval_real(self, t):
        """Evaluate a real-valued series, discarding the rounding-level
        imaginary part."""
        return np.real(self.eval(t))

    def d_dt(self):
        """Derivative in t: c_j -> i*j*c_j."""
        return TrigPoly({j: 1j * j * c for j, c in self.coeffs.items() if j != 0})

    def dilate(self, factor):
        """Frequency dilation j -> factor*j (factor a positive integer)."""
        factor = int(factor)
        if factor < 1:
            raise ValueError("dilation factor must be a positive integer")
        return TrigPoly({factor * j: c for j, c in self.coeffs.items()})

    def phase_shift(self, phi):
        """Substitute t -> t + phi: c_j -> c_j e^{ij phi}."""
        return TrigPoly({j: c * cmath.exp(1j * j * phi) for j, c in self.coeffs.items()})

    def frequencies(self):
        """Sorted frequencies carrying a nonzero coefficient."""
        return sorted(self.coeffs)

    def abs_frequencies(self):
        """Sorted set of nonnegative frequencies |j| present."""
        return sorted({abs(j) for j in self.coeffs})

    def one_norm(self):
        return sum(abs(c) for c in self.coeffs.values())

    def is_zero(self):
        return not self.coeffs

    def allclose(self, other, tol=1e-12):
        keys = set(self.coeffs) | set(other.coeffs)
        scale = max(
            [abs(c) for c in self.coeffs.values()]
            + [abs(c) for c in other.coeffs.values()]
            + [1.0]
        )
        return all(
            abs(self.coeffs.get(k, 0j) - other.coeffs.get(k, 0j)) <= tol * scale
            for k in keys
        )
