"""From braid parametrisation to semiholomorphic polynomial.

The pipeline: expand the braid product

    g_{a,b}(u, t) = prod_j ( u - a X_j(t) - i b Y_j(t) )

into a graded form keeping a, b symbolic; derive scaling exponents
(q1, q2) from the frequency residue classes of the parametrisation;
pick the homogenization order k; and substitute

    r^{2sk} g_{r^{q1} a, r^{q2} b}(u / r^{2k}, t),   v = r e^{it},

monomial by monomial into a polynomial in (u, v, conj v). Each monomial
u^i a^j b^n e^{imt} picks up the radical exponent

    e = 2k(s - i) + q1 j + q2 n - |m|,

which must be an even nonnegative integer for the substitution to close.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braidlib import BraidParam, positions_grid
from .errors import MixedResidues, NegativeExponent, OddExponent, UnequalComponents
from .trigpoly import TrigPoly

# Relative threshold for dropping cancellation residue after expansion.
EXPAND_DROP = 1e-14


def _unit_phase(num, den):
    """e^{2 pi i num/den}; exact complex units for quarter-turn angles."""
    num %= den
    quarter, rem = divmod(4 * num, den)
    if rem == 0:
        return ((1 + 0j), 1j, (-1 + 0j), -1j)[quarter % 4]
    return cmath.exp(2j * cmath.pi * num / den)


def _convolve(acc, factor):
    out = {}
    for ka, va in acc.items():
        for kb, vb in factor.items():
            key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3])
            s = out.get(key, 0j) + va * vb
            out[key] = s
    return {k: v for k, v in out.items() if v != 0}


@dataclass(frozen=True)
class GradedBraidPoly:
    """Braid polynomial with a, b symbolic.

    terms maps (i, j, n, m) -> coefficient for the monomial
    u^i a^j b^n e^{imt}; monic of degree s in u, with j + n = s - i on
    every term.
    """

    s: int
    terms: dict

    def __post_init__(self):
        for (i, j, n, m), c in self.terms.items():
            if not 0 <= i <= self.s or j < 0 or n < 0 or j + n != self.s - i:
                raise ValueError(f"inconsistent grading on term {(i, j, n, m)}")
        if self.terms.get((self.s, 0, 0, 0), 0) != 1:
            raise ValueError("braid polynomial must be monic in u")

    @property
    def deg_f(self):
        """Total degree max(i + |m|) controlling the choice of k."""
        return max(i + abs(m) for (i, _, _, m) in self.terms)

    def frequencies(self):
        return sorted({m for (_, _, _, m) in self.terms})

    def u_coeff_trigs(self, a, b):
        """Coefficient of each u power as a TrigPoly, at numeric a, b."""
        cols = [dict() for _ in range(self.s + 1)]
        for (i, j, n, m), c in sorted(self.terms.items()):
            col = cols[i]
            col[m] = col.get(m, 0j) + c * (a**j) * (b**n)
        return [TrigPoly(col) for col in cols]


def expand_g(b: BraidParam) -> GradedBraidPoly:
    """Expand the braid product into graded (i, j, n, m) terms.

    Strand frequencies are tracked over a common denominator; fractional
    frequencies must cancel in the full product (they do, identically,
    for any closed parametrisation) and only integer frequencies remain.
    Coefficients are exact where the strand phases are exact complex
    units (quarter-turn phase lattices).
    """
    s = b.total_strands
    denom = math.lcm(*[c.strands for c in b.components])
    acc = {(0, 0, 0, 0): 1.0 + 0j}
    for comp in b.components:
        n, speed = comp.strands, comp.speed
        step = denom // n
        for j in range(1, n + 1):
            factor = {(1, 0, 0, 0): 1.0 + 0j}
            for nu, coef in sorted(comp.x_poly.coeffs.items()):
                key = (0, 1, 0, nu * speed * step)
                factor[key] = factor.get(key, 0j) - coef * _unit_phase(nu * j, n)
            for nu, coef in sorted(comp.y_poly.coeffs.items()):
                key = (0, 0, 1, nu * speed * step)
                factor[key] = factor.get(key, 0j) - 1j * coef * _unit_phase(nu * j, n)
            acc = _convolve(acc, factor)

    top = max(abs(v) for v in acc.values())
    terms = {}
    residue = 0.0
    for (i, j, n, mi), coef in acc.items():
        if mi % denom == 0:
            if abs(coef) > EXPAND_DROP * top:
                terms[(i, j, n, mi // denom)] = coef
        else:
            residue = max(residue, abs(coef))
    if residue > 1e-9 * top:
        raise ArithmeticError(
            f"fractional frequencies failed to cancel (residue {residue:.3e}); "
            "the parametrisation does not close up"
        )
    return GradedBraidPoly(s=s, terms=terms)


# ----------------------------------------------------------------------
# scaling exponents


@dataclass(frozen=True)
class ScalingExponents:
    """Residue data (x, y mod 2^{m+1}) and the exponents q = x/2^m."""

    m: int
    x: int
    y: int
    q1: Fraction
    q2: Fraction


def _v2(n):
    return (n & -n).bit_length() - 1


def _residue_rep(freqs, mod, axis):
    """Common residue representative of a frequency set mod `mod`.

    A zero class with no constant term present is represented by `mod`
    itself (same parity behaviour, strictly positive exponent)."""
    if not freqs:
        return 0
    classes = sorted({f % mod for f in freqs})
    if len(classes) > 1:
        raise MixedResidues(
            f"{axis}-frequencies {sorted(freqs)} fall in residue classes "
            f"{classes[0]} and {classes[1]} mod {mod}"
        )
    cls = classes[0]
    if cls == 0 and 0 not in freqs:
        return mod
    return cls


def derive_scaling(b: BraidParam) -> ScalingExponents:
    """Scaling exponents (q1, q2) making the homogenization polynomial.

    All link components must share one strand count s_C; with 2^m the
    largest power of two dividing s_C, x- and y-frequencies must each
    occupy a single residue class mod 2^{m+1}. Squared parametrisations
    (every speed even) have an all-even braid polynomial and take
    q1 = q2 = 0 directly.
    """
    reduced = []
    for comp in b.components:
        d = math.gcd(comp.strands, comp.speed)
        reduced.append((comp.strands // d, comp.speed // d, comp))
    sizes = sorted({sc for sc, _, _ in reduced})
    if all(comp.speed % 2 == 0 for comp in b.components):
        # all-even route: frequencies are all even, no residue condition
        m = _v2(math.gcd(*sizes)) if len(sizes) > 1 else _v2(sizes[0])
        return ScalingExponents(m=m, x=0, y=0, q1=Fraction(0), q2=Fraction(0))
    if len(sizes) > 1:
        raise UnequalComponents(f"link components have unequal strand counts {sizes}")
    s_c = sizes[0]
    m = _v2(s_c)
    mod = 1 << (m + 1)
    x_freqs = []
    y_freqs = []
    for _, cp, comp in reduced:
        x_freqs.extend(cp * f for f in comp.x_poly.abs_frequencies())
        y_freqs.extend(cp * f for f in comp.y_poly.abs_frequencies())
    x = _residue_rep(x_freqs, mod, "x")
    y = _residue_rep(y_freqs, mod, "y")
    pw = 1 << m
    return ScalingExponents(m=m, x=x, y=y, q1=Fraction(x, pw), q2=Fraction(y, pw))


def choose_k(g: GradedBraidPoly) -> int:
    """Smallest admissible homogenization order: max(1, ceil(deg_f/2s))."""
    return max(1, -(-g.deg_f // (2 * g.s)))


# ----------------------------------------------------------------------
# homogenization


def homogenize_graded(g: GradedBraidPoly, k, q1, q2):
    """Substitute v = r e^{it} keeping a, b symbolic.

    Returns {(i, alpha, beta, j, n): coeff} for monomials
    u^i v^alpha conj(v)^beta a^j b^n. Raises OddExponent when a radical
    exponent e is odd or non-integer, NegativeExponent when e < 0
    (k too small).
    """
    k = int(k)
    if k < 1:
        raise ValueError("homogenization order k must be >= 1")
    q1, q2 = Fraction(q1), Fraction(q2)
    if q1 < 0 or q2 < 0:
        raise ValueError("scaling exponents must be nonnegative")
    out = {}
    for (i, j, n, m), coef in sorted(g.terms.items()):
        e = Fraction(2 * k * (g.s - i)) + q1 * j + q2 * n - abs(m)
        label = f"u^{i} a^{j} b^{n} e^({m}it)"
        if e.denominator != 1 or e.numerator % 2 != 0:
            raise OddExponent(f"term {label} has radical exponent {e}")
        if e < 0:
            raise NegativeExponent(
                f"term {label} has radical exponent {e}; increase k"
            )
        half = int(e) // 2
        alpha = (m if m > 0 else 0) + half
        beta = (-m if m < 0 else 0) + half
        out[(i, alpha, beta, j, n)] = out.get((i, alpha, beta, j, n), 0j) + coef
    return {key: v for key, v in out.items() if v != 0}


@dataclass(frozen=True)
class MixedPoly:
    """Semiholomorphic polynomial p(u, v) = sum c u^i v^alpha conj(v)^beta.

    Holomorphic in u; metadata records the construction inputs. The
    effective coefficients are (lam*a, lam*b).
    """

    s: int
    terms: dict
    a: float
    b: float
    k: int
    q1: Fraction
    q2: Fraction
    lam: float = 1.0

    @property
    def a_eff(self):
        return self.lam * self.a

    @property
    def b_eff(self):
        return self.lam * self.b

    @property
    def u_degree(self):
        return self.s

    def with_lambda(self, lam):
        return homogenize_from_graded(
            self._graded, self.s, self.a, self.b, self.k, self.q1, self.q2, lam
        )

    # graded source kept for retuning; not part of equality or repr
    _graded: dict = field(default=None, compare=False, repr=False)


def homogenize_from_graded(graded, s, a, b, k, q1, q2, lam=1.0):
    terms = {}
    ae, be = lam * a, lam * b
    for (i, alpha, beta, j, n), coef in graded.items():
        v = coef * (ae**j) * (be**n)
        key = (i, alpha, beta)
        terms[key] = terms.get(key, 0j) + v
    terms = {key: v for key, v in terms.items() if v != 0}
    if terms.get((s, 0, 0), 0) != 1:
        raise ValueError("homogenized polynomial lost monicity in u")
    return MixedPoly(
        s=s, terms=terms, a=a, b=b, k=k, q1=Fraction(q1), q2=Fraction(q2),
        lam=lam, _graded=graded,
    )


def homogenize(g: GradedBraidPoly, a, b, k, q1, q2, lam=1.0) -> MixedPoly:
    """Numeric homogenization with effective coefficients (lam*a, lam*b)."""
    if a <= 0 or b <= 0 or lam <= 0:
        raise ValueError("a, b and lambda must be positive")
    graded = homogenize_graded(g, k, q1, q2)
    return homogenize_from_graded(graded, g.s, float(a), float(b), int(k),
                                  Fraction(q1), Fraction(q2), float(lam))


# ----------------------------------------------------------------------
# evaluation


def eval_poly(p: MixedPoly, u, v):
    """p(u, v); u, v scalars or broadcastable arrays."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    vb = np.conj(v)
    out = np.zeros(np.broadcast(u, v).shape, dtype=complex)
    for (i, al, be), c in p.terms.items():
        out = out + c * u**i * v**al * vb**be
    return out if out.shape else complex(out)


def wirtinger(p: MixedPoly, u, v):
    """Wirtinger partials (dp/du, dp/dv, dp/dconj(v)) at (u, v)."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    vb = np.conj(v)
    shape = np.broadcast(u, v).shape
    pu = np.zeros(shape, dtype=complex)
    pv = np.zeros(shape, dtype=complex)
    pvb = np.zeros(shape, dtype=complex)
    for (i, al, be), c in p.terms.items():
        if i > 0:
            pu += c * i * u ** (i - 1) * v**al * vb**be
        if al > 0:
            pv += c * al * u**i * v ** (al - 1) * vb**be
        if be > 0:
            pvb += c * be * u**i * v**al * vb ** (be - 1)
    if shape:
        return pu, pv, pvb
    return complex(pu), complex(pv), complex(pvb)


def jacobian_real(p: MixedPoly, u, v):
    """Real 2x4 Jacobian of p as a map R^4 -> R^2 at (u, v), in the
    coordinate basis (Re u, Im u, Re v, Im v)."""
    pu, pv, pvb = wirtinger(p, u, v)
    cols = [pu, 1j * pu, pv + pvb, 1j * (pv - pvb)]
    return np.stack(
        [np.stack([np.real(c) for c in cols], axis=-1),
         np.stack([np.imag(c) for c in cols], axis=-1)],
        axis=-2,
    )


def polar_rt_derivs(p: MixedPoly, u, v):
    """(dp/dr, dp/dt) along v = r e^{it} at fixed u."""
    pu, pv, pvb = wirtinger(p, u, v)
    phase = v / np.abs(v)
    dr = pv * phase + pvb * np.conj(phase)
    dt = 1j * (pv * v - pvb * np.conj(v))
    return dr, dt


def u_poly_coeffs(p: MixedPoly, v):
    """Coefficients of u -> p(u, v) at numeric v; shape (len(v), s+1)."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    vb = np.conj(v)
    out = np.zeros(v.shape + (p.s + 1,), dtype=complex)
    for (i, al, be), c in p.terms.items():
        out[..., i] += c * v**al * vb**be
    return out


def u_deriv_coeffs(p: MixedPoly, v):
    """Coefficients of u -> dp/du(u, v); shape (len(v), s)."""
    c = u_poly_coeffs(p, v)
    return c[..., 1:] * np.arange(1, p.s + 1)


def eval_product(b: BraidParam, a, bb, u, t):
    """Direct product evaluation of g_{a,b}(u, t) from strand positions.

    Independent of expand_g (used to cross-check it). a and bb may be
    scalars or arrays aligned with t.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    u = np.asarray(u, dtype=complex)
    a = np.asarray(a, dtype=float)
    bb = np.asarray(bb, dtype=float)
    pos = positions_grid(b, t)
    factors = (
        u[..., None]
        - a[..., None] * pos.real
        - 1j * bb[..., None] * pos.imag
    )
    return np.prod(factors, axis=-1)


def eval_graded(g: GradedBraidPoly, a, bb, u, t):
    """Evaluate the graded expansion at numeric (a, b, u, t)."""
    u = np.asarray(u, dtype=complex)
    t = np.asarray(t, dtype=float)
    out = np.zeros(np.broadcast(u, t).shape, dtype=complex)
    for (i, j, n, m), c in g.terms.items():
        out = out + c * (a**j) * (bb**n) * u**i * np.exp(1j * m * t)
    return out if out.shape else complex(out)
