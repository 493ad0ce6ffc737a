"""Braid parametrisations and braid-word extraction.

A braid on s strands is stored as groups of strand curves

    t -> ( F((c t + 2 pi j)/n),  G((c t + 2 pi j)/n),  t ),   j = 1..n,

with F, G real-valued trigonometric polynomials and an integer speed c.
Speed 1 is the plain Fourier form; lemniscate braids carry their winding
number as the speed, and squaring a braid doubles it. A group with
gcd(n, c) > 1 closes up into several link components, all of equal size;
the closure permutation below recovers that structure numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousMatch, DegenerateCrossing
from .trigpoly import TrigPoly

TWO_PI = 2.0 * math.pi

# Grid used for the pairwise-disjointness sanity check at construction.
DISJOINT_GRID = 4096

# Endpoint matching tolerance for the closure permutation.
CLOSURE_TOL = 1e-8

# Width below which a crossing is considered localized.
CROSSING_DT = 1e-6

# Relative x-coincidence threshold for degenerate crossings.
DEGENERATE_TOL = 1e-10


@dataclass(frozen=True)
class BraidComponent:
    """One group of strand curves sharing a coordinate pair (F, G)."""

    strands: int
    x_poly: TrigPoly
    y_poly: TrigPoly
    speed: int = 1

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("component needs at least one strand")
        if self.speed < 1:
            raise ValueError("component speed must be a positive integer")
        if not self.x_poly.real_valued or not self.y_poly.real_valued:
            raise ValueError("strand coordinate polynomials must be real-valued")


@dataclass(frozen=True)
class BraidParam:
    """A parametrised braid: an ordered tuple of component groups."""

    components: tuple[BraidComponent, ...]
    check_disjoint: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("braid needs at least one component")
        if self.check_disjoint and self.total_strands > 1:
            _assert_disjoint(self)

    @property
    def total_strands(self):
        return sum(c.strands for c in self.components)


def _assert_disjoint(b):
    ts = np.linspace(0.0, TWO_PI, DISJOINT_GRID, endpoint=False)
    pos = positions_grid(b, ts)
    s = pos.shape[1]
    for i in range(s):
        for j in range(i + 1, s):
            gap = np.abs(pos[:, i] - pos[:, j])
            if gap.min() <= 0.0:
                k = int(gap.argmin())
                raise ValueError(
                    f"strands {i} and {j} collide at t={ts[k]:.6f} "
                    "(parametrisation is not a braid)"
                )


def lemniscate(s, ell, r):
    """Braid of the (s, ell, r) lemniscate family.

    Strand j follows (cos((r t + 2 pi j)/s), sin(ell (r t + 2 pi j)/s)).
    The closure has gcd(s, r) components, the orbits of j -> j + r mod s.
    """
    s, ell, r = int(s), int(ell), int(r)
    if s < 1 or ell < 1 or r < 1:
        raise ValueError("lemniscate parameters must be positive integers")
    comp = BraidComponent(
        strands=s,
        x_poly=TrigPoly.cosine(1),
        y_poly=TrigPoly.sine(ell),
        speed=r,
    )
    return BraidParam((comp,))


def from_fourier(components):
    """Braid from plain Fourier data: [(strands, x_poly, y_poly), ...]."""
    groups = tuple(
        BraidComponent(strands=n, x_poly=f, y_poly=g, speed=1)
        for (n, f, g) in components
    )
    return BraidParam(groups)


def square_parametrisation(b):
    """The braid word squared: every strand curve run at double speed.

    Doubling the speed sends g(u, t) to g(u, 2t), so every frequency of
    the braid polynomial becomes even.
    """
    comps = tuple(
        BraidComponent(c.strands, c.x_poly, c.y_poly, 2 * c.speed)
        for c in b.components
    )
    return BraidParam(comps, check_disjoint=False)


# ----------------------------------------------------------------------
# strand positions


def positions_grid(b, ts):
    """Strand positions X + iY at each t in ts; shape (len(ts), s).

    Strand order is stable: component groups in order, j = 1..n within.
    """
    ts = np.asarray(ts, dtype=float)
    cols = []
    for comp in b.components:
        n, c = comp.strands, comp.speed
        for j in range(1, n + 1):
            tau = (c * ts + TWO_PI * j) / n
            x = comp.x_poly.eval(tau).real
            y = comp.y_poly.eval(tau).real
            cols.append(x + 1j * y)
    return np.stack(cols, axis=-1)


def positions(b, t):
    """Strand positions at a single parameter value, as a list."""
    return list(positions_grid(b, np.array([float(t)]))[0])


def closure_permutation(b):
    """Permutation pi with strand i's endpoint at 2pi equal to strand
    pi(i)'s start point at 0, found by numerical matching.

    Raises AmbiguousMatch when endpoint matching is not one-to-one
    within tolerance.
    """
    start = positions_grid(b, np.array([0.0]))[0]
    end = positions_grid(b, np.array([TWO_PI]))[0]
    s = len(start)
    scale = max(1.0, float(np.abs(start).max()))
    tol = CLOSURE_TOL * scale
    perm = []
    for i in range(s):
        hits = [j for j in range(s) if abs(end[i] - start[j]) < tol]
        if len(hits) != 1:
            raise AmbiguousMatch(
                f"strand {i} endpoint matches {len(hits)} start points "
                f"within {tol:.3e}"
            )
        perm.append(hits[0])
    if sorted(perm) != list(range(s)):
        raise AmbiguousMatch("endpoint matching is not a bijection")
    return tuple(perm)


def permutation_cycles(perm):
    """Cycles of a permutation given as a tuple of images."""
    seen = [False] * len(perm)
    cycles = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        cycles.append(tuple(cyc))
    return cycles


# ----------------------------------------------------------------------
# braid words


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators, letters stored as signed indices.

    Letter +i is sigma_i, letter -i its inverse, 1 <= i < strands.
    """

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")

    def __str__(self):
        if not self.letters:
            return "(empty)"
        return " ".join(f"s{abs(x)}" + ("" if x > 0 else "^-1") for x in self.letters)


def is_strictly_homogeneous(word):
    """True when every generator index 1..s-1 occurs and each occurs with
    a single sign throughout."""
    signs = {}
    for x in word.letters:
        i = abs(x)
        sg = 1 if x > 0 else -1
        if signs.setdefault(i, sg) != sg:
            return False
    return all(i in signs for i in range(1, word.strands))


def word_symmetry(word):
    """Classify the half-word structure: 'square' when the second half
    repeats the first verbatim, 'mirrored' when it repeats with indices
    i -> s - i, 'sign_flipped' when it repeats with inverted signs,
    'none' otherwise (always 'none' for odd length)."""
    w = word.letters
    if len(w) % 2 != 0 or len(w) == 0:
        return "none"
    half = len(w) // 2
    w1, w2 = w[:half], w[half:]
    if w2 == w1:
        return "square"
    s = word.strands
    mirrored = tuple((s - abs(x)) * (1 if x > 0 else -1) for x in w1)
    if w2 == mirrored:
        return "mirrored"
    flipped = tuple(-x for x in w1)
    if w2 == flipped:
        return "sign_flipped"
    return "none"


def _sorted_order(row):
    """Strand ids sorted by x, ties broken by y then id (deterministic)."""
    idx = np.arange(len(row))
    return tuple(np.lexsort((idx, row.imag, row.real)))


def _x_span(row):
    xs = row.real
    return max(1.0, float(xs.max() - xs.min()))


class _WordScanner:
    """Sweeps a strand-curve family over one period and collects the
    adjacent transpositions of the x-order as braid letters."""

    def __init__(self, curve_fn, n_strands):
        self.curve = curve_fn
        self.s = n_strands

    def row(self, t):
        return self.curve(np.array([t]))[0]

    def scan(self, t_samples, t0):
        ts = t0 + np.linspace(0.0, TWO_PI, t_samples + 1)
        rows = self.curve(ts)
        letters = []
        for k in range(t_samples):
            oa, ob = _sorted_order(rows[k]), _sorted_order(rows[k + 1])
            if oa != ob:
                letters.extend(
                    self._resolve(ts[k], ts[k + 1], rows[k], oa, ob)
                )
        return letters

    def _resolve(self, ta, tb, row_a, oa, ob):
        if oa == ob:
            return []
        if tb - ta < CROSSING_DT:
            return self._emit(ta, tb, oa, ob)
        tm = 0.5 * (ta + tb)
        row_m = self.row(tm)
        om = _sorted_order(row_m)
        return self._resolve(ta, tm, row_a, oa, om) + self._resolve(
            tm, tb, row_m, om, ob
        )

    def _emit(self, ta, tb, oa, ob):
        # Bubble from the old order to the new one; each adjacent swap is
        # one letter. Simultaneous disjoint swaps come out sorted by
        # position, which is canonical since they commute.
        tm = 0.5 * (ta + tb)
        row = self.row(tm)
        span = _x_span(row)
        target = {sid: p for p, sid in enumerate(ob)}
        cur = list(oa)
        letters = []
        changed = True
        while changed:
            changed = False
            for p in range(len(cur) - 1):
                if target[cur[p]] > target[cur[p + 1]]:
                    mover, other = cur[p], cur[p + 1]
                    self._check_degenerate(row, mover, other, span)
                    sign = 1 if row[mover].imag > row[other].imag else -1
                    letters.append(sign * (p + 1))
                    cur[p], cur[p + 1] = other, mover
                    changed = True
        return letters

    def _check_degenerate(self, row, a, b, span):
        xa, xb = row[a].real, row[b].real
        x_cross = 0.5 * (xa + xb)
        tol = DEGENERATE_TOL * span
        near = [
            i
            for i in range(self.s)
            if i not in (a, b) and abs(row[i].real - x_cross) < tol
        ]
        if near:
            raise DegenerateCrossing(
                f"three strand x-coordinates coincide within {tol:.3e} "
                f"near x={x_cross:.6g}"
            )
        if abs(xa - xb) < tol and abs(row[a].imag - row[b].imag) < tol:
            raise DegenerateCrossing(
                "two strands coincide in both coordinates at a crossing"
            )


def extract_word(curve_fn, n_strands, t_samples=1024, t0=0.0):
    """Braid word of a strand-curve family over one period.

    curve_fn maps an array of parameter values to an array of strand
    positions (len(ts), n_strands), complex x + iy. Crossings are the
    adjacent transpositions of the x-sorted order; each is localized by
    bisection to width < 1e-6 before its sign is read off (positive when
    the strand passing left to right lies above). The grid origin is
    shifted deterministically if strands tie in x at t0.
    """
    if t_samples < 1024:
        raise ValueError("extract_word needs at least 1024 samples")
    if n_strands == 1:
        return BraidWord(1, ())
    step = TWO_PI / t_samples
    golden = 0.6180339887498949
    t0 = _shift_origin(curve_fn, t0, step * golden)
    scanner = _WordScanner(curve_fn, n_strands)
    letters = scanner.scan(t_samples, t0)
    return BraidWord(n_strands, tuple(letters))


def _shift_origin(curve_fn, t0, step, max_shifts=64):
    for _ in range(max_shifts):
        row = curve_fn(np.array([t0]))[0]
        xs = np.sort(row.real)
        span = _x_span(row)
        if len(xs) < 2 or np.diff(xs).min() > 1e-9 * span:
            return t0
        t0 += step
    raise DegenerateCrossing("could not find a tie-free grid origin")


def word_of_param(b, t_samples=1024, a=1.0, bb=1.0):
    """Braid word of a parametrised braid, strand x stretched by a and
    y by bb (the word is invariant under positive stretches)."""

    def curve(ts):
        pos = positions_grid(b, ts)
        return a * pos.real + 1j * bb * pos.imag

    return extract_word(curve, b.total_strands, t_samples)


def word_permutation(word):
    """Permutation of x-sorted positions induced by the word's letters."""
    pos = list(range(word.strands))
    for x in word.letters:
        p = abs(x) - 1
        pos[p], pos[p + 1] = pos[p + 1], pos[p]
    return tuple(pos)
