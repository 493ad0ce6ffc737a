"""Numerical certification scans.

Every scan samples deterministic grids, reports a margin (its distance
from failure) and packages the verdict as a Certificate. A passing
certificate is evidence at grid resolution, not a proof; margins are
normalized so thresholds are scale-free where possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braidlib import BraidParam, positions_grid, word_of_param, extract_word, _shift_origin
from .construct import (
    GradedBraidPoly,
    MixedPoly,
    eval_poly,
    expand_g,
    homogenize_from_graded,
    homogenize_graded,
    u_deriv_coeffs,
    wirtinger,
)
from .errors import Exhausted, TooCloseToZeroSet, ZeroAtCritical
from .numerics import roots_batch

TWO_PI = 2.0 * math.pi

ARG_CRIT_THRESHOLD = 1e-6
ISOLATION_THRESHOLD = 1e-8
DET2_THRESHOLD = 1e-12
SPHERE_THRESHOLD = 1e-6
DREG_THRESHOLD = 1e-6
ZERO_GUARD = 1e-10

GRID_NOTE = "evidence at grid resolution"


@dataclass(frozen=True)
class Certificate:
    """Outcome of one certification scan."""

    kind: str
    passed: bool
    margin: float
    grid: dict
    params: dict
    worst_point: dict | None = None
    note: str = ""

    def to_record(self):
        return {
            "kind": self.kind,
            "pass": self.passed,
            "margin": self.margin,
            "grid": self.grid,
            "params": self.params,
            "worst_point": self.worst_point,
            "note": self.note,
        }


def _grid(n):
    return np.arange(n) * (TWO_PI / n)


def _horner_rows(coeff_rows, z):
    """Evaluate per-row polynomials at per-row points z (rows, pts)."""
    out = np.zeros_like(z)
    for i in range(coeff_rows.shape[1] - 1, -1, -1):
        out = out * z + coeff_rows[:, i, None]
    return out


# ----------------------------------------------------------------------
# argument-critical scan (weak isolation)


def _arg_crit_margins(coeff_trigs, dcoeff_trigs, ts, s):
    C = np.zeros((ts.size, s + 1), dtype=complex)
    Dt = np.zeros_like(C)
    for i in range(s + 1):
        C[:, i] = coeff_trigs[i].eval(ts)
        Dt[:, i] = dcoeff_trigs[i].eval(ts)
    dcoef = C[:, 1:] * np.arange(1, s + 1)
    roots = roots_batch(dcoef)
    vals = _horner_rows(C, roots)
    dvals = _horner_rows(Dt, roots)
    pows = np.maximum(1.0, np.abs(roots))[:, :, None] ** np.arange(s + 1)
    scale = (np.abs(C)[:, None, :] * pows).sum(axis=-1)
    # exact zeros of g produce inf/nan ratios; the near-zero guard in the
    # caller inspects |vals| before the ratios are trusted
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.abs(np.imag(dvals / vals))
    return ratios, np.abs(vals), scale, roots


def arg_crit_scan(b: BraidParam, a=1.0, bb=1.0, t_samples=2048) -> Certificate:
    """Scan for zeros of the t-derivative of arg g along the critical
    curves of g(., t) in u.

    The braid closure is the link of a weakly isolated singularity when
    arg g(u_k(t), t) is strictly monotone in t at every root u_k(t) of
    dg/du; the margin is the smallest |d arg g / dt| seen, after a x4
    grid refinement around the minimizer. Vacuous (infinite margin) on
    one strand.
    """
    g = expand_g(b)
    s = g.s
    grid_info = {"t_samples": int(t_samples), "refine_factor": 4}
    params = {"a": float(a), "b": float(bb)}
    if s == 1:
        return Certificate(
            "ArgCritFree", True, math.inf, grid_info, params,
            note="one strand: no argument-critical points; " + GRID_NOTE,
        )

    coeff_trigs = g.u_coeff_trigs(float(a), float(bb))
    dcoeff_trigs = [c.d_dt() for c in coeff_trigs]
    ts = _grid(t_samples)
    margins, absvals, scale, roots = _arg_crit_margins(coeff_trigs, dcoeff_trigs, ts, s)

    near_zero = absvals <= ZERO_GUARD * scale
    if near_zero.any():
        # Refine around each flagged t; a zero that persists means the
        # zero set meets a critical point.
        step = TWO_PI / t_samples
        for ti in np.unique(np.nonzero(near_zero)[0]):
            tloc = ts[ti] + np.linspace(-step, step, 9)
            m2, av2, sc2, _ = _arg_crit_margins(coeff_trigs, dcoeff_trigs, tloc, s)
            if (av2 <= ZERO_GUARD * sc2).any():
                raise ZeroAtCritical(
                    f"g vanishes at an argument-critical point near t={ts[ti]:.6f}"
                )

    flat = int(np.argmin(margins))
    ti, ki = divmod(flat, margins.shape[1])
    margin = float(margins[ti, ki])
    worst_t = float(ts[ti])
    worst_u = complex(roots[ti, ki])

    step = TWO_PI / t_samples
    tref = worst_t + np.linspace(-step, step, 9)
    mref, avref, scref, rref = _arg_crit_margins(coeff_trigs, dcoeff_trigs, tref, s)
    if (avref <= ZERO_GUARD * scref).any():
        raise ZeroAtCritical(
            f"g vanishes at an argument-critical point near t={worst_t:.6f}"
        )
    rflat = int(np.argmin(mref))
    if float(mref.flat[rflat]) < margin:
        margin = float(mref.flat[rflat])
        ri, rk = divmod(rflat, mref.shape[1])
        worst_t = float(tref[ri])
        worst_u = complex(rref[ri, rk])

    return Certificate(
        kind="ArgCritFree",
        passed=margin > ARG_CRIT_THRESHOLD,
        margin=margin,
        grid=grid_info,
        params=params,
        worst_point={"t": worst_t, "re_u": worst_u.real, "im_u": worst_u.imag},
        note=GRID_NOTE,
    )


# ----------------------------------------------------------------------
# isolation (rank of the real Jacobian at u-critical points)


def _isolation_stats(p: MixedPoly, v):
    """Jacobian statistics at the u-critical points over the v values."""
    dcoef = u_deriv_coeffs(p, v)
    roots = roots_batch(dcoef)
    vv = v[:, None]
    pu, pv, pvb = wirtinger(p, roots, vv)
    phase = vv / np.abs(vv)
    dr = pv * phase + pvb * np.conj(phase)
    dt = 1j * (pv * vv - pvb * np.conj(vv))

    cols = [pu, 1j * pu, dr, dt]
    J = np.stack(
        [np.stack([np.real(c) for c in cols], axis=-1),
         np.stack([np.imag(c) for c in cols], axis=-1)],
        axis=-2,
    )  # (N, s-1, 2, 4)
    svals = np.linalg.svd(J, compute_uv=False)
    maxent = np.abs(J).max(axis=(-2, -1))
    safe = np.where(maxent > 0, maxent, 1.0)
    margins = np.where(maxent > 0, svals[..., -1] / safe, 0.0)

    det2 = np.real(dt) * np.imag(dr) - np.real(dr) * np.imag(dt)
    det2n = np.where(maxent > 0, np.abs(det2) / safe**2, 0.0)
    return margins, det2n, roots


def _radial_errors(p: MixedPoly, roots, v, h=1e-6):
    """Relative deviation from dp/dr = 2sk p / r at given u points."""
    vv = v[:, None]
    r = np.abs(vv)
    phase = vv / r
    pp = eval_poly(p, roots, (r + h) * phase)
    pm = eval_poly(p, roots, (r - h) * phase)
    fd = (pp - pm) / (2.0 * h)
    target = (2.0 * p.s * p.k / r) * eval_poly(p, roots, vv)
    return np.abs(fd - target) / (np.abs(target) + 1e-30)


def isolation_check(p: MixedPoly, r_samples=24, t_samples=192) -> Certificate:
    """Check that no u-critical point off the origin is a critical point
    of p as a real map.

    At every root of dp/du over an (r, t) grid the real 2x4 Jacobian
    must keep rank 2: the margin is its smallest singular value
    normalized by the largest entry, refined x4 around the minimizer.
    The closed-form minor beta*gamma - alpha*delta of the (r, t) columns
    must also stay away from zero, and for q1 = q2 = 0 the radial
    identity dp/dr = 2sk p/r is spot-checked at every critical point.
    """
    rr = np.arange(1, r_samples + 1) / r_samples
    tt = _grid(t_samples)
    v = (rr[:, None] * np.exp(1j * tt)[None, :]).ravel()
    margins, det2n, _ = _isolation_stats(p, v)

    flat = int(np.argmin(margins))
    vi, _ = divmod(flat, margins.shape[1])
    margin = float(margins.min())
    worst_v = complex(v[vi])

    # one x4 refinement pass around the worst grid cell
    r0, t0 = abs(worst_v), math.atan2(worst_v.imag, worst_v.real)
    dr_step = 1.0 / r_samples
    dt_step = TWO_PI / t_samples
    rloc = np.clip(r0 + np.linspace(-dr_step, dr_step, 9), dr_step / 16, 1.0)
    tloc = t0 + np.linspace(-dt_step, dt_step, 9)
    vloc = (rloc[:, None] * np.exp(1j * tloc)[None, :]).ravel()
    margins2, det2n2, _ = _isolation_stats(p, vloc)
    margin = min(margin, float(margins2.min()))
    det2_min = min(float(det2n.min()), float(det2n2.min()))

    radial_max = None
    if p.q1 == 0 and p.q2 == 0:
        dcoef = u_deriv_coeffs(p, v)
        roots = roots_batch(dcoef)
        radial_max = float(_radial_errors(p, roots, v).max())

    passed = margin > ISOLATION_THRESHOLD and det2_min > DET2_THRESHOLD
    if radial_max is not None:
        passed = passed and radial_max < 1e-6

    params = {
        "a": p.a, "b": p.b, "k": p.k,
        "q1": float(p.q1), "q2": float(p.q2), "lambda": p.lam,
        "det2_min": det2_min,
    }
    if radial_max is not None:
        params["radial_max_rel_err"] = radial_max
    return Certificate(
        kind="Isolation",
        passed=passed,
        margin=margin,
        grid={"r_samples": int(r_samples), "t_samples": int(t_samples),
              "refine_factor": 4},
        params=params,
        worst_point={"re_v": worst_v.real, "im_v": worst_v.imag},
        note=GRID_NOTE,
    )


def radial_identity_check(p: MixedPoly, r_samples=12, t_samples=64,
                          h=1e-6, tol=1e-5) -> Certificate:
    """Spot-check dp/dr = 2sk p / r at every u-critical grid point.

    Margin is the largest relative deviation (smaller is better here);
    the check applies to the q1 = q2 = 0 grading.
    """
    if p.q1 != 0 or p.q2 != 0:
        raise ValueError("radial identity requires q1 = q2 = 0")
    rr = np.arange(1, r_samples + 1) / r_samples
    tt = _grid(t_samples)
    v = (rr[:, None] * np.exp(1j * tt)[None, :]).ravel()
    dcoef = u_deriv_coeffs(p, v)
    roots = roots_batch(dcoef)
    errs = _radial_errors(p, roots, v, h)
    flat = int(np.argmax(errs))
    vi, _ = divmod(flat, errs.shape[1])
    worst_v = complex(v[vi])
    margin = float(errs.max())
    return Certificate(
        kind="RadialIdentity",
        passed=margin < tol,
        margin=margin,
        grid={"r_samples": int(r_samples), "t_samples": int(t_samples), "h": h},
        params={"a": p.a, "b": p.b, "k": p.k, "lambda": p.lam, "tol": tol},
        worst_point={"re_v": worst_v.real, "im_v": worst_v.imag},
        note="margin is the largest relative deviation; " + GRID_NOTE,
    )


# ----------------------------------------------------------------------
# sphere link (braid word on small spheres)


def _sphere_radius(b, ae, be, c1, c2, ts, rho, iters=60):
    """Depth r(t) per strand with (u, v) on the sphere of radius rho.

    Solves r^2 + r^{2 c1} ae^2 X^2 + r^{2 c2} be^2 Y^2 = rho^2 by
    bisection; the left side is strictly increasing in r.
    """
    pos = positions_grid(b, ts)
    x2 = (ae * pos.real) ** 2
    y2 = (be * pos.imag) ** 2
    lo = np.zeros_like(x2)
    hi = np.full_like(x2, rho)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        val = mid**2 + mid ** (2 * c1) * x2 + mid ** (2 * c2) * y2 - rho**2
        high = val > 0.0
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
    r = 0.5 * (lo + hi)
    return r, pos


def _sphere_curve(b, ae, be, c1, c2, rho):
    def curve(ts):
        r, pos = _sphere_radius(b, ae, be, c1, c2, np.asarray(ts, float), rho)
        return r**c1 * ae * pos.real + 1j * r**c2 * be * pos.imag

    return curve


def sphere_link_check(p: MixedPoly, b: BraidParam, radii=(0.25, 0.5, 1.0),
                      t_samples=1024, trans_points=512) -> Certificate:
    """Compare the braid word of the zero set on each sphere with the
    braid word of the parametrisation, and measure how far the zero-set
    tangent stays from the sphere tangent space.

    The zero set of p on the sphere of radius rho is swept by the
    explicit root curves u_j = r^{2k+q1} a X_j + i r^{2k+q2} b Y_j at
    the depth r(t) where (u_j, v) meets the sphere. Letter sequences
    must match at every radius; the margin is the least sine of the
    tangent-to-sphere angle over sampled zero-set points.
    """
    s = p.s
    ae, be = p.a_eff, p.b_eff
    c1 = 2 * p.k + float(p.q1)
    c2 = 2 * p.k + float(p.q2)

    def raw_curve(ts):
        pos = positions_grid(b, np.asarray(ts, float))
        return ae * pos.real + 1j * be * pos.imag

    curves = [raw_curve] + [_sphere_curve(b, ae, be, c1, c2, rho) for rho in radii]

    # One tie-free origin shared by every extraction so letter sequences
    # stay aligned. Iterate until a full pass leaves t0 unchanged.
    gstep = (TWO_PI / t_samples) * 0.6180339887498949
    t0 = 0.0
    for _ in range(64):
        t1 = t0
        for fn in curves:
            t1 = _shift_origin(fn, t1, gstep)
        if t1 == t0:
            break
        t0 = t1

    word_raw = extract_word(raw_curve, s, t_samples, t0=t0)
    words = {}
    matches = {}
    margin = math.inf
    worst = None
    n_t = -(-trans_points // s)
    tt = _grid(n_t)
    for rho, fn in zip(radii, curves[1:]):
        w = extract_word(fn, s, t_samples, t0=t0)
        words[rho] = list(w.letters)
        matches[rho] = w.letters == word_raw.letters

        r, pos = _sphere_radius(b, ae, be, c1, c2, tt, rho)
        x = ae * pos.real
        y = be * pos.imag
        u = r**c1 * x + 1j * r**c2 * y
        du_dr = c1 * r ** (c1 - 1) * x + 1j * c2 * r ** (c2 - 1) * y
        inner = np.abs((np.conj(u) * du_dr).real + r)
        tnorm = np.sqrt(np.abs(du_dr) ** 2 + 1.0)
        m = inner / (tnorm * rho)
        m_flat = m.ravel()[:trans_points]
        i0 = int(np.argmin(m_flat))
        if float(m_flat[i0]) < margin:
            margin = float(m_flat[i0])
            ti, j = divmod(i0, s)
            worst = {"rho": float(rho), "strand": int(j), "t": float(tt[ti])}

    passed = all(matches.values()) and margin > SPHERE_THRESHOLD
    return Certificate(
        kind="SphereLink",
        passed=passed,
        margin=margin,
        grid={"t_samples": int(t_samples), "trans_points": int(trans_points)},
        params={
            "radii": [float(r) for r in radii],
            "a": p.a, "b": p.b, "k": p.k,
            "q1": float(p.q1), "q2": float(p.q2), "lambda": p.lam,
            "word": list(word_raw.letters),
            "words_match": {str(r): bool(v) for r, v in matches.items()},
        },
        worst_point=worst,
        note=GRID_NOTE,
    )


# ----------------------------------------------------------------------
# d-regularity (canonical pencil transverse to small spheres)


_PLASTIC = 1.3247179572447458


def _kronecker_points(n, offset=0):
    a1 = 1.0 / _PLASTIC
    a2 = a1 * a1
    a3 = a2 * a1
    idx = np.arange(offset + 1, offset + n + 1, dtype=float)
    xi = np.mod(0.5 + idx * a1, 1.0)
    th = np.mod(0.5 + idx * a2, 1.0)
    ph = np.mod(0.5 + idx * a3, 1.0)
    return xi, TWO_PI * th, TWO_PI * ph


def _poly_scale(p, rho):
    return sum(abs(c) * rho ** (i + al + be) for (i, al, be), c in p.terms.items())


def d_regularity_check(p: MixedPoly, radii=(0.5, 1.0), n_points=16384,
                       case_samples=256) -> Certificate:
    """Check that arg p has no critical point on the sphere off the zero
    set, the numerical content of d-regularity of the canonical pencil.

    Samples a deterministic low-discrepancy lattice on each sphere,
    computes the gradient of arg p restricted to the sphere, and takes
    the least ratio |tangential gradient| / |full gradient|. Samples too
    close to the zero set are redrawn deterministically. The three
    case-split directions (radial in v at u = 0, radial in u at v = 0,
    the combined direction elsewhere) are also checked for
    non-tangency. Run after isolation_check has passed.
    """
    margin = math.inf
    worst = None
    case_min = math.inf
    c1 = 2 * p.k + float(p.q1)
    for rho in radii:
        scale = _poly_scale(p, rho)
        xi, th, ph = _kronecker_points(n_points)
        u = rho * np.sqrt(1.0 - xi) * np.exp(1j * th)
        v = rho * np.sqrt(xi) * np.exp(1j * ph)
        w = eval_poly(p, u, v)
        bad = np.abs(w) < ZERO_GUARD * scale
        stride = 7919
        for attempt in range(1, 65):
            if not bad.any():
                break
            n_bad = int(bad.sum())
            xi2, th2, ph2 = _kronecker_points(n_bad, offset=attempt * stride * n_points)
            u[bad] = rho * np.sqrt(1.0 - xi2) * np.exp(1j * th2)
            v[bad] = rho * np.sqrt(xi2) * np.exp(1j * ph2)
            w[bad] = eval_poly(p, u[bad], v[bad])
            bad = np.abs(w) < ZERO_GUARD * scale
        else:
            raise TooCloseToZeroSet(
                f"could not redraw {int(bad.sum())} samples away from the zero set"
            )

        pu, pv, pvb = wirtinger(p, u, v)
        G = np.stack(
            [
                np.imag(pu / w),
                np.imag(1j * pu / w),
                np.imag((pv + pvb) / w),
                np.imag(1j * (pv - pvb) / w),
            ],
            axis=-1,
        )
        X = np.stack([u.real, u.imag, v.real, v.imag], axis=-1) / rho
        Gn = np.linalg.norm(G, axis=-1)
        rad = (G * X).sum(axis=-1)
        Gt = np.linalg.norm(G - rad[:, None] * X, axis=-1)
        ratios = Gt / (Gn + 1e-300)
        i0 = int(np.argmin(ratios))
        if float(ratios[i0]) < margin:
            margin = float(ratios[i0])
            worst = {
                "rho": float(rho),
                "re_u": float(u[i0].real), "im_u": float(u[i0].imag),
                "re_v": float(v[i0].real), "im_v": float(v[i0].imag),
            }

        # case directions from the transversality case split
        tcase = _grid(case_samples)
        vc = rho * np.exp(1j * tcase)  # u = 0 slice: direction (0, e^{it})
        case_a = np.abs((np.conj(vc) * np.exp(1j * tcase)).real) / rho
        uc = rho * np.exp(1j * tcase)  # v = 0 slice: direction (e^{i arg u}, 0)
        case_b = np.abs((np.conj(uc) * np.exp(1j * tcase)).real) / rho
        r = np.abs(v)
        au = np.abs(u)
        ok = au > 1e-12 * rho
        num = r[ok] ** c1 * au[ok] + r[ok]
        den = np.sqrt(r[ok] ** (2 * c1) + 1.0) * rho
        case_c = num / den
        case_min = min(
            case_min,
            float(case_a.min()), float(case_b.min()), float(case_c.min()),
        )

    passed = margin > DREG_THRESHOLD and case_min > DREG_THRESHOLD
    return Certificate(
        kind="DRegular",
        passed=passed,
        margin=margin,
        grid={"n_points": int(n_points), "case_samples": int(case_samples)},
        params={
            "radii": [float(r) for r in radii],
            "a": p.a, "b": p.b, "k": p.k,
            "q1": float(p.q1), "q2": float(p.q2), "lambda": p.lam,
            "case_margin_min": case_min,
        },
        worst_point=worst,
        note=GRID_NOTE,
    )


# ----------------------------------------------------------------------
# coefficient-scale tuning


def tune_lambda(b: BraidParam, k, q1, q2, lam0, a=1.0, bb=1.0,
                radii=(0.25, 0.5, 1.0), max_halvings=20,
                r_samples=24, t_samples=192, sphere_t_samples=1024):
    """Halve the coefficient scale until isolation and sphere-link checks
    both pass.

    Returns (lam, p, (isolation_cert, sphere_cert)). Raises Exhausted
    after max_halvings halvings.
    """
    g = expand_g(b)
    graded = homogenize_graded(g, k, q1, q2)
    lam = float(lam0)
    last = None
    for _ in range(max_halvings + 1):
        p = homogenize_from_graded(graded, g.s, float(a), float(bb), int(k),
                                   Fraction(q1), Fraction(q2), lam)
        iso = isolation_check(p, r_samples=r_samples, t_samples=t_samples)
        if iso.passed:
            slk = sphere_link_check(p, b, radii=radii, t_samples=sphere_t_samples)
            if slk.passed:
                return lam, p, (iso, slk)
            last = ("sphere_link", slk.margin)
        else:
            last = ("isolation", iso.margin)
        lam *= 0.5
    raise Exhausted(
        f"no passing coefficient scale within {max_halvings} halvings of "
        f"{lam0} (last failure: {last[0]} margin {last[1]:.3e})"
    )
