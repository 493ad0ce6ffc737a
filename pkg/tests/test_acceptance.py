"""Acceptance gate: ten pinned criteria, one printed verdict line each.

Run with -s to see the verdict lines for passing criteria too.
"""

import contextlib
from fractions import Fraction as F
from time import perf_counter

import numpy as np
import pytest

import singular_forge as sf
from singular_forge.errors import OddExponent
from singular_forge.trigpoly import TrigPoly


@contextlib.contextmanager
def verdict(n):
    info = {"detail": ""}
    try:
        yield info
    except BaseException:
        print(f"ACCEPTANCE {n}: FAIL {info['detail']}".rstrip())
        raise
    print(f"ACCEPTANCE {n}: PASS {info['detail']}".rstrip())


# expansion of the squared (4,3,1) braid polynomial, exact dyadics,
# keyed by (i, j, n, m) for u^i a^j b^n e^{imt}
EXPANSION_L6A1 = {
    (4, 0, 0, 0): 1,
    (2, 0, 2, 0): 1, (2, 2, 0, 0): -1,
    (2, 1, 1, 2): -1, (2, 1, 1, -2): 1,
    (0, 4, 0, 0): F(1, 8), (0, 2, 2, 0): F(-1, 2), (0, 0, 4, 0): F(1, 8),
    (0, 4, 0, 2): F(-1, 16), (0, 4, 0, -2): F(-1, 16),
    (0, 2, 2, 2): F(-3, 8), (0, 2, 2, -2): F(-3, 8),
    (0, 2, 2, 4): F(1, 8), (0, 2, 2, -4): F(1, 8),
    (0, 0, 4, 6): F(-1, 16), (0, 0, 4, -6): F(-1, 16),
    (0, 3, 1, 2): F(1, 4), (0, 3, 1, -2): F(-1, 4),
    (0, 1, 3, 2): F(-1, 4), (0, 1, 3, -2): F(1, 4),
    (0, 1, 3, 4): F(-1, 4), (0, 1, 3, -4): F(1, 4),
}


def homogenized_l6a1_terms(a, b):
    """Closed form of the k=1, q1=q2=0 homogenization, keyed (i, alpha,
    beta); every coefficient is a dyadic rational in a and b."""
    t = {
        (4, 0, 0): 1.0,
        (2, 2, 2): b * b - a * a,
        (2, 3, 1): -a * b,
        (2, 1, 3): a * b,
        (0, 4, 4): (2 * a**4 - 8 * a * a * b * b + 2 * b**4) / 16,
        (0, 5, 3): (-(a**4) - 6 * a * a * b * b + 4 * a**3 * b - 4 * a * b**3) / 16,
        (0, 3, 5): (-(a**4) - 6 * a * a * b * b - 4 * a**3 * b + 4 * a * b**3) / 16,
        (0, 6, 2): (2 * a * a * b * b - 4 * a * b**3) / 16,
        (0, 2, 6): (2 * a * a * b * b + 4 * a * b**3) / 16,
        (0, 7, 1): -(b**4) / 16,
        (0, 1, 7): -(b**4) / 16,
    }
    return {key: complex(val) for key, val in t.items() if val != 0}


def test_acceptance_01_expansion_regression(l6a1_braid):
    with verdict(1) as info:
        t0 = perf_counter()
        g = sf.expand_g(l6a1_braid)
        elapsed = perf_counter() - t0
        expected = {k: complex(float(v), 0.0) for k, v in EXPANSION_L6A1.items()}
        assert g.terms == expected
        assert elapsed < 1.0
        info["detail"] = f"({len(g.terms)} coefficients exact, {elapsed:.3f}s)"


def test_acceptance_02_homogenization_regression(l6a1_braid):
    with verdict(2) as info:
        g = sf.expand_g(l6a1_braid)
        t0 = perf_counter()
        pairs = [(1.0, 1.0), (0.5, 0.25), (1.0, 0.5), (0.75, 0.5)]
        for a, b in pairs:
            p = sf.homogenize(g, a, b, 1, 0, 0)
            assert p.terms == homogenized_l6a1_terms(a, b), (a, b)
        elapsed = perf_counter() - t0
        assert elapsed < 1.0
        info["detail"] = f"(term-by-term at {len(pairs)} dyadic (a,b), {elapsed:.3f}s)"


def test_acceptance_03_arg_crit_margin():
    with verdict(3) as info:
        b = sf.lemniscate(5, 3, 1)
        t0 = perf_counter()
        c1 = sf.arg_crit_scan(b, a=1.0, bb=0.25, t_samples=2048)
        c2 = sf.arg_crit_scan(b, a=1.0, bb=0.25, t_samples=4096)
        elapsed = perf_counter() - t0
        assert c1.passed and c1.margin > 0.0
        assert c2.passed and c2.margin > 0.0
        cell = 2.0 * np.pi / 2048
        dt = abs(c1.worst_point["t"] - c2.worst_point["t"])
        dt = min(dt, 2.0 * np.pi - dt)
        assert dt <= cell
        assert elapsed < 10.0
        info["detail"] = f"(margin {c1.margin:.4f}, stable under doubling, {elapsed:.2f}s)"


def test_acceptance_04_structural_identity(l6a1_braid, hopf_poly):
    with verdict(4) as info:
        hopf_b, hopf_p = hopf_poly
        l6a1_p = sf.homogenize(sf.expand_g(l6a1_braid), 1.0, 1.0, 1, 0, 0)
        rng = np.random.default_rng(40)
        worst = 0.0
        for b, p in ((l6a1_braid, l6a1_p), (hopf_b, hopf_p)):
            u = rng.normal(size=1000) + 1j * rng.normal(size=1000)
            r = rng.uniform(0.2, 1.0, size=1000)
            t = rng.uniform(0.0, 2.0 * np.pi, size=1000)
            lhs = sf.eval_poly(p, u, r * np.exp(1j * t))
            rhs = r ** (2 * p.s * p.k) * sf.eval_product(
                b,
                r ** float(p.q1) * p.a_eff,
                r ** float(p.q2) * p.b_eff,
                u / r ** (2 * p.k),
                t,
            )
            rel = np.abs(lhs - rhs) / (1.0 + np.abs(rhs))
            worst = max(worst, float(rel.max()))
        assert worst < 1e-9
        info["detail"] = f"(2000 points, worst rel err {worst:.2e})"


def test_acceptance_05_radial_identity(hopf_poly):
    with verdict(5) as info:
        _, p = hopf_poly
        cert = sf.radial_identity_check(p, h=1e-6, tol=1e-5)
        assert cert.passed
        assert cert.margin < 1e-5
        info["detail"] = f"(max rel deviation {cert.margin:.2e})"


def test_acceptance_06_link_type_across_radii(l6a1_braid, l6a1_tuned):
    with verdict(6) as info:
        _, p, _ = l6a1_tuned
        t0 = perf_counter()
        cert = sf.sphere_link_check(p, l6a1_braid, radii=(0.25, 0.5, 1.0))
        elapsed = perf_counter() - t0
        assert cert.passed
        matches = cert.params["words_match"]
        assert set(matches) == {"0.25", "0.5", "1.0"}
        assert all(matches.values())
        assert len(cert.params["word"]) == 6
        assert elapsed < 30.0
        info["detail"] = f"(word {cert.params['word']} at 3 radii, {elapsed:.2f}s)"


def test_acceptance_07_isolation_pipeline():
    with verdict(7) as info:
        raw = sf.lemniscate(2, 1, 1)
        w = sf.word_of_param(raw)
        assert len(w.letters) == 1 and sf.is_strictly_homogeneous(w)
        b = sf.square_parametrisation(raw)
        lam, p, (iso, slk) = sf.tune_lambda(b, 1, 0, 0, 1.0)
        assert iso.passed
        info["detail"] = f"(lambda {lam}, isolation margin {iso.margin:.2e})"


def test_acceptance_08_d_regularity(hopf_poly):
    with verdict(8) as info:
        _, p = hopf_poly
        cert = sf.d_regularity_check(p, radii=(0.5, 1.0), n_points=16384)
        assert cert.grid["n_points"] >= 10**4
        assert cert.passed
        assert cert.margin > 1e-6
        info["detail"] = f"(margin {cert.margin:.2e} on {cert.grid['n_points']} points/sphere)"


def test_acceptance_09_parity_law(l6a1_braid):
    with verdict(9) as info:
        ok = 0
        b32 = sf.lemniscate(3, 2, 1)
        sc = sf.derive_scaling(b32)
        assert (sc.q1, sc.q2) == (F(1), F(2))
        sf.homogenize(sf.expand_g(b32), 1.0, 0.5, 1, sc.q1, sc.q2)
        ok += 1
        sf.homogenize(sf.expand_g(l6a1_braid), 1.0, 1.0, 1, 0, 0)
        ok += 1
        bad = sf.from_fourier(
            [(3, TrigPoly.cosine(1) + TrigPoly.cosine(2), TrigPoly.sine(1))]
        )
        with pytest.raises(OddExponent):
            sf.homogenize_graded(sf.expand_g(bad), 1, 0, 0)
        ok += 1
        assert ok == 3
        info["detail"] = "(3/3 verdicts)"


def test_acceptance_10_oracle_cross_checks(l6a1_braid, hopf_poly):
    with verdict(10) as info:
        hopf_b, hopf_p = hopf_poly
        b32 = sf.lemniscate(3, 2, 1)
        b53 = sf.lemniscate(5, 3, 1)
        cases = [
            (hopf_b, hopf_p),
            (l6a1_braid, sf.homogenize(sf.expand_g(l6a1_braid), 1.0, 1.0, 1, 0, 0)),
            (b32, sf.homogenize(sf.expand_g(b32), 1.0, 0.5, 1, 1, 2)),
            (b53, sf.homogenize(sf.expand_g(b53), 1.0, 0.25, 1, 1, 1)),
        ]
        rng = np.random.default_rng(100)
        worst_jac = 0.0
        for _, p in cases:
            for _ in range(20):
                u = complex(rng.normal(), rng.normal())
                v = complex(rng.normal(scale=0.5), rng.normal(scale=0.5))
                J = sf.jacobian_real(p, u, v)

                def fmap(x):
                    val = sf.eval_poly(p, complex(x[0], x[1]), complex(x[2], x[3]))
                    return np.array([val.real, val.imag])

                Jfd = sf.fd_jacobian(fmap, np.array([u.real, u.imag, v.real, v.imag]))
                rel = np.abs(J - Jfd).max() / max(1.0, np.abs(J).max())
                worst_jac = max(worst_jac, float(rel))
        assert worst_jac < 1e-5

        worst_root = 0.0
        for b, p in cases:
            rr = rng.uniform(0.1, 1.0, 50)
            tt = rng.uniform(0.0, 2.0 * np.pi, 50)
            c1 = 2 * p.k + float(p.q1)
            c2 = 2 * p.k + float(p.q2)
            coeffs = sf.u_poly_coeffs(p, rr * np.exp(1j * tt))
            pos = sf.positions_grid(b, tt)
            explicit = (rr[:, None] ** c1 * p.a_eff * pos.real
                        + 1j * rr[:, None] ** c2 * p.b_eff * pos.imag)
            for row in range(50):
                got = sf.all_roots(coeffs[row])
                want = np.sort(explicit[row])
                worst_root = max(worst_root, float(np.abs(got - want).max()))
        assert worst_root < 1e-8
        info["detail"] = (
            f"(jacobian rel {worst_jac:.2e}; root multiset err {worst_root:.2e})"
        )
