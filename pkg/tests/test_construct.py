"""Braid-polynomial expansion, scaling exponents and homogenization."""

from fractions import Fraction as F

import numpy as np
import pytest

import singular_forge as sf
from singular_forge.errors import (
    MixedResidues,
    NegativeExponent,
    OddExponent,
    UnequalComponents,
)
from singular_forge.trigpoly import TrigPoly


def hopf_raw_expected():
    # hand expansion: g = u^2 - (a cos(t/2) + i b sin(t/2))^2 with the
    # double angle identities applied
    return {
        (2, 0, 0, 0): 1.0,
        (0, 2, 0, 0): -0.5, (0, 2, 0, 1): -0.25, (0, 2, 0, -1): -0.25,
        (0, 0, 2, 0): 0.5, (0, 0, 2, 1): -0.25, (0, 0, 2, -1): -0.25,
        (0, 1, 1, 1): -0.5, (0, 1, 1, -1): 0.5,
    }


def l6a1_expected():
    # expansion of the squared (4,3,1) braid polynomial; exact dyadics
    return {
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


def test_expand_hopf_raw_exact():
    g = sf.expand_g(sf.lemniscate(2, 1, 1))
    expected = hopf_raw_expected()
    assert set(g.terms) == set(expected)
    for key, want in expected.items():
        assert g.terms[key] == complex(want), key


def test_expand_l6a1_exact():
    b = sf.square_parametrisation(sf.lemniscate(4, 3, 1))
    g = sf.expand_g(b)
    expected = l6a1_expected()
    assert set(g.terms) == set(expected)
    for key, want in expected.items():
        assert g.terms[key] == complex(float(want), 0.0), key


def test_expand_matches_product_oracle():
    rng = np.random.default_rng(10)
    cases = [
        sf.lemniscate(2, 1, 1),
        sf.lemniscate(3, 2, 1),
        sf.lemniscate(5, 3, 1),
        sf.square_parametrisation(sf.lemniscate(4, 3, 1)),
    ]
    for b in cases:
        g = sf.expand_g(b)
        u = rng.normal(size=30) + 1j * rng.normal(size=30)
        t = rng.uniform(0, 2 * np.pi, size=30)
        direct = sf.eval_product(b, 0.8, 0.35, u, t)
        series = sf.eval_graded(g, 0.8, 0.35, u, t)
        scale = np.abs(direct).max()
        assert np.abs(series - direct).max() < 1e-12 * scale


def test_graded_monic_validation():
    with pytest.raises(ValueError):
        sf.GradedBraidPoly(2, {(2, 0, 0, 0): 2.0})
    with pytest.raises(ValueError):
        sf.GradedBraidPoly(2, {(1, 1, 0, 0): 1.0})


def test_derive_scaling_pinned_cases():
    sc = sf.derive_scaling(sf.lemniscate(3, 2, 1))
    assert (sc.q1, sc.q2) == (F(1), F(2))
    sc = sf.derive_scaling(sf.lemniscate(5, 3, 1))
    assert (sc.q1, sc.q2) == (F(1), F(1))
    sc = sf.derive_scaling(sf.square_parametrisation(sf.lemniscate(4, 3, 1)))
    assert (sc.q1, sc.q2) == (F(0), F(0))
    sc = sf.derive_scaling(sf.lemniscate(2, 1, 1))
    assert (sc.q1, sc.q2) == (F(1, 2), F(1, 2))


def test_derive_scaling_mixed_residues():
    Fx = TrigPoly.cosine(1) + TrigPoly.cosine(2)
    b = sf.from_fourier([(3, Fx, TrigPoly.sine(1))])
    with pytest.raises(MixedResidues) as exc:
        sf.derive_scaling(b)
    msg = str(exc.value)
    assert "0" in msg and "1" in msg  # names both residue classes


def test_derive_scaling_unequal_components():
    far = TrigPoly.constant(3.0) + TrigPoly.cosine(1)
    b = sf.from_fourier([
        (2, TrigPoly.cosine(1), TrigPoly.sine(1)),
        (3, far, TrigPoly.sine(2)),
    ])
    with pytest.raises(UnequalComponents):
        sf.derive_scaling(b)
    # the all-even route has no equal-components requirement
    sc = sf.derive_scaling(sf.square_parametrisation(b))
    assert (sc.q1, sc.q2) == (F(0), F(0))


def test_choose_k():
    assert sf.choose_k(sf.expand_g(sf.square_parametrisation(sf.lemniscate(4, 3, 1)))) == 1
    assert sf.choose_k(sf.expand_g(sf.lemniscate(5, 3, 1))) == 1
    assert sf.choose_k(sf.expand_g(sf.lemniscate(2, 5, 1))) == 2


def test_parity_law_examples():
    # squared inputs homogenize at q = 0
    b = sf.square_parametrisation(sf.lemniscate(4, 3, 1))
    p = sf.homogenize(sf.expand_g(b), 1.0, 1.0, 1, 0, 0)
    assert p.u_degree == 4
    # derived q works for the odd lemniscate
    g3 = sf.expand_g(sf.lemniscate(3, 2, 1))
    p3 = sf.homogenize(g3, 1.0, 0.5, 1, 1, 2)
    assert p3.u_degree == 3
    # raw (2,1,1) fails at its residue candidate: constant term has odd e
    g2 = sf.expand_g(sf.lemniscate(2, 1, 1))
    with pytest.raises(OddExponent) as exc:
        sf.homogenize(g2, 1.0, 1.0, 1, F(1, 2), F(1, 2))
    assert "u^0" in str(exc.value)


def test_odd_exponent_counterexample():
    Fx = TrigPoly.cosine(1) + TrigPoly.cosine(2)
    b = sf.from_fourier([(3, Fx, TrigPoly.sine(1))])
    g = sf.expand_g(b)
    with pytest.raises(OddExponent):
        sf.homogenize_graded(g, 1, 0, 0)


def test_negative_exponent_needs_larger_k():
    # one strand winding at frequency 4: k = 1 leaves e = 2k - 4 < 0
    b = sf.from_fourier([(1, TrigPoly.cosine(4), TrigPoly.sine(4))])
    g = sf.expand_g(b)
    with pytest.raises(NegativeExponent) as exc:
        sf.homogenize_graded(g, 1, 0, 0)
    assert "increase k" in str(exc.value)
    p = sf.homogenize(g, 1.0, 1.0, 2, 0, 0)
    assert p.terms == {(1, 0, 0): 1.0 + 0j, (0, 4, 0): -1.0 + 0j}


def test_homogenize_l6a1_exact_dyadics():
    b = sf.square_parametrisation(sf.lemniscate(4, 3, 1))
    p = sf.homogenize(sf.expand_g(b), 1.0, 1.0, 1, 0, 0)
    expected = {
        (4, 0, 0): 1.0,
        (2, 3, 1): -1.0, (2, 1, 3): 1.0,
        (0, 7, 1): -0.0625, (0, 6, 2): -0.125, (0, 5, 3): -0.4375,
        (0, 4, 4): -0.25, (0, 3, 5): -0.4375, (0, 2, 6): 0.375,
        (0, 1, 7): -0.0625,
    }
    assert set(p.terms) == set(expected)
    for key, want in expected.items():
        assert p.terms[key] == complex(want), key


def test_homogenize_validation():
    g = sf.expand_g(sf.lemniscate(2, 1, 1))
    with pytest.raises(ValueError):
        sf.homogenize(g, -1.0, 1.0, 1, 0, 0)
    with pytest.raises(ValueError):
        sf.homogenize(g, 1.0, 1.0, 0, 0, 0)
    with pytest.raises(ValueError):
        sf.homogenize_graded(g, 1, -1, 0)


def test_structural_scaling_identity():
    rng = np.random.default_rng(8)
    b = sf.square_parametrisation(sf.lemniscate(4, 3, 1))
    p = sf.homogenize(sf.expand_g(b), 0.7, 0.4, 1, 0, 0)
    n = 200
    u = rng.normal(size=n) + 1j * rng.normal(size=n)
    r = rng.uniform(0.2, 1.0, size=n)
    t = rng.uniform(0, 2 * np.pi, size=n)
    lhs = sf.eval_poly(p, u, r * np.exp(1j * t))
    rhs = r ** (2 * 4 * 1) * sf.eval_product(b, 0.7, 0.4, u / r**2, t)
    assert np.abs(lhs - rhs).max() < 1e-9 * np.abs(rhs).max()


def test_structural_identity_fractional_q():
    # (5,3,1) at q1 = q2 = 1: radial weights r^{2k+1} on both axes
    rng = np.random.default_rng(9)
    b = sf.lemniscate(5, 3, 1)
    p = sf.homogenize(sf.expand_g(b), 1.0, 0.25, 1, 1, 1)
    n = 100
    u = rng.normal(size=n) + 1j * rng.normal(size=n)
    r = rng.uniform(0.3, 1.0, size=n)
    t = rng.uniform(0, 2 * np.pi, size=n)
    lhs = sf.eval_poly(p, u, r * np.exp(1j * t))
    rhs = r ** (2 * 5 * 1) * sf.eval_product(b, r * 1.0, r * 0.25, u / r**2, t)
    assert np.abs(lhs - rhs).max() < 1e-9 * np.abs(rhs).max()


def test_explicit_roots_match_solver():
    rng = np.random.default_rng(11)
    b = sf.square_parametrisation(sf.lemniscate(4, 3, 1))
    p = sf.homogenize(sf.expand_g(b), 0.5, 0.25, 1, 0, 0)
    rr = rng.uniform(0.1, 1.0, 50)
    tt = rng.uniform(0, 2 * np.pi, 50)
    v = rr * np.exp(1j * tt)
    roots = sf.roots_batch(sf.u_poly_coeffs(p, v))
    pos = sf.positions_grid(b, tt)
    explicit = rr[:, None] ** 2 * (0.5 * pos.real + 0.25j * pos.imag)
    err = np.abs(np.sort(roots, axis=1) - np.sort(explicit, axis=1)).max()
    assert err < 1e-8


def test_wirtinger_against_fd_jacobian():
    rng = np.random.default_rng(12)
    b = sf.lemniscate(3, 2, 1)
    p = sf.homogenize(sf.expand_g(b), 1.0, 0.5, 1, 1, 2)
    for _ in range(10):
        u = complex(rng.normal(), rng.normal())
        v = complex(rng.normal(scale=0.5), rng.normal(scale=0.5))
        J = sf.jacobian_real(p, u, v)

        def f(x):
            val = sf.eval_poly(p, complex(x[0], x[1]), complex(x[2], x[3]))
            return np.array([val.real, val.imag])

        Jfd = sf.fd_jacobian(f, np.array([u.real, u.imag, v.real, v.imag]))
        assert np.abs(J - Jfd).max() < 1e-5 * max(1.0, np.abs(J).max())


def test_polar_derivatives_against_fd():
    b = sf.square_parametrisation(sf.lemniscate(2, 1, 1))
    p = sf.homogenize(sf.expand_g(b), 1.0, 1.0, 1, 0, 0)
    u = 0.3 + 0.1j
    r, t = 0.8, 1.1
    dr, dt = sf.polar_rt_derivs(p, u, r * np.exp(1j * t))
    h = 1e-6
    fd_r = (sf.eval_poly(p, u, (r + h) * np.exp(1j * t))
            - sf.eval_poly(p, u, (r - h) * np.exp(1j * t))) / (2 * h)
    fd_t = (sf.eval_poly(p, u, r * np.exp(1j * (t + h)))
            - sf.eval_poly(p, u, r * np.exp(1j * (t - h)))) / (2 * h)
    assert abs(dr - fd_r) < 1e-7
    assert abs(dt - fd_t) < 1e-7


def test_u_coeffs_consistent_with_eval():
    rng = np.random.default_rng(13)
    b = sf.lemniscate(5, 3, 1)
    p = sf.homogenize(sf.expand_g(b), 1.0, 0.25, 1, 1, 1)
    v = rng.uniform(0.2, 1.0, 8) * np.exp(1j * rng.uniform(0, 6.28, 8))
    u = rng.normal(size=8) + 1j * rng.normal(size=8)
    C = sf.u_poly_coeffs(p, v)
    horner = np.zeros_like(u)
    for i in range(C.shape[1] - 1, -1, -1):
        horner = horner * u + C[:, i]
    direct = sf.eval_poly(p, u, v)
    assert np.abs(horner - direct).max() < 1e-12 * max(1.0, np.abs(direct).max())
    D = sf.u_deriv_coeffs(p, v)
    assert D.shape == (8, 5)
    assert np.abs(D - C[:, 1:] * np.arange(1, 6)).max() == 0.0


def test_with_lambda_rescales_effective_coefficients():
    b = sf.square_parametrisation(sf.lemniscate(2, 1, 1))
    g = sf.expand_g(b)
    p = sf.homogenize(g, 1.0, 0.5, 1, 0, 0)
    q = p.with_lambda(0.25)
    assert q.lam == 0.25
    assert q.a_eff == 0.25 and q.b_eff == 0.125
    direct = sf.homogenize(g, 1.0, 0.5, 1, 0, 0, lam=0.25)
    assert q.terms == direct.terms
