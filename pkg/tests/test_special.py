import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosecsum import special
from cosecsum.core import PoleError
from cosecsum.special import (BernoulliCache, bernoulli_number, bernoulli_polynomial,
                              cot_derivative, cot_derivative_polynomial,
                              cot_odd_derivative_rational, digamma, digamma_rational,
                              digamma_small_series, harmonic, harmonic_exact, hurwitz_zeta,
                              log_gamma, polygamma, zeta, zeta_even)

mp = mpmath.mp


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# ------------------------------------------------------------ Bernoulli

@pytest.mark.parametrize("m, expected", [
    (0, Fraction(1)), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (3, Fraction(0)),
    (4, Fraction(-1, 30)), (12, Fraction(-691, 2730)), (20, Fraction(-174611, 330)),
])
def test_bernoulli_known(m, expected):
    assert bernoulli_number(m) == expected


def test_bernoulli_matches_mpmath_to_60():
    with mp.workdps(60):
        for m in range(0, 61):
            b = bernoulli_number(m)
            assert isinstance(b, Fraction)
            ref = mpmath.bernoulli(m)
            assert abs(mpmath.mpf(b.numerator) / b.denominator - ref) <= mpmath.mpf(10) ** -50 * max(1, abs(ref))


def test_bernoulli_odd_vanish_and_cache_stable():
    cache = BernoulliCache()
    first = [cache[m] for m in range(10)]
    cache[40]
    assert [cache[m] for m in range(10)] == first
    assert all(cache[2 * k + 1] == 0 for k in range(1, 20))
    assert cache.max_order >= 40


def test_bernoulli_negative_rejected():
    with pytest.raises(ValueError):
        bernoulli_number(-1)


@pytest.mark.parametrize("m, x, expected", [(0, 0.3, 1.0), (1, 0.5, 0.0), (2, 0.0, 1 / 6)])
def test_bernoulli_polynomial_examples(m, x, expected):
    assert bernoulli_polynomial(m, x) == pytest.approx(expected, abs=1e-15)


@given(st.integers(0, 16), st.fractions(0, 1, max_denominator=50))
def test_bernoulli_polynomial_vs_mpmath(m, x):
    exact = bernoulli_polynomial(m, x, exact=True)
    assert isinstance(exact, Fraction)
    with mp.workdps(40):
        ref = mpmath.bernpoly(m, mpmath.mpf(x.numerator) / x.denominator)
        assert abs(mpmath.mpf(exact.numerator) / exact.denominator - ref) < mpmath.mpf(10) ** -30
    assert bernoulli_polynomial(m, float(x)) == pytest.approx(float(exact), abs=1e-13)


@given(st.integers(1, 14), st.fractions(0, 1, max_denominator=30))
def test_bernoulli_polynomial_reflection(m, x):
    # B_m(1 - x) = (-1)^m B_m(x)
    assert bernoulli_polynomial(m, 1 - x, exact=True) == (-1) ** m * bernoulli_polynomial(m, x, exact=True)


# ------------------------------------------------------------- harmonic

def test_harmonic_small():
    assert harmonic(0) == 0
    assert harmonic(1) == 1
    assert harmonic_exact(3) == Fraction(11, 6)
    assert harmonic(3) == pytest.approx(11 / 6, rel=1e-16)


@pytest.mark.parametrize("k", [10, 255, 256, 257, 1000, 12345])
def test_harmonic_vs_mpmath(k):
    assert rel(harmonic(k), float(mpmath.harmonic(k))) < 4e-16


# -------------------------------------------------------------- digamma

@given(st.floats(0.01, 300))
def test_digamma_vs_mpmath(x):
    with mp.workdps(30):
        ref = float(mpmath.digamma(x))
    assert abs(digamma(x) - ref) <= 4e-15 * max(1.0, abs(ref))


def test_digamma_array_and_poles():
    xs = np.array([0.25, 1.0, 7.5, 40.0])
    out = digamma(xs)
    assert out.shape == xs.shape
    assert out[1] == pytest.approx(-special.EULER_GAMMA, rel=1e-15)
    for bad in (0.0, -1.0, -3.0):
        with pytest.raises(PoleError):
            digamma(bad)


@pytest.mark.parametrize("n", [2, 3, 5, 12, 64, 301])
def test_digamma_rational_gauss(n):
    # O(n) log-sine terms, so the rounding allowance grows with n
    tol = max(1e-14, 4 * n * 2.2e-16)
    with mp.workdps(30):
        for l in range(1, n):
            ref = float(mpmath.digamma(mpmath.mpf(l) / n))
            assert abs(digamma_rational(l, n) - ref) <= tol * max(1.0, abs(ref))


def test_digamma_rational_quarter():
    assert digamma_rational(1, 4) == pytest.approx(-special.EULER_GAMMA - math.pi / 2 - 3 * math.log(2), rel=1e-15)


def test_digamma_small_series_examples():
    value, br = digamma_small_series(1.0, 3)
    assert value == pytest.approx(-1 - special.EULER_GAMMA + math.pi ** 2 / 6, rel=1e-14)
    assert br.width == pytest.approx(zeta(3), rel=1e-14)
    value, br = digamma_small_series(0.5, 20)
    assert -special.EULER_GAMMA - 2 * math.log(2) in br


@pytest.mark.parametrize("x", [0.05, 0.2, 0.45])
def test_digamma_small_series_brackets(x):
    prev = None
    for M in range(3, 12):
        value, br = digamma_small_series(x, M)
        assert digamma(x) in br
        if prev is not None:
            assert br.overlaps(prev)
        prev = br


# ----------------------------------------------------- zeta / polygamma

@pytest.mark.parametrize("s, x", [(2, 0.5), (3, 1.0), (4, 0.1), (9, 50.0), (7, 0.37), (12, 3.0)])
def test_hurwitz_vs_mpmath(s, x):
    with mp.workdps(30):
        ref = float(mpmath.zeta(s, x))
    assert rel(hurwitz_zeta(s, x), ref) < 1e-14


@given(st.integers(1, 6), st.floats(0.05, 40))
@settings(max_examples=60)
def test_polygamma_vs_mpmath(m, x):
    with mp.workdps(30):
        ref = float(mpmath.polygamma(m, x))
    assert rel(polygamma(m, x), ref) < 1e-13


def test_zeta_values():
    assert zeta_even(1) == pytest.approx(math.pi ** 2 / 6, rel=1e-16)
    assert zeta_even(2) == pytest.approx(math.pi ** 4 / 90, rel=1e-16)
    assert zeta(3) == pytest.approx(1.2020569031595942, rel=1e-15)
    for s in range(2, 30):
        assert rel(zeta(s), float(mpmath.zeta(s))) < 1e-15


@given(st.floats(0.01, 500))
def test_log_gamma_vs_lgamma(x):
    assert abs(log_gamma(x) - math.lgamma(x)) <= 2e-15 * max(1.0, abs(math.lgamma(x)))


# --------------------------------------------------- cotangent derivatives

def test_cot_derivative_polynomials():
    # d/dphi cot = -(1 + cot^2); d^2 = 2 cot + 2 cot^3
    assert tuple(cot_derivative_polynomial(0)) == (0, 1)
    assert tuple(cot_derivative_polynomial(1)) == (-1, 0, -1)
    assert tuple(cot_derivative_polynomial(2)) == (0, 2, 0, 2)


@pytest.mark.parametrize("r", [1, 2, 3, 5])
@pytest.mark.parametrize("phi", [0.1, 0.7, 1.3, 2.9])
def test_cot_derivative_vs_mpmath(r, phi):
    # odd derivative of order 2r - 1
    with mp.workdps(40):
        ref = float(mpmath.diff(mpmath.cot, phi, 2 * r - 1))
    assert rel(cot_derivative(r, phi), ref) < 1e-12


def test_cot_derivative_pole():
    with pytest.raises(PoleError):
        cot_derivative(2, 0.0)
    with pytest.raises(PoleError):
        cot_derivative(1, math.pi)


@pytest.mark.parametrize("r, nu, n", [(1, 1, 4), (3, 7, 60), (5, 2, 9), (9, 1, 50)])
def test_cot_odd_derivative_rational(r, nu, n):
    with mp.workdps(50):
        ref = mpmath.diff(mpmath.cot, mpmath.pi * nu / n, 2 * r - 1)
    got = cot_odd_derivative_rational(r, nu, n, dps=30)
    assert abs(got - ref) <= 1e-25 * abs(ref)
