import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from cosecsum.core import (DomainError, Method, NonConvergenceError, PrecisionPolicy,
                           RepresentationSingularityError)
from cosecsum.direct import cos_cosecant_sum, polya_vinogradov_direct, watson_sum
from cosecsum.quadrature import QuadratureSpec, Scheme, integrate_interval
from cosecsum.representations import (Variant, finite_series_eval, finite_series_variants,
                                      four_digamma_integral, infinite_series_eval,
                                      integral_eval_hyperbolic, integral_eval_poisson,
                                      pv_sum_series)

from . import oracle


def agree(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(b))


# ------------------------------------------------------------ finite forms

def test_finite_series_examples():
    assert finite_series_eval(3, 1) == pytest.approx(-2 / math.sqrt(3), rel=1e-14)
    assert -133 < finite_series_eval(300, 150) < -131
    for nu in range(1, 30):
        assert finite_series_eval(30, nu) == pytest.approx(finite_series_eval(30, 30 - nu), abs=1e-12)


def test_finite_forms_at_watson_case():
    # the cotangent sum is empty and the sin^2 weights all vanish
    assert finite_series_eval(7, 14) == watson_sum(7)
    assert finite_series_variants(7, 7, "sin2") == pytest.approx(watson_sum(7), rel=1e-15)


@pytest.mark.parametrize("variant", list(Variant))
def test_variants_match_oracle(variant):
    for n in (2, 3, 4, 11, 40):
        for nu in range(1, n):
            ref = float(oracle.C(n, nu, 30))
            assert agree(finite_series_variants(n, nu, variant), ref, 1e-12)
    assert finite_series_variants(4, 2, "cos2") == pytest.approx(1 - 2 * math.sqrt(2), rel=1e-14)


def test_unknown_variant():
    with pytest.raises(ValueError):
        finite_series_variants(5, 1, "tan3")


# ---------------------------------------------------------- infinite series

@given(st.integers(3, 120), st.data())
@settings(max_examples=40, deadline=None)
def test_infinite_series_bracket_contains_oracle(n, data):
    nu = data.draw(st.integers(1, n - 1))
    if 2 * nu == n:
        return
    ev = infinite_series_eval(n, nu)
    assert ev.method is Method.INFINITE_SERIES
    assert ev.terms_used > 0
    assert float(oracle.C(n, nu)) in ev.error_bracket


def test_infinite_series_examples():
    assert infinite_series_eval(5, 1).value == pytest.approx(cos_cosecant_sum(5, 1), abs=1e-11)
    ev = infinite_series_eval(100, 16)
    assert 1.5 < ev.value < 2.5
    assert cos_cosecant_sum(100, 16) in ev.error_bracket


def test_infinite_series_singular_half_period():
    with pytest.raises(RepresentationSingularityError):
        infinite_series_eval(6, 3)


def test_infinite_series_term_budget():
    with pytest.raises(NonConvergenceError):
        infinite_series_eval(40, 7, PrecisionPolicy(1e-15, 1e-15, max_terms=10))


# -------------------------------------------------------------- integrals

@pytest.mark.parametrize("n, nu", [(2, 1), (3, 1), (4, 2), (9, 4), (64, 32), (64, 1), (300, 100)])
def test_integrals_match_oracle(n, nu):
    ref = float(oracle.C(n, nu))
    for ev in (integral_eval_poisson(n, nu), integral_eval_hyperbolic(n, nu),
               integral_eval_hyperbolic(n, nu, QuadratureSpec(Scheme.ADAPTIVE_INTERVAL))):
        assert agree(ev.value, ref, 1e-10)
        assert ev.error_bracket is not None and ev.terms_used > 0


def test_integral_reference_values():
    assert -106 < integral_eval_poisson(300, 100).value < -104
    assert -4e-3 < integral_eval_hyperbolic(300, 50).value < -2e-3


def test_integrals_reject_watson_case():
    with pytest.raises(DomainError):
        integral_eval_poisson(5, 0)
    with pytest.raises(DomainError):
        integral_eval_hyperbolic(5, 10)


def test_quadrature_failure_is_reported():
    spec = QuadratureSpec(Scheme.ADAPTIVE_INTERVAL, target_tol=1e-14, max_subdivisions=1)
    with pytest.raises(NonConvergenceError):
        integrate_interval(lambda x: math.sin(1 / x) / x, 1e-6, 1.0, spec)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(target_tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_subdivisions=0)


# ------------------------------------------------------ Polya-Vinogradov

def test_pv_examples():
    ev = pv_sum_series(4, 2, 50)
    assert polya_vinogradov_direct(4, 2) in ev.error_bracket
    assert 7 - 1 in pv_sum_series(7, 1, 500).error_bracket
    assert polya_vinogradov_direct(7, 3) in pv_sum_series(7, 3, 200).error_bracket


def test_pv_bracket_shrinks():
    widths = [pv_sum_series(13, 5, R).error_bracket.width for R in (10, 100, 1000)]
    assert widths[0] > widths[1] > widths[2]


def test_pv_domain():
    for k in (0, 9):
        with pytest.raises(DomainError):
            pv_sum_series(9, k, 10)
    with pytest.raises(DomainError):
        pv_sum_series(9, 2, 0)


# ------------------------------------------------------- four digammas

def _quad(alpha, beta, b):
    # overflow-free form of exp(-alpha x) ch(beta x) / ch(b x)
    f = lambda x: (math.exp((beta - alpha - b) * x) + math.exp((-beta - alpha - b) * x)) / (1 + math.exp(-2 * b * x))
    return integrate.quad(f, 0, math.inf, epsabs=1e-13, epsrel=1e-13, limit=500)[0]


def test_four_digamma_beta_zero():
    # pairs collapse to (1/2)[Psi(1) - Psi(1/2)] = ln 2
    ref = 0.5 * (float(mpmath.digamma(1)) - float(mpmath.digamma(0.5)))
    assert ref == pytest.approx(math.log(2), rel=1e-15)
    assert four_digamma_integral(1, 0, 1) == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize("alpha, beta, b", [
    (2, 1, 1), (1, 1, 1), (0.5, 0.2, 1), (3, 2.5, 1), (1, -0.7, 2), (0.1, 0.3, 0.5),
    (5, 0, 3), (0.25, 1.1, 1), (2, 3.5, 2), (1.5, 0.5, 0.25),
])
def test_four_digamma_vs_quadrature(alpha, beta, b):
    assert four_digamma_integral(alpha, beta, b) == pytest.approx(_quad(alpha, beta, b), abs=1e-10)


@given(st.floats(0.05, 5), st.floats(-3, 3), st.floats(0.2, 3))
@settings(max_examples=30, deadline=None)
def test_four_digamma_property(alpha, beta, b):
    if alpha + b - abs(beta) < 0.05:
        return
    assert four_digamma_integral(alpha, beta, b) == pytest.approx(_quad(alpha, beta, b), abs=1e-9, rel=1e-9)


def test_four_digamma_domain():
    with pytest.raises(DomainError):
        four_digamma_integral(1, 3, 1)
    with pytest.raises(DomainError):
        four_digamma_integral(1, 0, 0)
