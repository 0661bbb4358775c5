"""The nine acceptance criteria, each at its stated tolerance and time budget."""

import itertools
import time

import mpmath
import pytest

from cosecsum.asymptotics import (alternating_bounds, alternating_expansion_coefficients,
                                  bounds_sweep, h_coefficient, main_expansion,
                                  refined_expansion, simple_approximation, watson_expansion)
from cosecsum.direct import (alternating_cosecant_sum, cos_cosecant_sum,
                             polya_vinogradov_direct, watson_sum)
from cosecsum.identities import IdentityId, run_catalog
from cosecsum.representations import (Variant, finite_series_eval, finite_series_variants,
                                      infinite_series_eval, integral_eval_hyperbolic,
                                      integral_eval_poisson, pv_sum_series)

from fractions import Fraction


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


@pytest.mark.criterion(1, "reference values of C_n(nu) and S_n")
def test_reference_values():
    with Timer() as t:
        cases = [
            (cos_cosecant_sum(100, 7), 52.5, 53.5),
            (cos_cosecant_sum(100, 10), 30.5, 31.5),
            (cos_cosecant_sum(100, 16), 1.5, 2.5),
            (cos_cosecant_sum(300, 150), -133, -131),
            (watson_sum(300), 1112, 1114),
            (cos_cosecant_sum(300, 100), -106, -104),
            (cos_cosecant_sum(300, 50), -4e-3, -2e-3),
            (cos_cosecant_sum(300, 20), 167, 169),
            (cos_cosecant_sum(300, 10), 298, 300),
            (cos_cosecant_sum(10000, 7), 34540, 34542),
        ]
    for value, lo, hi in cases:
        assert lo < value < hi, (value, lo, hi)
    assert t.elapsed < 1


@pytest.mark.criterion(2, "simple approximation error at n=10000, nu=7")
def test_approximation_error():
    with Timer() as t:
        err = cos_cosecant_sum(10000, 7) - simple_approximation(10000, 7)
    assert -4e-4 < err < -1e-4, err
    assert t.elapsed < 1


@pytest.mark.criterion(3, "cross-method agreement for n <= 64")
def test_cross_method_agreement():
    worst = 0.0
    with Timer() as t:
        for n in range(2, 65):
            for nu in range(1, n):
                vals = {
                    "oracle": cos_cosecant_sum(n, nu),
                    "finite": finite_series_eval(n, nu),
                    "poisson": integral_eval_poisson(n, nu).value,
                    "hyperbolic": integral_eval_hyperbolic(n, nu).value,
                }
                for v in Variant:
                    vals[v.value] = finite_series_variants(n, nu, v)
                if 2 * nu != n:
                    vals["infinite"] = infinite_series_eval(n, nu).value
                for (a, x), (b, y) in itertools.combinations(vals.items(), 2):
                    rel = abs(x - y) / max(1.0, abs(x), abs(y))
                    worst = max(worst, rel)
                    assert rel < 1e-8, (n, nu, a, b, x, y)
    assert t.elapsed < 60


@pytest.mark.criterion(4, "identity catalog at n_max=50")
def test_identity_catalog():
    with Timer() as t:
        reports = run_catalog(50)
    ids = {r.id for r in reports}
    assert {IdentityId.ADV_SUM_1, IdentityId.ADV_SUM_2, IdentityId.ADV_SUM_3} <= ids
    for r in reports:
        assert r.passed and r.checks > 0, r
        assert r.worst_rel_residual < 1e-9, r
    assert t.elapsed < 60


@pytest.mark.criterion(5, "two-sided bounds for n = 4..500")
def test_bounds_containment():
    with Timer() as t:
        for n in range(4, 501):
            rows = bounds_sweep(n)
            assert len(rows) == n - 1
            for r in rows:
                assert r.contained, r
            if n % 2 == 0:
                c = alternating_cosecant_sum(n, dps=40)
                assert c in alternating_bounds(n, dps=40), n
    assert t.elapsed < 90


@pytest.mark.criterion(6, "expansion brackets and alternating coefficients")
def test_expansion_bracketing():
    with Timer() as t:
        for n in range(20, 201):
            # nu = 1 is excluded: its terms grow with the order (see README)
            grid = sorted({2, 3, n // 10, n // 6, n // 4, n // 3, n // 2} - {0, 1})
            for nu in grid:
                ref = cos_cosecant_sum(n, nu, dps=40)
                prev = None
                for N in range(2, 6):
                    br = main_expansion(n, nu, N, dps=40).bracket
                    assert ref in br, (n, nu, N)
                    if prev is not None:
                        assert br.overlaps(prev), (n, nu, N)
                    prev = br
        for n in range(10, 2001):
            assert watson_sum(n, dps=40) in watson_expansion(n, 4, dps=40).bracket, n
    # displayed coefficients of pi, pi^3, pi^5, pi^7
    assert alternating_expansion_coefficients(4) == [
        Fraction(1, 12), Fraction(-7, 1440), Fraction(31, 30240), Fraction(-2159, 4838400)]
    assert t.elapsed < 60


@pytest.mark.criterion(7, "H coefficient: three methods agree and are negative")
def test_h_coefficient_triple():
    with Timer() as t:
        for n in range(2, 61):
            for nu in range(1, n):
                for r in range(1, 6):
                    a = h_coefficient(r, n, nu, "cot_derivative").value
                    b = h_coefficient(r, n, nu, "polygamma_pair").value
                    c = h_coefficient(r, n, nu, "bernoulli_cosine").value
                    assert a < 0 and b < 0 and c < 0
                    for x, y in ((a, b), (a, c), (b, c)):
                        assert abs(x - y) <= 1e-9 * max(abs(x), abs(y)), (r, n, nu, a, b, c)
    assert t.elapsed < 30


@pytest.mark.criterion(8, "refined expansion error shrinks at least 4x per doubling")
def test_refined_trend():
    with Timer() as t:
        errs = []
        for n in (200, 400, 800, 1600, 3200):
            ref = cos_cosecant_sum(n, 10, dps=40)
            errs.append(abs(ref - refined_expansion(n, 10, dps=40).value))
    for a, b in zip(errs, errs[1:]):
        assert a >= 4 * b, errs
    assert t.elapsed < 10


@pytest.mark.criterion(9, "Polya-Vinogradov series closure at R=2000")
def test_pv_closure():
    with Timer() as t:
        for n in range(2, 41):
            for k in range(1, n):
                direct = polya_vinogradov_direct(n, k)
                assert direct in pv_sum_series(n, k, 2000).error_bracket, (n, k)
    assert t.elapsed < 30
