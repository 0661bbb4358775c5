import json
import math

import mpmath
import pytest

from cosecsum.core import DomainError, PrecisionPolicy
from cosecsum.identities import (GridTooLargeError, IdentityId, IdentityReport,
                                 UnknownIdentityError, check_identity, cosecant_power_product,
                                 run_catalog)

from . import oracle


def test_catalog_all_pass_small():
    reports = run_catalog(20)
    assert [r.id for r in reports] == list(IdentityId)
    for r in reports:
        assert r.passed, r
        assert r.checks > 0 and not r.vacuous
        assert r.worst_rel_residual < 1e-12


def test_catalog_vacuous_at_two():
    by_id = {r.id: r for r in run_catalog(2)}
    assert all(r.passed for r in by_id.values())
    assert by_id[IdentityId.SHIFT].vacuous


def test_parallel_matches_serial():
    a = [r.to_dict() for r in run_catalog(12)]
    b = [r.to_dict() for r in run_catalog(12, workers=4)]
    assert a == b


def test_report_serializes():
    d = check_identity("symmetry", 10).to_dict()
    assert d["id"] == "SYMMETRY"
    json.dumps(d)


def test_descriptions_present():
    for ident in IdentityId:
        assert ident.description and ident.param_domain


def test_tight_policy_detects_rounding():
    # with essentially zero tolerance, rounding residuals must register as failures
    policy = PrecisionPolicy(abs_tol=1e-300, rel_tol=1e-300)
    assert not check_identity(IdentityId.ADV_SUM_3, 30, policy).passed


def test_errors():
    with pytest.raises(UnknownIdentityError):
        check_identity("NOT_AN_IDENTITY", 5)
    with pytest.raises(GridTooLargeError):
        check_identity(IdentityId.SHIFT, 5000)
    with pytest.raises(DomainError):
        run_catalog(1)


def _mp_tables(n):
    C = [oracle.C(n, v) for v in range(n)]
    csc = [None] + [1 / mpmath.sinpi(mpmath.mpf(v) / n) for v in range(1, n)]
    psi = [None] + [mpmath.digamma(mpmath.mpf(v) / n) for v in range(1, n)]
    return C, csc, psi


@pytest.mark.parametrize("n", [3, 8, 25])
def test_advanced_formulae_independent(n):
    # checked directly in mpmath, without the library's tables
    with mpmath.workdps(40):
        C, csc, psi = _mp_tables(n)
        S = C[0]
        g = mpmath.euler
        lhs = mpmath.fsum(psi[v] * csc[v] for v in range(1, n))
        rhs1 = -(g + mpmath.log(2 * n)) * S - mpmath.fsum(C[v] * mpmath.log(csc[v]) for v in range(1, n))
        rhs2 = -(g + mpmath.log(2 * mpmath.pi * n)) * S - 2 * mpmath.fsum(
            mpmath.loggamma(mpmath.mpf(v) / n) * C[v] for v in range(1, n))
        assert abs(lhs - rhs1) < 1e-30 * abs(lhs)
        assert abs(lhs - rhs2) < 1e-30 * abs(lhs)
        lhs3 = mpmath.fsum(psi[v] * C[v] for v in range(1, n))
        prod = mpmath.fsum(csc[v] * mpmath.log(csc[v]) for v in range(1, n))
        rhs3 = (g + n * mpmath.ln2) * S - n * prod
        assert abs(lhs3 - rhs3) < 1e-30 * max(1, abs(lhs3))
        assert cosecant_power_product(n) == pytest.approx(float(prod), rel=1e-14, abs=1e-14)


def test_cosecant_power_product_small():
    assert cosecant_power_product(2) == 0.0
    assert cosecant_power_product(4) == pytest.approx(2 * math.sqrt(2) * math.log(math.sqrt(2)), rel=1e-15)
