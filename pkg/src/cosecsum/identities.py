"""Numerical verification of the identity catalog for C_n(nu).

Each identity is swept over a parameter grid and summarized in an
:class:`IdentityReport`.  Residuals are scaled by
``max(|lhs| + |rhs|, mass)`` where ``mass`` is the sum of absolute values
of the terms on the summed side.  Where an oscillating factor makes terms
vanish (sine and cotangent nulls) the mass uses the size of the other
factor instead, since that is what sets the rounding error.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from .core import DEFAULT_POLICY, CosecSumError, DomainError, PrecisionPolicy
from .direct import alternating_cosecant_sum, cos_cosecant_sum, watson_sum
from .special import EULER_GAMMA, digamma, digamma_rational, log_gamma

__all__ = [
    "IdentityId",
    "IdentityReport",
    "UnknownIdentityError",
    "GridTooLargeError",
    "check_identity",
    "run_catalog",
    "cosecant_power_product",
    "MAX_N",
]

MAX_N = 2000
MAX_GRID = 20_000_000


class UnknownIdentityError(CosecSumError, KeyError):
    pass


class GridTooLargeError(DomainError):
    pass


class IdentityId(str, enum.Enum):
    SYMMETRY = "SYMMETRY"
    BOUND_CHAIN = "BOUND_CHAIN"
    RECURRENCE = "RECURRENCE"
    SHIFT = "SHIFT"
    DUPLICATION = "DUPLICATION"
    DIFFERENCE = "DIFFERENCE"
    MOMENT0 = "MOMENT0"
    MOMENT2 = "MOMENT2"
    COS_PROJECTION = "COS_PROJECTION"
    SIN_PROJECTION = "SIN_PROJECTION"
    CTG_NULL = "CTG_NULL"
    FIRST_MOMENT = "FIRST_MOMENT"
    LOGSIN_SUM = "LOGSIN_SUM"
    LOGGAMMA_SUM = "LOGGAMMA_SUM"
    DIGAMMA_WEIGHT = "DIGAMMA_WEIGHT"
    ADV_SUM_1 = "ADV_SUM_1"
    ADV_SUM_2 = "ADV_SUM_2"
    ADV_SUM_3 = "ADV_SUM_3"
    SINE_NULL = "SINE_NULL"
    GAUSS_DIGAMMA = "GAUSS_DIGAMMA"
    CSC2_CLOSED = "CSC2_CLOSED"
    ORTHOGONALITY = "ORTHOGONALITY"

    @property
    def description(self) -> str:
        return _CATALOG[self][0]

    @property
    def param_domain(self) -> str:
        return _CATALOG[self][1]


@dataclass
class IdentityReport:
    id: IdentityId
    swept: str
    worst_abs_residual: float = 0.0
    worst_rel_residual: float = 0.0
    worst_case_params: Tuple = ()
    passed: bool = True
    checks: int = 0
    error: Optional[str] = None

    @property
    def vacuous(self) -> bool:
        return self.checks == 0 and self.error is None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["id"] = self.id.value
        d["worst_case_params"] = list(self.worst_case_params)
        d["vacuous"] = self.vacuous
        return d


class _Check(NamedTuple):
    params: Tuple
    lhs: float
    rhs: float
    mass: float
    kind: str = "eq"          # "eq", "le" (lhs <= rhs) or "lt" (lhs < rhs)


# ------------------------------------------------------------ shared data

class _Tables:
    """Per-n values reused by many identities; built once per n."""

    def __init__(self, n: int):
        self.n = n
        self.S = watson_sum(n)
        self.C = [self.S] + [cos_cosecant_sum(n, v) for v in range(1, n)]
        self.csc = [0.0] + [1.0 / math.sin(math.pi * v / n) for v in range(1, n)]
        self.psi = [0.0] + [digamma(v / n) for v in range(1, n)]
        self.lgam = [0.0] + [log_gamma(v / n) for v in range(1, n)]
        self.lnsin = [0.0] + [math.log(math.sin(math.pi * v / n)) for v in range(1, n)]
        self.abs_c = math.fsum(abs(c) for c in self.C[1:])

    def c(self, v: int) -> float:
        return self.C[v % self.n]


_tables = lru_cache(maxsize=128)(_Tables)


def _cot_half(odd: int, n: int) -> float:
    # cot(odd * pi / (2n)) with the argument reduced by its exact residue
    return 1.0 / math.tan(math.pi * (odd % (2 * n)) / (2 * n))


def _fsum_mass(xs) -> Tuple[float, float]:
    xs = list(xs)
    return math.fsum(xs), math.fsum(abs(x) for x in xs)


def cosecant_power_product(n: int) -> float:
    """ln prod_{nu=1}^{n-1} csc(pi nu / n)^csc(pi nu / n), as a compensated sum."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    terms = []
    for v in range(1, n):
        c = 1.0 / math.sin(math.pi * v / n)
        terms.append(c * math.log(c))
    return math.fsum(terms)


# ------------------------------------------------------------- generators

def _symmetry(n):
    t = _tables(n)
    for v in range(1, n):
        yield _Check((n, v), t.C[v], t.C[n - v], t.S)
    if n % 2:
        yield _Check((n, "alternating"), alternating_cosecant_sum(n, force=True), 0.0, t.S)


def _bound_chain(n):
    t = _tables(n)
    tol_mass = t.S
    for v in range(1, n):
        yield _Check((n, v, "C<=S"), t.C[v], t.S, tol_mass, "le")
    if n % 2 == 0:
        alt = alternating_cosecant_sum(n)
        for v in range(1, n):
            yield _Check((n, v, "-Calt<=C"), -alt, t.C[v], tol_mass, "le")
        if n >= 4:
            yield _Check((n, "0<Calt"), 0.0, alt, tol_mass, "lt")
            yield _Check((n, "Calt<S"), alt, t.S, tol_mass, "lt")


def _recurrence(n):
    t = _tables(n)
    for v in range(0, n):
        ct = _cot_half(2 * v + 1, n)
        yield _Check((n, v), t.c(v + 1), t.C[v] - 2 * ct, abs(t.C[v]) + 2 * abs(ct) + t.S)


def _shift(n):
    t = _tables(n)
    cots = {j: _cot_half(j, n) for j in range(1, 2 * n, 2)}
    for v in range(1, n):
        for k in range(1, n - v):
            s1, m1 = _fsum_mass(cots[(2 * v + 2 * l - 1) % (2 * n)] for l in range(1, k + 1))
            yield _Check((n, v, k, "nu-form"), t.c(v + k), t.C[v] - 2 * s1, t.S + 2 * m1)
            s2, m2 = _fsum_mass(cots[(2 * k + 2 * l - 1) % (2 * n)] for l in range(1, v + 1))
            yield _Check((n, v, k, "kappa-form"), t.c(v + k), t.C[k] - 2 * s2, t.S + 2 * m2)


def _duplication(n):
    t = _tables(n)
    for v in range(1, n):
        s, m = _fsum_mass(_cot_half(2 * v + 2 * l - 1, n) for l in range(1, v + 1))
        yield _Check((n, v), t.c(2 * v), t.C[v] - 2 * s, t.S + 2 * m)


def _difference(n):
    t = _tables(n)
    for v in range(2, n):
        for k in range(1, v):
            s, m = _fsum_mass(_cot_half(2 * l - 1, n) for l in range(k + 1, v + 1))
            yield _Check((n, v, k), t.C[v] - t.C[k], -2 * s, 2 * t.S + 2 * m)


def _moment0(n):
    t = _tables(n)
    s, m = _fsum_mass(t.C[1:])
    yield _Check((n,), s, -t.S, m)


def _moment2(n):
    t = _tables(n)
    s, m = _fsum_mass(c * c for c in t.C[1:])
    closed = n * (n * n - 1) / 3.0
    yield _Check((n,), s, closed - t.S * t.S, m + closed + t.S * t.S)


def _cos_projection(n):
    t = _tables(n)
    for k in range(1, n):
        s, _ = _fsum_mass(t.C[v] * math.cos(2 * math.pi * ((v * k) % n) / n) for v in range(1, n))
        yield _Check((n, k), s, n * t.csc[k] - t.S, t.abs_c + n * t.csc[k] + t.S)


def _sin_projection(n):
    t = _tables(n)
    for k in range(1, n):
        s, _ = _fsum_mass(t.C[v] * math.sin(2 * math.pi * ((v * k) % n) / n) for v in range(1, n))
        yield _Check((n, k), s, 0.0, t.abs_c)


def _ctg_null(n):
    t = _tables(n)
    cots = [1.0 / math.tan(math.pi * v / n) for v in range(1, n)]
    s, _ = _fsum_mass(c * ct for c, ct in zip(t.C[1:], cots))
    mass = math.fsum(abs(c) * (1 + abs(ct)) for c, ct in zip(t.C[1:], cots))
    yield _Check((n,), s, 0.0, mass)


def _first_moment(n):
    t = _tables(n)
    s, m = _fsum_mass(v * t.C[v] for v in range(1, n))
    yield _Check((n,), s, -n * t.S / 2, m + n * t.S / 2)


def _psi_csc(t) -> Tuple[float, float]:
    return _fsum_mass(t.psi[v] * t.csc[v] for v in range(1, t.n))


def _logsin_sum(n):
    t = _tables(n)
    lhs, m1 = _fsum_mass(t.C[v] * t.lnsin[v] for v in range(1, n))
    pc, m2 = _psi_csc(t)
    a = (EULER_GAMMA + math.log(2 * n)) * t.S
    yield _Check((n,), lhs, a + pc, m1 + m2 + abs(a))


def _loggamma_sum(n):
    t = _tables(n)
    lhs, m1 = _fsum_mass(t.C[v] * t.lgam[v] for v in range(1, n))
    pc, m2 = _psi_csc(t)
    a = -(EULER_GAMMA + math.log(2 * math.pi * n)) * t.S / 2
    yield _Check((n,), lhs, a - pc / 2, m1 + m2 / 2 + abs(a))


def _digamma_weight(n):
    t = _tables(n)
    lhs, m1 = _fsum_mass(t.C[v] * t.psi[v] for v in range(1, n))
    cl, m2 = _fsum_mass(t.csc[v] * -t.lnsin[v] for v in range(1, n))
    a = (EULER_GAMMA + n * math.log(2)) * t.S
    yield _Check((n,), lhs, a - n * cl, m1 + n * m2 + abs(a))


def _adv_sum_1(n):
    t = _tables(n)
    lhs, m1 = _psi_csc(t)
    s, m2 = _fsum_mass(t.C[v] * math.log(t.csc[v]) for v in range(1, n))
    a = -(EULER_GAMMA + math.log(2 * n)) * t.S
    yield _Check((n,), lhs, a - s, m1 + m2 + abs(a))


def _adv_sum_2(n):
    t = _tables(n)
    lhs, m1 = _psi_csc(t)
    s, m2 = _fsum_mass(t.lgam[v] * t.C[v] for v in range(1, n))
    a = -(EULER_GAMMA + math.log(2 * math.pi * n)) * t.S
    yield _Check((n,), lhs, a - 2 * s, m1 + 2 * m2 + abs(a))


def _adv_sum_3(n):
    t = _tables(n)
    lhs, m1 = _fsum_mass(t.psi[v] * t.C[v] for v in range(1, n))
    prod = cosecant_power_product(n)
    a = (EULER_GAMMA + n * math.log(2)) * t.S
    mass = m1 + abs(a) + n * math.fsum(abs(c * math.log(c)) for c in t.csc[1:])
    yield _Check((n,), lhs, a - n * prod, mass)


def _sine_null(n):
    for v in range(1, n):
        s, _ = _fsum_mass(math.sin(2 * math.pi * ((v * l) % n) / n) / math.sin(math.pi * l / n)
                          for l in range(1, n))
        yield _Check((n, v), s, 0.0, watson_sum(n))


def _gauss_digamma(n):
    for l in range(1, n):
        a, b = digamma_rational(l, n), digamma(l / n)
        yield _Check((n, l), a, b, abs(a) + abs(b) + math.log(2 * n) + n)


def _csc2_closed(n):
    s, m = _fsum_mass(1.0 / math.sin(math.pi * l / n) ** 2 for l in range(1, n))
    yield _Check((n,), s, (n * n - 1) / 3.0, m)


def _orthogonality(n):
    idx = np.arange(n)
    cos = np.cos(2 * np.pi * (np.outer(idx, idx) % n) / n)   # [k, nu]
    gram = cos[1:] @ cos[1:].T                              # k, l in 1..n-1
    for k in range(1, n):
        for l in range(1, n):
            rhs = (n / 2) * ((k == l) + (k == n - l))
            yield _Check((n, k, l), float(gram[k - 1, l - 1]), rhs, float(n))


_CATALOG: Dict[IdentityId, Tuple[str, str, Callable[[int], Iterator[_Check]], Callable[[int], int]]] = {
    IdentityId.SYMMETRY: ("C_n(nu) = C_n(n-nu); alternating sum vanishes for odd n",
                          "1 <= nu <= n-1", _symmetry, lambda n: n),
    IdentityId.BOUND_CHAIN: ("-C_2m <= C_2m(nu), C_n(nu) <= S_n, 0 < C_2m < S_2m",
                             "1 <= nu <= n-1; strict part for even n >= 4", _bound_chain, lambda n: 2 * n),
    IdentityId.RECURRENCE: ("C_n(nu+1) = C_n(nu) - 2 cot((2nu+1) pi / 2n)",
                            "0 <= nu <= n-1", _recurrence, lambda n: n),
    IdentityId.SHIFT: ("C_n(nu+k) via nu-form and kappa-form cotangent sums",
                       "1 <= nu, 1 <= kappa <= n-1-nu", _shift, lambda n: n ** 3),
    IdentityId.DUPLICATION: ("C_n(2nu) = C_n(nu) - 2 sum cot((2nu+2l-1) pi / 2n)",
                             "1 <= nu <= n-1", _duplication, lambda n: n * n),
    IdentityId.DIFFERENCE: ("C_n(nu) - C_n(k) = -2 sum_{l=k+1}^{nu} cot((2l-1) pi / 2n)",
                            "1 <= kappa < nu <= n-1", _difference, lambda n: n ** 3),
    IdentityId.MOMENT0: ("sum_nu C_n(nu) = -S_n", "n >= 2", _moment0, lambda n: n),
    IdentityId.MOMENT2: ("sum_nu C_n(nu)^2 = n(n^2-1)/3 - S_n^2", "n >= 2", _moment2, lambda n: n),
    IdentityId.COS_PROJECTION: ("sum_nu C_n(nu) cos(2 pi nu k / n) = n csc(pi k / n) - S_n",
                                "1 <= k <= n-1", _cos_projection, lambda n: n * n),
    IdentityId.SIN_PROJECTION: ("sum_nu C_n(nu) sin(2 pi nu k / n) = 0",
                                "1 <= k <= n-1", _sin_projection, lambda n: n * n),
    IdentityId.CTG_NULL: ("sum_nu C_n(nu) cot(pi nu / n) = 0", "n >= 2", _ctg_null, lambda n: n),
    IdentityId.FIRST_MOMENT: ("sum_nu nu C_n(nu) = -n S_n / 2", "n >= 2", _first_moment, lambda n: n),
    IdentityId.LOGSIN_SUM: ("sum C_n(nu) ln sin(pi nu/n) = (gamma + ln 2n) S_n + sum Psi(r/n) csc(pi r/n)",
                            "n >= 2", _logsin_sum, lambda n: n),
    IdentityId.LOGGAMMA_SUM: ("sum C_n(nu) lnGamma(nu/n) = -(gamma + ln 2 pi n) S_n / 2 - (1/2) sum Psi csc",
                              "n >= 2", _loggamma_sum, lambda n: n),
    IdentityId.DIGAMMA_WEIGHT: ("sum C_n(nu) Psi(nu/n) = (gamma + n ln 2) S_n - n sum csc ln csc",
                                "n >= 2", _digamma_weight, lambda n: n),
    IdentityId.ADV_SUM_1: ("sum Psi(nu/n) csc = -(gamma + ln 2n) S_n - sum C_n(nu) ln csc",
                           "n >= 2", _adv_sum_1, lambda n: n),
    IdentityId.ADV_SUM_2: ("sum Psi(nu/n) csc = -(gamma + ln 2 pi n) S_n - 2 sum lnGamma(nu/n) C_n(nu)",
                           "n >= 2", _adv_sum_2, lambda n: n),
    IdentityId.ADV_SUM_3: ("sum Psi(nu/n) C_n(nu) = (gamma + n ln 2) S_n - n ln prod csc^csc",
                           "n >= 2", _adv_sum_3, lambda n: n),
    IdentityId.SINE_NULL: ("sum_l sin(2 pi nu l / n) csc(pi l / n) = 0",
                           "1 <= nu <= n-1", _sine_null, lambda n: n * n),
    IdentityId.GAUSS_DIGAMMA: ("Gauss finite formula for Psi(l/n) against the Stirling digamma",
                               "1 <= l <= n-1", _gauss_digamma, lambda n: n * n),
    IdentityId.CSC2_CLOSED: ("sum_l csc^2(pi l / n) = (n^2 - 1)/3", "n >= 2", _csc2_closed, lambda n: n),
    IdentityId.ORTHOGONALITY: ("sum_nu cos(2 pi nu k/n) cos(2 pi nu l/n) = (n/2)(d_kl + d_k,n-l)",
                               "1 <= k, l <= n-1", _orthogonality, lambda n: n ** 3),
}


# ---------------------------------------------------------------- checks

def _resolve(identity) -> IdentityId:
    try:
        return IdentityId(identity.value if isinstance(identity, IdentityId) else str(identity).upper())
    except ValueError:
        raise UnknownIdentityError(f"unknown identity {identity!r}") from None


def _n_values(n_range) -> List[int]:
    if isinstance(n_range, int):
        ns = list(range(2, n_range + 1))
    else:
        ns = sorted(set(int(n) for n in n_range))
    if ns and ns[0] < 2:
        raise DomainError(f"n must be >= 2, got {ns[0]}")
    return ns


def _describe(ns: List[int], domain: str) -> str:
    if not ns:
        return "empty"
    contiguous = ns == list(range(ns[0], ns[-1] + 1))
    span = f"n={ns[0]}..{ns[-1]}" if contiguous else "n in {" + ",".join(map(str, ns)) + "}"
    return f"{span}; {domain}"


def check_identity(identity, n_range, policy: PrecisionPolicy = DEFAULT_POLICY) -> IdentityReport:
    """Sweep one identity over ``n_range`` (an n_max or an iterable of n).

    A check passes when |lhs - rhs| <= abs_tol + rel_tol * scale.  Non-strict
    inequalities pass when lhs <= rhs + that same allowance; strict ones
    must hold exactly as computed.
    """
    ident = _resolve(identity)
    _, domain, gen, cost = _CATALOG[ident]
    ns = _n_values(n_range)
    if ns and ns[-1] > MAX_N:
        raise GridTooLargeError(f"n={ns[-1]} exceeds the limit {MAX_N}")
    if sum(cost(n) for n in ns) > MAX_GRID:
        raise GridTooLargeError(f"{ident.value} grid over n={ns[0]}..{ns[-1]} is too large")
    report = IdentityReport(ident, _describe(ns, domain))
    for n in ns:
        for chk in gen(n):
            report.checks += 1
            scale = max(abs(chk.lhs) + abs(chk.rhs), chk.mass)
            allow = policy.abs_tol + policy.rel_tol * scale
            if chk.kind == "eq":
                resid = abs(chk.lhs - chk.rhs)
                ok = resid <= allow
            else:
                resid = max(0.0, chk.lhs - chk.rhs)
                ok = chk.lhs < chk.rhs if chk.kind == "lt" else resid <= allow
            rel = resid / scale if scale > 0 else resid
            if not ok:
                report.passed = False
            if rel > report.worst_rel_residual or (not ok and report.worst_case_params == ()):
                report.worst_rel_residual = rel
                report.worst_case_params = chk.params
            report.worst_abs_residual = max(report.worst_abs_residual, resid)
    return report


def run_catalog(n_max: int, policy: PrecisionPolicy = DEFAULT_POLICY,
                workers: int = 1) -> List[IdentityReport]:
    """Every catalog identity over n = 2..n_max, in catalog order.

    A failure inside one identity is recorded in its report and does not
    stop the others.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    ids = list(IdentityId)

    def one(ident):
        try:
            return check_identity(ident, n_max, policy)
        except CosecSumError as exc:
            return IdentityReport(ident, f"n=2..{n_max}", passed=False, error=str(exc))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, ids))
    return [one(i) for i in ids]
