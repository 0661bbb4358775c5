"""Large-n expansions of C_n(nu), C_n and S_n, two-sided bounds and the
closed-form approximations.

Every function accepts ``dps``: when given, the arithmetic is done in a
private mpmath context at that many digits and mpmath numbers come back.
That matters near ``nu = n/2`` where bracket widths shrink below a double
ulp of the value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional

import numpy as np

from . import _mp
from .core import (DomainError, Evaluation, ExcludedPointError, Method,
                   OptimalTruncationError, ParityError, PoleError,
                   RemainderBracket, SumQuery, as_query)
from .direct import cos_cosecant_sum, cos_cosecant_sums
from .special import (EULER_GAMMA, bernoulli_number, bernoulli_polynomial,
                      cot_odd_derivative_rational, harmonic_exact, polygamma)

__all__ = [
    "HMethod",
    "HCoefficient",
    "ExpansionResult",
    "h_coefficient",
    "main_expansion_term",
    "main_expansion",
    "rough_asymptotic",
    "alternating_expansion_coefficients",
    "alternating_expansion",
    "watson_expansion_coefficients",
    "watson_expansion",
    "bounds",
    "alternating_bounds",
    "simple_approximation",
    "f_nu",
    "refined_expansion",
    "BoundsRow",
    "bounds_sweep",
]


class HMethod(str, enum.Enum):
    COT_DERIVATIVE = "cot_derivative"
    POLYGAMMA_PAIR = "polygamma_pair"
    BERNOULLI_COSINE = "bernoulli_cosine"


@dataclass(frozen=True)
class HCoefficient:
    r: int
    value: float
    method: HMethod

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if not self.value < 0:
            raise ValueError(f"H coefficient must be negative, got {self.value}")


@dataclass(frozen=True)
class ExpansionResult:
    """A truncated sign-alternating expansion.

    The true value lies in ``bracket`` = [partial_sum, partial_sum + next_term]
    (ordered), which is the content of the remainder statements.
    """

    partial_sum: float
    next_term: float
    bracket: RemainderBracket
    orders_used: int

    @classmethod
    def from_terms(cls, partial, next_term, orders_used):
        return cls(partial, next_term, RemainderBracket.from_partial(partial, next_term),
                   orders_used)


def _ctx(dps):
    return None if dps is None else _mp.context(dps)


def _log_lead(n: int, k: int, ctx=None):
    """-(2n/pi) ln(2 sin(pi k / n))."""
    if ctx is None:
        return -(2.0 * n / math.pi) * math.log(2.0 * math.sin(math.pi * k / n))
    return -(2 * n / ctx.pi) * ctx.log(2 * ctx.sin(ctx.pi * k / n))


# ------------------------------------------------------------ H coefficient

@lru_cache(maxsize=64)
def _bernoulli_values(r: int, n: int) -> tuple:
    # B_2r(s/n) exactly, s = 1..n
    return tuple(bernoulli_polynomial(2 * r, Fraction(s, n), exact=True) for s in range(1, n + 1))


@lru_cache(maxsize=64)
def _cos_table(n: int, dps: int) -> tuple:
    ctx = _mp.context(dps)
    return tuple(ctx.cos(2 * ctx.pi * k / n) for k in range(n))


def _h_bernoulli_cosine(r: int, n: int, k: int, dps: int):
    # (-1)^r (2n)^(2r-1)/r sum_s B_2r(s/n) cos(2 pi s nu / n); the sum cancels
    # by roughly (2n)^(2r-1), hence the working precision chosen by callers.
    ctx = _mp.context(dps)
    cos = _cos_table(n, dps)
    total = ctx.mpf(0)
    for s, b in enumerate(_bernoulli_values(r, n), start=1):
        total += ctx.mpf(b.numerator) / b.denominator * cos[(s * k) % n]
    return (-1) ** r * ctx.mpf(2 * n) ** (2 * r - 1) / r * total


def h_coefficient(r: int, n: int, nu: int, method="cot_derivative",
                  dps: Optional[int] = None) -> HCoefficient:
    """The (2r-1)-th derivative of cot at pi nu / n, by one of three routes.

    ``cot_derivative`` evaluates the exact integer polynomial in cot;
    ``polygamma_pair`` uses -(Psi_{2r-1}(x) + Psi_{2r-1}(1-x)) / pi^(2r);
    ``bernoulli_cosine`` sums Bernoulli polynomials against cosines in
    extended precision.
    """
    method = HMethod(method)
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    q = SumQuery(n, nu)
    if q.is_watson_case:
        raise PoleError(f"cot has a pole at pi*{nu}/{n}")
    k = q.nu_mod
    if method is HMethod.COT_DERIVATIVE:
        value = cot_odd_derivative_rational(r, k, n, dps=dps)
    elif method is HMethod.POLYGAMMA_PAIR:
        if dps is None:
            x = k / n
            value = -(polygamma(2 * r - 1, x) + polygamma(2 * r - 1, (n - k) / n)) / math.pi ** (2 * r)
        else:
            ctx = _mp.context(dps)
            x = ctx.mpf(k) / n
            value = -(ctx.psi(2 * r - 1, x) + ctx.psi(2 * r - 1, 1 - x)) / ctx.pi ** (2 * r)
    else:
        work = 20 + math.ceil(2 * r * math.log10(2 * n + 1)) + (dps or 17)
        value = _h_bernoulli_cosine(r, n, k, work)
        value = float(value) if dps is None else _mp.context(dps).mpf(value)
    return HCoefficient(r, value, method)


# ----------------------------------------------------------- main expansion

@lru_cache(maxsize=None)
def _main_coefficient(r: int) -> Fraction:
    # 2 (1 - 2^(1-2r)) B_2r / (2r)!
    return 2 * (1 - Fraction(2, 4 ** r)) * bernoulli_number(2 * r) / math.factorial(2 * r)


def main_expansion_term(r: int, n: int, nu: int, dps: Optional[int] = None):
    """The r-th correction 2(1-2^(1-2r)) pi^(2r-1) B_2r H_{2r-1} / ((2r)! n^(2r-1))."""
    h = h_coefficient(r, n, nu, dps=dps).value
    c = _main_coefficient(r)
    if dps is None:
        return float(c) * math.pi ** (2 * r - 1) * h / float(n) ** (2 * r - 1)
    ctx = _mp.context(dps)
    return ctx.mpf(c.numerator) / c.denominator * ctx.pi ** (2 * r - 1) * h / ctx.mpf(n) ** (2 * r - 1)


def _check_truncation(terms, what: str):
    if len(terms) >= 2 and abs(terms[-1]) > abs(terms[-2]):
        raise OptimalTruncationError(
            f"{what}: term {len(terms)} exceeds term {len(terms) - 1} in magnitude; "
            f"the expansion is past its smallest term")


def main_expansion(n, nu: Optional[int] = None, N: int = 4, *,
                   dps: Optional[int] = None) -> ExpansionResult:
    """Leading log term plus corrections r = 1..N-1; the r = N term brackets
    the remainder.

    Refuses N once the terms start growing (optimal truncation).
    """
    q = as_query(n, nu)
    k = q.require_interior()
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    ctx = _ctx(dps)
    terms = [main_expansion_term(r, q.n, k, dps=dps) for r in range(1, N + 1)]
    _check_truncation(terms, f"main expansion at n={q.n}, nu={k}")
    lead = _log_lead(q.n, k, ctx)
    partial = (math.fsum([lead] + terms[:-1]) if ctx is None
               else ctx.fsum([lead] + terms[:-1]))
    return ExpansionResult.from_terms(partial, terms[-1], N - 1)


def rough_asymptotic(n, nu: Optional[int] = None) -> float:
    """-(2n/pi) ln(2 sin(pi nu / n)); refused at nu = n/6 and 5n/6 where it vanishes."""
    q = as_query(n, nu)
    k = q.require_interior()
    if 6 * k == q.n or 6 * k == 5 * q.n:
        raise ExcludedPointError(
            f"nu={k} is n/6 or 5n/6 for n={q.n}; the leading term vanishes there")
    return _log_lead(q.n, k)


# ------------------------------------------------- C_n and S_n expansions

def alternating_expansion_coefficients(N: int) -> List[Fraction]:
    """Exact c_r with C_n ~ 2n ln2/pi + sum_r c_r pi^(2r-1) / n^(2r-1).

    >>> alternating_expansion_coefficients(3)[:2]
    [Fraction(1, 12), Fraction(-7, 1440)]
    """
    out = []
    for r in range(1, N + 1):
        b = bernoulli_number(2 * r)
        out.append(Fraction(2 * (-1) ** (r + 1) * (2 ** (2 * r - 1) - 1) * (4 ** r - 1))
                   * b * b / (r * math.factorial(2 * r)))
    return out


def watson_expansion_coefficients(N: int) -> List[Fraction]:
    """Exact w_r with S_n ~ (2n/pi)(ln(2n/pi) + gamma) + sum_r w_r pi^(2r-1) / n^(2r-1)."""
    out = []
    for r in range(1, N + 1):
        b = bernoulli_number(2 * r)
        out.append(Fraction(-2 * (-1) ** (r + 1) * (2 ** (2 * r - 1) - 1))
                   * b * b / (r * math.factorial(2 * r)))
    return out


def _power_series_terms(coeffs, n: int, ctx):
    if ctx is None:
        return [float(c) * (math.pi / n) ** (2 * r - 1) for r, c in enumerate(coeffs, start=1)]
    x = ctx.pi / n
    return [ctx.mpf(c.numerator) / c.denominator * x ** (2 * r - 1)
            for r, c in enumerate(coeffs, start=1)]


def alternating_expansion(n: int, N: int = 4, *, dps: Optional[int] = None) -> ExpansionResult:
    """Expansion of the alternating sum for even n, next term as bracket."""
    SumQuery(n)
    if n % 2:
        raise ParityError(f"n={n} is odd; the alternating sum is exactly 0")
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    ctx = _ctx(dps)
    terms = _power_series_terms(alternating_expansion_coefficients(N), n, ctx)
    _check_truncation(terms, f"alternating expansion at n={n}")
    if ctx is None:
        lead = 2 * n * math.log(2) / math.pi
        partial = math.fsum([lead] + terms[:-1])
    else:
        lead = 2 * n * ctx.ln2 / ctx.pi
        partial = ctx.fsum([lead] + terms[:-1])
    return ExpansionResult.from_terms(partial, terms[-1], N - 1)


def watson_expansion(n: int, N: int = 4, *, dps: Optional[int] = None) -> ExpansionResult:
    """Expansion of S_n with squared Bernoulli numbers, next term as bracket."""
    SumQuery(n)
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    ctx = _ctx(dps)
    terms = _power_series_terms(watson_expansion_coefficients(N), n, ctx)
    _check_truncation(terms, f"Watson expansion at n={n}")
    if ctx is None:
        lead = (2 * n / math.pi) * (math.log(2 * n / math.pi) + EULER_GAMMA)
        partial = math.fsum([lead] + terms[:-1])
    else:
        lead = (2 * n / ctx.pi) * (ctx.log(2 * n / ctx.pi) + ctx.euler)
        partial = ctx.fsum([lead] + terms[:-1])
    return ExpansionResult.from_terms(partial, terms[-1], N - 1)


# ------------------------------------------------------------------ bounds

def _ab(n: int, k: int, ctx=None):
    """A(n, nu) and B(n, nu) - A(n, nu)."""
    if ctx is None:
        s, c, pi = math.sin(math.pi * k / n), math.cos(math.pi * k / n), math.pi
    else:
        pi = ctx.pi
        s, c = ctx.sin(pi * k / n), ctx.cos(pi * k / n)
    csc2 = 1 / (s * s)
    a = -(pi / (12 * n)) * csc2
    gap = (7 * pi ** 3 / (1440 * n ** 3)) * (1 + 2 * c * c) * csc2 * csc2
    return a, gap


def bounds(n, nu: Optional[int] = None, *, dps: Optional[int] = None) -> RemainderBracket:
    """Lower and upper bounds: log term plus A(n, nu), log term plus B(n, nu)."""
    q = as_query(n, nu)
    k = q.require_interior()
    ctx = _ctx(dps)
    lead = _log_lead(q.n, k, ctx)
    a, gap = _ab(q.n, k, ctx)
    return RemainderBracket(lead + a, lead + a + gap)


def alternating_bounds(n: int, *, dps: Optional[int] = None) -> RemainderBracket:
    """2n ln2/pi + pi/(12n) - 7pi^3/(1440 n^3) and 2n ln2/pi + pi/(12n), for even n."""
    SumQuery(n)
    if n % 2:
        raise ParityError(f"n={n} is odd; the alternating sum is exactly 0")
    ctx = _ctx(dps)
    if ctx is None:
        pi, ln2 = math.pi, math.log(2)
    else:
        pi, ln2 = ctx.pi, ctx.ln2
    upper = 2 * n * ln2 / pi + pi / (12 * n)
    return RemainderBracket(upper - 7 * pi ** 3 / (1440 * n ** 3), upper)


def simple_approximation(n, nu: Optional[int] = None) -> float:
    """Log term, the csc^2 correction and 7n/(480 pi nu^4).

    Its error does not vanish as n grows at fixed nu.
    """
    q = as_query(n, nu)
    k = q.require_interior()
    a, _ = _ab(q.n, k)
    return math.fsum([_log_lead(q.n, k), a, 7.0 * q.n / (480.0 * math.pi * k ** 4)])


# ---------------------------------------------------------- refined form

def f_nu(nu: int, dps: Optional[int] = None):
    """f(nu) = -(1/pi) {4H_2nu - 2H_nu - 2 ln nu - 4 ln 2 - 2 gamma - 1/(12 nu^2)}.

    The rational part is formed exactly; it nearly cancels the logarithms,
    so the remaining subtraction is done in extended precision.
    """
    if int(nu) != nu or nu < 1:
        raise DomainError(f"nu must be an integer >= 1, got {nu}")
    nu = int(nu)
    ctx = _mp.context(dps or 30)
    if nu <= 4096:
        rational = 4 * harmonic_exact(2 * nu) - 2 * harmonic_exact(nu) - Fraction(1, 12 * nu * nu)
        rat = ctx.mpf(rational.numerator) / rational.denominator
    else:
        rat = 4 * ctx.harmonic(2 * nu) - 2 * ctx.harmonic(nu) - ctx.mpf(1) / (12 * nu * nu)
    value = -(rat - 2 * ctx.log(nu) - 4 * ctx.ln2 - 2 * ctx.euler) / ctx.pi
    return float(value) if dps is None else value


def refined_expansion(n, nu: Optional[int] = None, *, dps: Optional[int] = None) -> Evaluation:
    """Log term, csc^2 correction, n f(nu) and 7 pi^3/(21600 n^3).

    ``nu`` is used as given in [1, n-1] since f depends on nu itself, not
    only on its residue.
    """
    q = as_query(n, nu)
    k = q.require_interior()
    n = q.n
    ctx = _ctx(dps)
    a, _ = _ab(n, k, ctx)
    if ctx is None:
        parts = [_log_lead(n, k), a, n * f_nu(k), 7 * math.pi ** 3 / (21600.0 * n ** 3)]
        value = math.fsum(parts)
    else:
        parts = [_log_lead(n, k, ctx), a, n * f_nu(k, dps=dps), 7 * ctx.pi ** 3 / (21600 * ctx.mpf(n) ** 3)]
        value = ctx.fsum(parts)
    return Evaluation(value, Method.ASYMPTOTIC_REFINED)


# ------------------------------------------------------------ bound sweeps

@dataclass(frozen=True)
class BoundsRow:
    n: int
    nu: int
    lower: float
    oracle: float
    upper: float
    contained: bool
    extended: bool          # True when the row was settled in mpmath


_LD_EPS = float(np.finfo(np.longdouble).eps)


def bounds_sweep(n: int, nus=None, dps: int = 40) -> List[BoundsRow]:
    """Check the two-sided bounds against the direct sum for every nu.

    Everything is first done in long double; rows whose distance to either
    bound is within a rounding allowance are redone in mpmath at ``dps``.
    """
    SumQuery(n)
    ld = np.longdouble
    oracle = cos_cosecant_sums(n, dtype=ld)
    ks = np.arange(1, n) if nus is None else np.array(sorted(set(int(v) % n for v in nus)))
    if (ks == 0).any():
        raise DomainError("nu = 0 (mod n) has no bounds")
    pi = ld("3.14159265358979323846264338327950288")
    x = pi * ks.astype(ld) / ld(n)
    s, c = np.sin(x), np.cos(x)
    lead = -(2 * ld(n) / pi) * np.log(2 * s)
    csc2 = 1 / (s * s)
    lower = lead - (pi / (12 * ld(n))) * csc2
    upper = lower + (7 * pi ** 3 / (1440 * ld(n) ** 3)) * (1 + 2 * c * c) * csc2 * csc2
    o = oracle[ks]
    # Measured long double oracle error is about eps * n ln n; the factor
    # 16 leaves a wide margin before a row is trusted without mpmath.
    slack = 16 * _LD_EPS * (2 * n * math.log(n + 1) + np.abs(lead).astype(float) + n)
    margin = np.minimum(o - lower, upper - o).astype(float)
    rows = []
    for i, k in enumerate(ks.tolist()):
        if margin[i] > slack[i]:
            rows.append(BoundsRow(n, k, float(lower[i]), float(o[i]), float(upper[i]), True, False))
            continue
        b = bounds(n, k, dps=dps)
        ov = cos_cosecant_sum(n, k, dps=dps)
        rows.append(BoundsRow(n, k, float(b.lower), float(ov), float(b.upper),
                              bool(b.strictly_contains(ov)), True))
    return rows
