"""Bernoulli numbers, harmonic numbers, digamma/polygamma, log-gamma, even
zeta values and odd derivatives of the cotangent.

Exact quantities are :class:`fractions.Fraction`; everything else is a
float unless an ``mpmath`` precision is requested explicitly.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from . import _mp
from .core import DomainError, PoleError, RemainderBracket

__all__ = [
    "EULER_GAMMA",
    "BernoulliCache",
    "bernoulli_number",
    "bernoulli_polynomial_coefficients",
    "bernoulli_polynomial",
    "harmonic",
    "harmonic_exact",
    "digamma",
    "digamma_rational",
    "digamma_small_series",
    "hurwitz_zeta",
    "polygamma",
    "log_gamma",
    "zeta",
    "zeta_even",
    "cot_derivative_polynomial",
    "cot_derivative",
    "cot_odd_derivative_rational",
]

EULER_GAMMA = 0.57721566490153286060651209008240243

# Upward-recurrence threshold and Stirling order; the first neglected
# term at x = 8 is B_24 / (24 * 8**24) < 1e-18.
_SHIFT = 8.0
_STIRLING_N = 12

_HARMONIC_EXACT_MAX = 256


class BernoulliCache:
    """Memoized B_m (convention B_1 = -1/2) from the exact recurrence

        sum_{j=0}^{m} C(m+1, j) B_j = 0.

    Entries are appended under a lock and never rewritten.
    """

    def __init__(self):
        self.table: List[Fraction] = [Fraction(1), Fraction(-1, 2)]
        self._lock = threading.Lock()

    @property
    def max_order(self) -> int:
        return len(self.table) - 1

    def __getitem__(self, m: int) -> Fraction:
        if m < 0:
            raise DomainError(f"Bernoulli index must be >= 0, got {m}")
        table = self.table
        if m < len(table):
            return table[m]
        with self._lock:
            while len(self.table) <= m:
                k = len(self.table)
                if k % 2 == 1:
                    self.table.append(Fraction(0))
                    continue
                s = Fraction(0)
                for j, b in enumerate(self.table):
                    if b:
                        s += comb(k + 1, j) * b
                self.table.append(-s / (k + 1))
        return self.table[m]


_BERNOULLI = BernoulliCache()


def bernoulli_number(m: int) -> Fraction:
    """Exact Bernoulli number B_m with B_1 = -1/2.

    >>> bernoulli_number(12)
    Fraction(-691, 2730)
    """
    return _BERNOULLI[int(m)]


@lru_cache(maxsize=None)
def bernoulli_polynomial_coefficients(m: int) -> Tuple[Fraction, ...]:
    """Exact coefficients of B_m(x), lowest degree first."""
    if m < 0:
        raise DomainError(f"degree must be >= 0, got {m}")
    return tuple(comb(m, k) * bernoulli_number(m - k) for k in range(m + 1))


def bernoulli_polynomial(m: int, x, exact: bool = False):
    """B_m(x) = sum_j C(m, j) B_j x^(m-j).

    With ``exact=True`` and a rational ``x`` the result is a Fraction;
    otherwise the exact coefficients are evaluated in floating point.
    """
    coeffs = bernoulli_polynomial_coefficients(m)
    if exact:
        x = Fraction(x)
        acc = Fraction(0)
    else:
        x = float(x)
        coeffs = [float(c) for c in coeffs]
        acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def harmonic_exact(k: int) -> Fraction:
    if k < 0:
        raise DomainError(f"harmonic index must be >= 0, got {k}")
    return _harmonic_exact(int(k))


@lru_cache(maxsize=1024)
def _harmonic_exact(k: int) -> Fraction:
    if k == 0:
        return Fraction(0)
    return _harmonic_exact(k - 1) + Fraction(1, k) if k <= 64 else sum(
        (Fraction(1, j) for j in range(1, k + 1)), Fraction(0))


def harmonic(k: int) -> float:
    """H_k; exact rational for small k, an exactly rounded float sum beyond."""
    if k < 0:
        raise DomainError(f"harmonic index must be >= 0, got {k}")
    if k <= _HARMONIC_EXACT_MAX:
        return float(harmonic_exact(k))
    return math.fsum(1.0 / j for j in range(1, int(k) + 1))


# --------------------------------------------------------------- digamma

# digamma tail coefficients B_2r / (2r)
_PSI_COEF = tuple(float(bernoulli_number(2 * r) / (2 * r)) for r in range(1, _STIRLING_N))


def _stirling_digamma(x: float) -> Tuple[float, float]:
    """Stirling series for x large; returns (value, first neglected term)."""
    t = 1.0 / (x * x)
    acc = 0.0
    for c in reversed(_PSI_COEF):
        acc = (acc + c) * t
    nxt = -float(bernoulli_number(2 * _STIRLING_N) / (2 * _STIRLING_N)) * t ** _STIRLING_N
    return math.log(x) - 0.5 / x - acc, nxt


def _digamma_scalar(x: float) -> float:
    if not x > 0:
        if x == math.floor(x):
            raise PoleError(f"digamma has a pole at x={x}")
        raise DomainError(f"digamma requires x > 0, got {x}")
    shift = 0.0
    while x < _SHIFT:
        shift += 1.0 / x
        x += 1.0
    value, _ = _stirling_digamma(x)
    return value - shift


def _digamma_array(x: np.ndarray) -> np.ndarray:
    x = np.array(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("digamma requires x > 0")
    shift = np.zeros_like(x)
    for _ in range(int(_SHIFT)):
        small = x < _SHIFT
        if not small.any():
            break
        shift[small] += 1.0 / x[small]
        x[small] += 1.0
    t = 1.0 / (x * x)
    acc = np.zeros_like(x)
    for c in reversed(_PSI_COEF):
        acc = (acc + c) * t
    return np.log(x) - 0.5 / x - acc - shift


def digamma(x):
    """Psi(x) for x > 0, scalar or array.

    Shifts upward with Psi(x) = Psi(x+1) - 1/x until x >= 8, then sums the
    Stirling series to order 2*11.
    """
    if np.ndim(x):
        return _digamma_array(x)
    return _digamma_scalar(float(x))


def digamma_rational(l: int, n: int) -> float:
    """Psi(l/n) for 1 <= l <= n-1 from Gauss' finite formula.

    The log-sine sum is folded over the symmetric pairs (v, n-v); the
    v = n/2 term vanishes since ln sin(pi/2) = 0.
    """
    if n < 2 or not 1 <= l <= n - 1:
        raise DomainError(f"digamma_rational needs 1 <= l <= n-1, got l={l}, n={n}")
    terms = []
    for v in range(1, (n - 1) // 2 + 1):
        k = (v * l) % n
        terms.append(2.0 * math.cos(2.0 * math.pi * k / n) * math.log(math.sin(math.pi * v / n)))
    terms.append(-EULER_GAMMA)
    terms.append(-math.log(2 * n))
    # reflect so the cotangent argument stays in (0, pi/2]
    if 2 * l > n:
        terms.append(0.5 * math.pi / math.tan(math.pi * (n - l) / n))
    else:
        terms.append(-0.5 * math.pi / math.tan(math.pi * l / n))
    return math.fsum(terms)


def digamma_small_series(x: float, M: int) -> Tuple[float, RemainderBracket]:
    """Psi(x) = -1/x - gamma + sum_{m=2}^{M-1} (-1)^m x^(m-1) zeta(m) + R.

    R lies between 0 and the first neglected term for every x > 0, so the
    returned bracket always contains Psi(x).
    """
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x}")
    if M < 3:
        raise DomainError(f"M must be >= 3, got {M}")
    terms = [-1.0 / x, -EULER_GAMMA]
    for m in range(2, M):
        terms.append((-1) ** m * x ** (m - 1) * zeta(m))
    value = math.fsum(terms)
    nxt = (-1) ** M * x ** (M - 1) * zeta(M)
    return value, RemainderBracket.from_partial(value, nxt)


# ----------------------------------------------------- zeta and polygamma

def hurwitz_zeta(s: float, x: float) -> float:
    """zeta(s, x) = sum_{l>=0} (x+l)^(-s) for s > 1, x > 0.

    Direct sum up to a = x + L >= s + 12, then Euler-Maclaurin for the tail.
    """
    if not s > 1:
        raise DomainError(f"hurwitz_zeta requires s > 1, got {s}")
    if not x > 0:
        raise DomainError(f"hurwitz_zeta requires x > 0, got {x}")
    s = float(s)
    L = max(0, math.ceil(s + 12.0 - x))
    head = [(x + k) ** -s for k in range(L)]
    a = x + L
    tail = [a ** (1.0 - s) / (s - 1.0), 0.5 * a ** -s]
    rising = s                      # s (s+1) ... (s+2j-2)
    power = a ** (-s - 1.0)         # a^(-s-2j+1)
    fact = 2.0                      # (2j)!
    for j in range(1, 30):
        term = float(bernoulli_number(2 * j)) / fact * rising * power
        tail.append(term)
        if abs(term) < 1e-18 * tail[0]:
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= a * a
        fact *= (2 * j + 1) * (2 * j + 2)
    return math.fsum(head + tail)


def polygamma(m: int, x: float) -> float:
    """Psi_m(x) = (-1)^(m+1) m! zeta(m+1, x) for m >= 1."""
    if m < 1:
        raise DomainError(f"polygamma order must be >= 1, got {m}")
    if not x > 0:
        raise DomainError(f"polygamma requires x > 0, got {x}")
    return (-1) ** (m + 1) * math.factorial(m) * hurwitz_zeta(m + 1, x)


def zeta_even(r: int) -> float:
    """zeta(2r) = (-1)^(r+1) (2 pi)^(2r) B_2r / (2 (2r)!), rounded once
    from 30 digits."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    return _zeta_even_cached(r)


@lru_cache(maxsize=None)
def _zeta_even_cached(r: int) -> float:
    coeff = (-1) ** (r + 1) * bernoulli_number(2 * r) * 2 ** (2 * r - 1) / math.factorial(2 * r)
    ctx = _mp.context(30)
    return float(ctx.mpf(coeff.numerator) / coeff.denominator * ctx.pi ** (2 * r))


def zeta(s: int) -> float:
    """Riemann zeta at an integer s >= 2."""
    if int(s) != s or s < 2:
        raise DomainError(f"zeta is provided for integers s >= 2, got {s}")
    s = int(s)
    if s % 2 == 0:
        return zeta_even(s // 2)
    return hurwitz_zeta(s, 1.0)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0 (delegates to math.lgamma)."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


# ------------------------------------------------- cotangent derivatives

_COT_LOCK = threading.Lock()
_COT_POLYS: List[Tuple[int, ...]] = [(0, 1)]


def cot_derivative_polynomial(k: int) -> Tuple[int, ...]:
    """Integer coefficients (lowest degree first) of P_k with
    d^k/dphi^k cot(phi) = P_k(cot phi).

    P_0(y) = y and P_{k+1}(y) = -(1 + y^2) P_k'(y).
    """
    if k < 0:
        raise DomainError(f"derivative order must be >= 0, got {k}")
    if k < len(_COT_POLYS):
        return _COT_POLYS[k]
    with _COT_LOCK:
        while len(_COT_POLYS) <= k:
            p = _COT_POLYS[-1]
            dp = [i * c for i, c in enumerate(p)][1:]
            out = [0] * (len(dp) + 2)
            for i, c in enumerate(dp):
                out[i] -= c
                out[i + 2] -= c
            _COT_POLYS.append(tuple(out))
    return _COT_POLYS[k]


def _horner(coeffs: Sequence[int], y):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def cot_derivative(r: int, phi: float) -> float:
    """The (2r-1)-th derivative of cot at phi."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    s = math.sin(phi)
    if s == 0.0 or abs(math.remainder(phi, math.pi)) <= 4 * math.ulp(max(1.0, abs(phi))):
        raise PoleError(f"cot has a pole at phi={phi}")
    return float(_horner(cot_derivative_polynomial(2 * r - 1), math.cos(phi) / s))


def cot_odd_derivative_rational(r: int, nu: int, n: int, dps: int | None = None):
    """(2r-1)-th derivative of cot at pi*nu/n, with exact pole detection.

    With ``dps`` the value is an mpmath number at that many digits.
    """
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    k = nu % n
    if k == 0:
        raise PoleError(f"cot has a pole at pi*{nu}/{n}")
    coeffs = cot_derivative_polynomial(2 * r - 1)
    if dps is None:
        return float(_horner(coeffs, 1.0 / math.tan(math.pi * k / n)))
    ctx = _mp.context(dps)
    return _horner(coeffs, ctx.cot(ctx.pi * k / n))
