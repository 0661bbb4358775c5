"""Independent evaluations of C_n(nu): finite cotangent forms, the infinite
digamma series, and the two integral representations.  These exist to be
cross-checked against :mod:`cosecsum.direct`.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache
from typing import Optional

import numpy as np

from .core import (DEFAULT_POLICY, DomainError, Evaluation, Method,
                   NonConvergenceError, PrecisionPolicy,
                   RepresentationSingularityError, RemainderBracket, SumQuery,
                   as_query)
from .direct import cos_cosecant_sum, cotangent_partial_sum, watson_sum
from .quadrature import QuadratureSpec, Scheme, integrate_interval
from .special import bernoulli_number, digamma

__all__ = [
    "Variant",
    "finite_series_eval",
    "finite_series_variants",
    "infinite_series_eval",
    "integral_eval_poisson",
    "integral_eval_hyperbolic",
    "pv_sum_series",
    "four_digamma_integral",
]

_EPS = np.finfo(float).eps


class Variant(str, enum.Enum):
    SIN2 = "sin2"
    COS2 = "cos2"
    CTG_PRODUCT = "ctg_product"


def finite_series_eval(n, nu: Optional[int] = None) -> float:
    """C_n(nu) = S_n - 2 sum_{l=1}^{nu} cot((2l-1) pi / (2n)), nu reduced mod n."""
    q = as_query(n, nu)
    return math.fsum([watson_sum(q.n), -2.0 * cotangent_partial_sum(q.n, q.nu_mod)])


def finite_series_variants(n, nu: Optional[int] = None, variant="sin2") -> float:
    """The three alternative finite forms, selected by ``variant``."""
    q = as_query(n, nu)
    variant = Variant(variant)
    n, v = q.n, q.nu_mod
    pi = math.pi
    terms = []
    if variant is Variant.SIN2:
        terms.append(watson_sum(n))
        for l in range(1, n):
            s = math.sin(pi * ((v * l) % n) / n)
            terms.append(-2.0 * s * s / math.sin(pi * l / n))
    elif variant is Variant.COS2:
        terms.append(-watson_sum(n))
        for l in range(1, n):
            c = math.cos(pi * ((v * l) % n) / n)
            terms.append(2.0 * c * c / math.sin(pi * l / n))
    else:
        terms += [watson_sum(n), -1.0 / math.tan(pi / (2 * n)),
                  1.0 / math.tan(pi * (2 * v + 1) / (2 * n))]
        for l in range(1, n):
            a = math.sin(pi * ((l * v) % (2 * n)) / n)
            b = math.sin(pi * ((l * (v + 1)) % (2 * n)) / n)
            terms.append(-2.0 * a * b / math.tan(pi * l / n))
    return math.fsum(terms)


# ------------------------------------------------------- infinite series
#
# The raw series converges like sum l^-2 sin(theta l), far too slowly to
# sum as written.  Its coefficients D(l) behave like -n/(l^2-1) at large l,
# and sum sin(theta l)/(l^2-1) is elementary, so that part is summed in
# closed form (it absorbs the logarithm) and only E(l) = D(l) + n/(l^2-1),
# which decays like n^2/l^3, is summed numerically.

_ASYMPTOTIC_FROM = 16          # use the Stirling form of E(l) once l > 16 n
_E_TERMS = 11


def _e_exact(l: np.ndarray, n: int) -> np.ndarray:
    lm, lp = l - 1.0, l + 1.0
    d = (digamma(lm / (2 * n)) - digamma(lp / (2 * n))
         - digamma(lm / n) + digamma(lp / n))
    return d + n / (lm * lp)


@lru_cache(maxsize=None)
def _e_coefficients(n: int):
    # B_2r (2^2r - 1) n^2r / (2r), as floats
    return tuple(float(bernoulli_number(2 * r) * (4 ** r - 1) / (2 * r)) * float(n) ** (2 * r)
                 for r in range(1, _E_TERMS + 1))


def _e_asymptotic(l: np.ndarray, n: int) -> np.ndarray:
    """E(l) from the Stirling tail of the four digammas, for l > 16 n.

    (l-1)^-2r - (l+1)^-2r is formed as (v^2r - u^2r)/(uv)^2r with
    u = l-1, v = l+1 and v^2r - u^2r = (v^2 - u^2) sum_j v^2j u^(2r-2-2j),
    so nothing cancels.
    """
    l = np.asarray(l, dtype=float)
    a = 1.0 / (l - 1.0) ** 2
    b = 1.0 / (l + 1.0) ** 2
    out = np.zeros_like(l)
    # (a^r - b^r) = (a - b) * sum_{j<r} a^j b^(r-1-j); a - b = 4l a b
    diff = 4.0 * l * a * b
    geo = np.ones_like(l)          # sum_{j<r} a^j b^(r-1-j)
    apow = np.ones_like(l)
    for c in _e_coefficients(n):
        out -= c * diff * geo
        apow = apow * a
        geo = geo * b + apow
    return out


def _e_values(l: np.ndarray, n: int) -> np.ndarray:
    l = np.asarray(l, dtype=float)
    out = np.empty_like(l)
    small = l <= _ASYMPTOTIC_FROM * n
    if small.any():
        out[small] = _e_exact(l[small], n)
    if (~small).any():
        out[~small] = _e_asymptotic(l[~small], n)
    return out


@lru_cache(maxsize=256)
def _residue_sums(n: int, L: int):
    """P_j = sum of E(l) over 2 <= l <= L with l = j (mod n), j = 0..n-1.

    Returns (P, sum |E(l)|).
    """
    P = np.zeros(n)
    mass = 0.0
    block = 1 << 20
    for start in range(2, L + 1, block):
        l = np.arange(start, min(L, start + block - 1) + 1, dtype=np.int64)
        e = _e_values(l.astype(float), n)
        mass += float(np.abs(e).sum())
        np.add.at(P, l % n, e)
    P.setflags(write=False)
    return P, mass


def _e_scalar(l: int, n: int) -> float:
    return float(_e_values(np.array([float(l)]), n)[0])


def infinite_series_eval(n, nu: Optional[int] = None,
                         policy: PrecisionPolicy = DEFAULT_POLICY) -> Evaluation:
    """C_n(nu) from the infinite digamma series.

    Terms are taken in blocks of ``L = 32 n 2^k`` until an Abel-summation
    bound on the tail, ``|E(L+1)| / sin(theta/2)`` scaled by the prefactor,
    drops below the policy target.  The returned bracket covers that tail
    plus a rounding allowance.
    """
    q = as_query(n, nu)
    v = q.require_interior()
    n = q.n
    if q.is_half_period:
        raise RepresentationSingularityError(
            f"the series needs csc(2 pi nu / n), which has a pole at n={n}, nu={v}")
    sin_t = math.sin(2 * math.pi * v / n)
    prefactor = 2.0 / (math.pi * abs(sin_t))
    sin_half = math.sin(math.pi * v / n)
    base = [n / (2 * math.pi), -(2.0 / math.pi) * (digamma(2.0 / n) - digamma(1.0 / n))]

    L = 32 * n
    while True:
        if L > policy.max_terms:
            raise NonConvergenceError(
                f"infinite series for n={n}, nu={v} needs more than max_terms={policy.max_terms}")
        P, mass = _residue_sums(n, L)
        sines = np.sin(2 * np.pi * ((v * np.arange(n)) % n) / n)
        series = math.fsum(P * sines)
        value = math.fsum(base + [-(2.0 / math.pi) * series / sin_t])
        tail = prefactor * abs(_e_scalar(L + 1, n)) / sin_half
        if tail <= policy.target(value):
            break
        L *= 2
    rounding = 64 * _EPS * (n + abs(value) + prefactor * (mass + abs(series)))
    bracket = RemainderBracket.around(value, tail + rounding)
    return Evaluation(value, Method.INFINITE_SERIES, terms_used=L - 1, error_bracket=bracket)


# -------------------------------------------------------------- integrals

def _quad_eval(f, a, b, spec, method, points=None, scale=1.0, offset=0.0):
    val, err, neval = integrate_interval(f, a, b, spec, points=points)
    value = offset + scale * val
    half = abs(scale) * err + 64 * _EPS * (abs(value) + abs(offset))
    return Evaluation(value, method, terms_used=neval,
                      error_bracket=RemainderBracket.around(value, half))


def integral_eval_poisson(n, nu: Optional[int] = None,
                          spec: QuadratureSpec = QuadratureSpec(Scheme.ADAPTIVE_INTERVAL)) -> Evaluation:
    """C_n(nu) from the Poisson-kernel integral over [0, 1]."""
    q = as_query(n, nu)
    v = q.require_interior()
    n = q.n
    theta = 2 * math.pi * v / n
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    two_s2 = 2 * math.sin(theta / 2) ** 2

    # The numerator written as (1-x)(1-x^(n-1)) - (1+x^n) 2 sin^2(theta/2)
    # avoids cancellation near x = 1.
    def f(x):
        xn1 = x ** (n - 1)
        xn = xn1 * x
        num = (1 - x) * (1 - xn1) - (1 + xn) * two_s2
        den = (1 + xn) * ((x - cos_t) ** 2 + sin_t * sin_t)
        return num / den

    points = [cos_t] if 0 < cos_t < 1 else None
    return _quad_eval(f, 0.0, 1.0, spec, Method.INTEGRAL_POISSON, points=points,
                      scale=2 * n / math.pi)


def integral_eval_hyperbolic(n, nu: Optional[int] = None,
                             spec: QuadratureSpec = QuadratureSpec()) -> Evaluation:
    """C_n(nu) = (n - 2nu) cot(theta) - (n/pi) * integral over [0, inf).

    The semi_infinite_decay scheme integrates in u = exp(-x) over (0, 1];
    adaptive_interval integrates over x directly.  At 2nu = n the boundary
    term is its limiting value -n/pi (the elementary integral of
    1/(ch x - cos phi) equals 1 at phi = pi).
    """
    q = as_query(n, nu)
    v = q.require_interior()
    n = q.n
    theta = 2 * math.pi * v / n
    s2 = 4 * math.sin(theta / 2) ** 2
    boundary = -n / math.pi if 2 * v == n else (n - 2 * v) / math.tan(theta)

    def g(u):
        # ch(x(n/2-1)) / (ch(xn/2) (ch x - cos theta)) dx with u = e^-x
        un = u ** n
        return 2 * u * (1 + u ** (n - 2)) / ((1 + un) * ((1 - u) ** 2 + u * s2))

    if spec.scheme is Scheme.SEMI_INFINITE_DECAY:
        return _quad_eval(g, 0.0, 1.0, spec, Method.INTEGRAL_HYPERBOLIC,
                          scale=-n / math.pi, offset=boundary)

    def h(x):
        u = math.exp(-x)
        return g(u) * u

    return _quad_eval(h, 0.0, math.inf, spec, Method.INTEGRAL_HYPERBOLIC,
                      scale=-n / math.pi, offset=boundary)


# ------------------------------------------------------ Polya-Vinogradov

def pv_sum_series(n: int, k: int, R: int) -> Evaluation:
    """f(n, k) from the Fourier series of |sin|, truncated after R terms.

    |C_n| <= S_n bounds the tail by S_n (4/pi) sum_{r>R} 1/(4r^2-1)
    = 2 S_n / (pi (2R+1)).
    """
    SumQuery(n)
    if not 1 <= k <= n - 1:
        raise DomainError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    if R < 1:
        raise DomainError(f"R must be >= 1, got {R}")
    s_n = watson_sum(n)
    cache = {}
    terms = [2 * s_n / math.pi]
    for r in range(1, R + 1):
        j = (r * k) % n
        c = cache.get(j)
        if c is None:
            c = cache[j] = cos_cosecant_sum(n, j)
        terms.append(-4.0 * c / (math.pi * (4 * r * r - 1)))
    value = math.fsum(terms)
    half = 2 * s_n / (math.pi * (2 * R + 1)) + 64 * _EPS * s_n
    return Evaluation(value, Method.FINITE_SERIES, terms_used=R,
                      error_bracket=RemainderBracket.around(value, half))


def four_digamma_integral(alpha: float, beta: float, b: float) -> float:
    """integral_0^inf exp(-alpha x) ch(beta x) / ch(b x) dx via four digammas.

    The integrand is even in beta, so |beta| enters the convergence test.
    """
    if not b > 0:
        raise DomainError(f"b must be > 0, got {b}")
    beta = abs(beta)
    if not alpha + b - beta > 0:
        raise DomainError(f"integral diverges: alpha + b - |beta| = {alpha + b - beta} <= 0")
    p = (alpha + beta) / (4 * b)
    m = (alpha - beta) / (4 * b)
    return (digamma(0.75 + p) - digamma(0.25 + m) + digamma(0.75 + m) - digamma(0.25 + p)) / (4 * b)
