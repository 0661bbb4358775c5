"""Direct summation of the finite cosecant sums and their relatives.

Angles are always formed from exact integer residues, e.g. ``2*pi*k/n``
with ``k = (nu*l) % n``, so large nu costs no accuracy.  Symmetric terms
l and n-l are paired and everything is accumulated with ``math.fsum``.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from . import _mp
from .core import (DEFAULT_POLICY, ConsistencyError, DomainError, PoleError,
                   PrecisionPolicy, SumQuery, as_query)

__all__ = [
    "watson_sum",
    "cos_cosecant_sum",
    "cos_cosecant_sums",
    "alternating_cosecant_sum",
    "csc_squared_sum",
    "cotangent_partial_sum",
    "odd_sine_sum",
    "dirichlet_cos_sum",
    "dirichlet_sin_sum",
    "polya_vinogradov_direct",
]

_PI_LD = np.longdouble("3.14159265358979323846264338327950288")


def _csc_pairs(n: int):
    """Yield (l, weight) over half of 1..n-1 with the symmetric weights."""
    for l in range(1, (n - 1) // 2 + 1):
        yield l, 2
    if n % 2 == 0:
        yield n // 2, 1


def _mp_sum(n: int, nu: int, dps: int, alternating: bool = False):
    ctx = _mp.context(dps)
    pi = ctx.pi
    total = ctx.mpf(0)
    for l, w in _csc_pairs(n):
        c = ctx.cos(2 * pi * ((nu * l) % n) / n) if nu else 1
        if alternating:
            c = -1 if l % 2 == 0 else 1
        total += w * c / ctx.sin(pi * l / n)
    return total


def watson_sum(n: int, dps: Optional[int] = None):
    """S_n = sum_{l=1}^{n-1} csc(pi l / n).

    >>> round(watson_sum(4), 12)
    3.828427124746
    """
    SumQuery(n)
    if dps is not None:
        return _mp_sum(n, 0, dps)
    return math.fsum(w / math.sin(math.pi * l / n) for l, w in _csc_pairs(n))


def cos_cosecant_sum(n, nu: Optional[int] = None, dps: Optional[int] = None):
    """C_n(nu) = sum_{l=1}^{n-1} cos(2 pi nu l / n) csc(pi l / n).

    Accepts ``(n, nu)`` or a :class:`SumQuery`.  Periodic in nu with period
    n; nu = 0 (mod n) gives Watson's sum.
    """
    q = as_query(n, nu)
    n, k0 = q.n, q.nu_mod
    if dps is not None:
        return _mp_sum(n, k0, dps)
    terms = []
    for l, w in _csc_pairs(n):
        k = (k0 * l) % n
        terms.append(w * math.cos(2.0 * math.pi * k / n) / math.sin(math.pi * l / n))
    return math.fsum(terms)


def cos_cosecant_sums(n: int, dtype=np.float64) -> np.ndarray:
    """C_n(nu) for nu = 0..n-1 in one vectorized pass.

    Returns an array indexed by nu.  ``dtype=np.longdouble`` gives extended
    precision where the platform has it.  Rows are summed pairwise by
    numpy, so the rounding error grows like log(n) rather than n.
    """
    SumQuery(n)
    dtype = np.dtype(dtype)
    pi = _PI_LD.astype(dtype)
    l = np.array([p for p, _ in _csc_pairs(n)], dtype=np.int64)
    w = np.array([q for _, q in _csc_pairs(n)], dtype=dtype)
    csc = w / np.sin(pi * l.astype(dtype) / dtype.type(n))
    cos_table = np.cos(2 * pi * np.arange(n, dtype=dtype) / dtype.type(n))
    out = np.empty(n, dtype=dtype)
    # Chunk the (nu, l) residue grid to bound memory for large n.
    chunk = max(1, 4_000_000 // max(1, l.size))
    for start in range(0, n, chunk):
        nus = np.arange(start, min(n, start + chunk), dtype=np.int64)
        k = np.outer(nus, l) % n
        out[start:start + nus.size] = np.sum(cos_table[k] * csc, axis=1)
    return out


def alternating_cosecant_sum(n: int, dps: Optional[int] = None, force: bool = False):
    """sum_{l=1}^{n-1} (-1)^(l+1) csc(pi l / n).

    For odd n the terms l and n-l cancel exactly and the result is 0; pass
    ``force=True`` to add them up anyway.
    """
    SumQuery(n)
    if n % 2 == 1 and not force:
        return 0.0 if dps is None else _mp.context(dps).mpf(0)
    if dps is not None:
        if n % 2 == 1:
            ctx = _mp.context(dps)
            return ctx.fsum((-1) ** (l + 1) / ctx.sin(ctx.pi * l / n) for l in range(1, n))
        return _mp_sum(n, 0, dps, alternating=True)
    if n % 2 == 1:
        return math.fsum((-1) ** (l + 1) / math.sin(math.pi * l / n) for l in range(1, n))
    return math.fsum(
        (w if l % 2 else -w) / math.sin(math.pi * l / n) for l, w in _csc_pairs(n))


def csc_squared_sum(n: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """sum_{l=1}^{n-1} csc^2(pi l / n) = (n^2 - 1)/3, cross-checked directly."""
    SumQuery(n)
    closed = (n * n - 1) / 3.0
    direct = math.fsum(w / math.sin(math.pi * l / n) ** 2 for l, w in _csc_pairs(n))
    if abs(direct - closed) > policy.rel_tol * n * n + policy.abs_tol:
        raise ConsistencyError(
            f"csc^2 sum at n={n}: direct {direct!r} vs closed form {closed!r}")
    return closed


def cotangent_partial_sum(n: int, m: int) -> float:
    """sum_{l=1}^{m} cot(pi (2l-1) / (2n)).

    The argument is an odd multiple of pi/(2n) and so never a multiple of
    pi; there is no pole for any m.
    """
    SumQuery(n)
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    terms = []
    for l in range(1, m + 1):
        k = (2 * l - 1) % (2 * n)
        terms.append(1.0 / math.tan(math.pi * k / (2 * n)))
    return math.fsum(terms)


def odd_sine_sum(n: int, r: int) -> float:
    """sum_{l=1}^{n-1} sin(pi r l / n), summed directly.

    Equals cot(pi r / (2n)) for odd r and 0 for even r.
    """
    SumQuery(n)
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    return math.fsum(math.sin(math.pi * ((r * l) % (2 * n)) / n) for l in range(1, n))


def _check_dirichlet(phi: float):
    if abs(math.remainder(phi, 2 * math.pi)) <= 8 * math.ulp(max(1.0, abs(phi))):
        raise PoleError(f"phi={phi} is a multiple of 2*pi")


def dirichlet_cos_sum(n: int, phi: float) -> float:
    """sum_{l=1}^{n-1} cos(l phi) in closed form."""
    SumQuery(n)
    _check_dirichlet(phi)
    return math.sin(n * phi - phi / 2) / (2 * math.sin(phi / 2)) - 0.5


def dirichlet_sin_sum(n: int, phi: float) -> float:
    """sum_{l=1}^{n-1} sin(l phi) in closed form."""
    SumQuery(n)
    _check_dirichlet(phi)
    return (-math.cos(n * phi - phi / 2) / (2 * math.sin(phi / 2))
            + 0.5 / math.tan(phi / 2))


def polya_vinogradov_direct(n: int, k: int) -> float:
    """f(n, k) = sum_{l=1}^{n-1} |sin(pi l k / n)| / sin(pi l / n).

    Only the residue lk mod n enters, and sin of it on [0, pi) is already
    non-negative.
    """
    SumQuery(n)
    if not 1 <= k <= n - 1:
        raise DomainError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    terms = []
    for l in range(1, n):
        a = (l * k) % n
        terms.append(math.sin(math.pi * a / n) / math.sin(math.pi * l / n))
    return math.fsum(terms)
