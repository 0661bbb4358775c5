"""Shared value types and the exception hierarchy."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

__all__ = [
    "CosecSumError",
    "DomainError",
    "PoleError",
    "RepresentationSingularityError",
    "ExcludedPointError",
    "ParityError",
    "OptimalTruncationError",
    "NonConvergenceError",
    "ConsistencyError",
    "PrecisionPolicy",
    "SumQuery",
    "RemainderBracket",
    "Method",
    "Evaluation",
    "DEFAULT_POLICY",
    "as_query",
]


class CosecSumError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CosecSumError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PoleError(DomainError):
    """A trigonometric pole was hit."""


class RepresentationSingularityError(DomainError):
    """The representation is not usable at this (n, nu)."""


class ExcludedPointError(DomainError):
    """The estimate is explicitly invalid at this point."""


class ParityError(DomainError):
    """The operation requires an even n."""


class OptimalTruncationError(DomainError):
    """An asymptotic series was asked for terms past its smallest one."""


class NonConvergenceError(CosecSumError, ArithmeticError):
    """A series or quadrature did not reach the requested tolerance."""


class ConsistencyError(CosecSumError, ArithmeticError):
    """Two evaluations that must agree did not."""


@dataclass(frozen=True)
class PrecisionPolicy:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_terms: int = 10**6

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise ValueError("tolerances must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")

    def target(self, magnitude: float) -> float:
        """Absolute target for a quantity of the given size."""
        return self.abs_tol + self.rel_tol * abs(magnitude)


DEFAULT_POLICY = PrecisionPolicy()


@dataclass(frozen=True)
class SumQuery:
    """A pair (n, nu) with nu reduced to its residue modulo n.

    ``nu`` may be any integer; ``nu_mod`` is the canonical residue in
    ``[0, n-1]`` and ``is_watson_case`` flags ``nu = 0 (mod n)``, where the
    generalized sum collapses to Watson's sum.
    """

    n: int
    nu: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or int(self.nu) != self.nu:
            raise DomainError("n and nu must be integers")
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")

    @property
    def nu_mod(self) -> int:
        return self.nu % self.n

    @property
    def is_watson_case(self) -> bool:
        return self.nu_mod == 0

    @property
    def is_half_period(self) -> bool:
        """True when 2*nu = 0 (mod n) but nu is not, i.e. nu = n/2."""
        return not self.is_watson_case and (2 * self.nu_mod) % self.n == 0

    def require_interior(self) -> int:
        """Return ``nu_mod`` or raise if the query is the Watson case."""
        if self.is_watson_case:
            raise DomainError(
                f"nu={self.nu} is 0 mod n={self.n}; this is Watson's sum S_n")
        return self.nu_mod


def as_query(n, nu=None) -> SumQuery:
    """Accept either a SumQuery or plain integers (n, nu)."""
    if isinstance(n, SumQuery):
        if nu is not None:
            raise TypeError("pass either a SumQuery or (n, nu), not both")
        return n
    return SumQuery(n, 0 if nu is None else nu)


@dataclass(frozen=True)
class RemainderBracket:
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError(f"empty bracket [{self.lower}, {self.upper}]")

    @classmethod
    def from_partial(cls, partial, next_term) -> "RemainderBracket":
        """Interval between a partial sum and the partial sum plus the next term."""
        other = partial + next_term
        return cls(min(partial, other), max(partial, other))

    @classmethod
    def around(cls, center, half_width) -> "RemainderBracket":
        return cls(center - half_width, center + half_width)

    @property
    def width(self):
        return self.upper - self.lower

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper

    def strictly_contains(self, value) -> bool:
        return self.lower < value < self.upper

    def overlaps(self, other: "RemainderBracket") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper


class Method(str, enum.Enum):
    DIRECT = "direct"
    FINITE_SERIES = "finite_series"
    INFINITE_SERIES = "infinite_series"
    INTEGRAL_POISSON = "integral_poisson"
    INTEGRAL_HYPERBOLIC = "integral_hyperbolic"
    ASYMPTOTIC_MAIN = "asymptotic_main"
    ASYMPTOTIC_REFINED = "asymptotic_refined"
    APPROXIMATION = "approximation"


@dataclass(frozen=True)
class Evaluation:
    value: float
    method: Method
    terms_used: int = 0
    error_bracket: Optional[RemainderBracket] = None

    def __post_init__(self):
        if self.terms_used < 0:
            raise ValueError("terms_used must be >= 0")
        if (self.error_bracket is not None and math.isfinite(self.value)
                and self.value not in self.error_bracket):
            raise ValueError("error bracket does not contain the value")

    def __float__(self) -> float:
        return float(self.value)
