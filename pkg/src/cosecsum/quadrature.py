"""Thin adaptive-quadrature layer over :func:`scipy.integrate.quad`."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Tuple

from scipy import integrate

from .core import NonConvergenceError

__all__ = ["Scheme", "QuadratureSpec", "integrate_interval"]


class Scheme(str, enum.Enum):
    ADAPTIVE_INTERVAL = "adaptive_interval"
    SEMI_INFINITE_DECAY = "semi_infinite_decay"


@dataclass(frozen=True)
class QuadratureSpec:
    scheme: Scheme = Scheme.SEMI_INFINITE_DECAY
    target_tol: float = 1e-12
    max_subdivisions: int = 2**16

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not self.target_tol > 0:
            raise ValueError("target_tol must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


def integrate_interval(f: Callable[[float], float], a: float, b: float,
                       spec: QuadratureSpec, points=None) -> Tuple[float, float, int]:
    """Adaptive Gauss-Kronrod on [a, b] (b may be inf).

    Returns (value, error estimate, function evaluations).  A roundoff
    warning from QUADPACK is tolerated when the reported error still meets
    the target; any other failure raises NonConvergenceError.
    """
    kw = dict(epsabs=spec.target_tol, epsrel=spec.target_tol,
              limit=spec.max_subdivisions, full_output=1)
    if points is not None and math.isfinite(b):
        kw["points"] = points
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, **kw)
    value, err, info = out[0], out[1], out[2]
    neval = int(info.get("neval", 0))
    if len(out) == 3:
        return value, err, neval
    # QUADPACK flagged a problem; only a roundoff warning with a good error
    # estimate is let through.
    message = str(out[3])
    if message.startswith("The occurrence of roundoff") and \
            err <= 100 * spec.target_tol * max(1.0, abs(value)):
        return value, err, neval
    first = message.splitlines()[0] if message else "unknown failure"
    raise NonConvergenceError(
        f"quadrature did not converge (error estimate {err:.3g}): {first}")
