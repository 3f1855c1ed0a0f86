"""Result record returned by every evaluation routine."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    ALT_INTEGRAL = "alt-integral"
    STRUVE_SERIES = "struve-series"
    BESSEL_SERIES = "bessel-series"
    MARCUM = "marcum"
    MARCUM_DIFFERENCE = "marcum-difference"
    BY_PARTS = "by-parts"
    POCHHAMMER_SERIES = "pochhammer-series"
    GAMMA_SERIES = "gamma-series"
    CLOSED_FORM = "closed-form"
    BOUND_UPPER = "bound-upper"
    BOUND_LOWER = "bound-lower"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EvalResult:
    """A computed value, the route that produced it and an error estimate.

    ``est_error`` is the quadrature engine's estimate for integral routes,
    the magnitude of the last added term for truncated series (a heuristic),
    and ``0.0`` for closed forms whose only error is floating-point rounding.
    """

    value: float
    method: Method
    est_error: float = 0.0

    def __float__(self) -> float:
        return float(self.value)
