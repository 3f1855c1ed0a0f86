"""Rice Ie-function ``Ie(k, x) = int_0^x exp(-t) I_0(k t) dt``.

Several equivalent routes are provided so they can be checked against each
other: the defining integral (the oracle), the trigonometric integral, two
infinite series (Struve-based and Bessel-based), two Marcum Q forms and the
integration-by-parts identity.  On top of these sit closed-form upper and
lower bounds.

Every route returns an :class:`~ricebounds.results.EvalResult`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import QuadConfig, integrate
from .results import EvalResult, Method
from .special import (
    bessel_i_scaled,
    erf,
    gaussian_q,
    marcum_q_result,
    struve_l,
)


@dataclass(frozen=True)
class RiceParams:
    """Arguments ``(k, x)`` of ``Ie(k, x)`` with ``0 <= k <= 1`` and ``x >= 0``."""

    k: float
    x: float

    def __post_init__(self):
        if not (0.0 <= self.k <= 1.0):
            raise DomainError(f"k must lie in [0, 1], got {self.k}")
        if not (self.x >= 0.0 and math.isfinite(self.x)):
            raise DomainError(f"x must be finite and >= 0, got {self.x}")

    @property
    def c(self) -> float:
        """``sqrt(1 - k^2)``."""
        return math.sqrt((1.0 - self.k) * (1.0 + self.k))

    @property
    def a(self) -> float:
        return math.sqrt(self.x) * math.sqrt(1.0 + self.c)

    @property
    def b(self) -> float:
        # 1 - c = k^2 / (1 + c) avoids cancellation for small k
        return math.sqrt(self.x) * self.k / math.sqrt(1.0 + self.c)


def _params(k, x) -> RiceParams:
    return RiceParams(float(k), float(x))


def _require_k_below_one(p: RiceParams, what: str):
    if p.k >= 1.0:
        raise DomainError(f"{what} is singular at k = 1; use the quadrature or Bessel series route")


def _exp_i0(p: RiceParams) -> float:
    # e^{-x} I_0(k x)
    return math.exp(-(1.0 - p.k) * p.x) * bessel_i_scaled(0, p.k * p.x)


def rice_ie_quad(k, x, cfg: QuadConfig | None = None) -> EvalResult:
    """``Ie(k, x)`` from its defining integral (the reference value)."""
    p = _params(k, x)
    if p.x == 0.0:
        return EvalResult(0.0, Method.QUADRATURE)

    def f(t):
        return np.exp(-(1.0 - p.k) * t) * bessel_i_scaled(0, p.k * t)

    res = integrate(f, 0.0, p.x, cfg)
    return EvalResult(res.value, Method.QUADRATURE, res.est_error)


def rice_ie_alt_integral(k, x, cfg: QuadConfig | None = None) -> EvalResult:
    """``1/sqrt(1-k^2) - (1/pi) int_0^pi exp(-x(1 - k cos t)) / (1 - k cos t) dt``; needs ``k < 1``.

    Follows from writing ``I_0`` as its Poisson integral and integrating over
    ``t`` first.
    """
    p = _params(k, x)
    _require_k_below_one(p, "the trigonometric integral")

    def f(theta):
        d = 1.0 - p.k * np.cos(theta)
        return np.exp(-p.x * d) / d

    res = integrate(f, 0.0, math.pi, cfg)
    return EvalResult(1.0 / p.c - res.value / math.pi, Method.ALT_INTEGRAL, res.est_error / math.pi)


def rice_ie_struve_series(k, x, terms: int = 30) -> EvalResult:
    """Partial sum of the modified-Struve series; converges fast when
    ``x sqrt(1-k^2)`` is large and ``k x`` is small.

    With ``c = sqrt(1-k^2)`` and ``y = x c``::

        Ie = sqrt(x pi / (2c)) e^-x sum_n (x k^2 / (2c))^n / n!
             * [L_{n+1/2}(y) / c + L_{n-1/2}(y)]

    ``est_error`` is the magnitude of the last term added.
    """
    p = _params(k, x)
    _require_k_below_one(p, "the Struve series")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if p.x == 0.0:
        return EvalResult(0.0, Method.STRUVE_SERIES)
    c = p.c
    y = p.x * c
    ratio = p.x * p.k * p.k / (2.0 * c)
    pre = math.sqrt(p.x * math.pi / (2.0 * c)) * math.exp(-p.x)
    total = 0.0
    weight = 1.0  # ratio^n / n!
    last = 0.0
    for n in range(terms):
        if n:
            weight *= ratio / n
        last = pre * weight * (struve_l(n + 0.5, y) / c + struve_l(n - 0.5, y))
        total += last
    if not (math.isfinite(total) and math.isfinite(last)):
        raise ConvergenceError("Struve series produced non-finite terms")
    return EvalResult(total, Method.STRUVE_SERIES, abs(last))


def rice_ie_bessel_series(k, x, terms: int = 30) -> EvalResult:
    """Partial sum of the Bessel series; converges fast when ``x sqrt(1-k^2)``
    is small and ``k x`` is large.  Valid up to and including ``k = 1``.

    With ``w = x (1-k^2) / (2k)``::

        Ie = x e^-x { (sqrt(pi)/2) sum_n w^(n+1) I_{n+1}(kx) / Gamma(n+5/2)
                      + I_0(kx) + (sqrt(pi)/(2k)) sum_n w^n I_{n+1}(kx) / Gamma(n+3/2) }
    """
    p = _params(k, x)
    if p.k == 0.0:
        raise DomainError("the Bessel series needs k > 0")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if p.x == 0.0:
        return EvalResult(0.0, Method.BESSEL_SERIES)
    kx = p.k * p.x
    w = p.x * (1.0 - p.k) * (1.0 + p.k) / (2.0 * p.k)
    damp = math.exp(-(1.0 - p.k) * p.x)  # e^{-x} e^{kx}
    half_sqrt_pi = 0.5 * math.sqrt(math.pi)
    total = bessel_i_scaled(0, kx)
    last = 0.0
    for n in range(terms):
        i_next = bessel_i_scaled(n + 1, kx)
        first = half_sqrt_pi * w ** (n + 1) * i_next / math.gamma(n + 2.5)
        second = half_sqrt_pi / p.k * w ** n * i_next / math.gamma(n + 1.5)
        last = first + second
        total += last
    scale = p.x * damp
    value = scale * total
    if not math.isfinite(value):
        raise ConvergenceError("Bessel series produced non-finite terms")
    return EvalResult(value, Method.BESSEL_SERIES, abs(scale * last))


def rice_ie_marcum(k, x, cfg: QuadConfig | None = None) -> EvalResult:
    """``[2 Q_1(a, b) - e^-x I_0(kx) - 1] / sqrt(1-k^2)``; needs ``k < 1``."""
    p = _params(k, x)
    _require_k_below_one(p, "the Marcum form")
    q = marcum_q_result(1.0, p.a, p.b, cfg)
    value = (2.0 * q.value - _exp_i0(p) - 1.0) / p.c
    return EvalResult(value, Method.MARCUM, 2.0 * q.est_error / p.c)


def rice_ie_marcum_difference(k, x, cfg: QuadConfig | None = None) -> EvalResult:
    """``[Q_1(a, b) - Q_1(b, a)] / sqrt(1-k^2)``; needs ``k < 1``."""
    p = _params(k, x)
    _require_k_below_one(p, "the Marcum difference")
    q_ab = marcum_q_result(1.0, p.a, p.b, cfg)
    q_ba = marcum_q_result(1.0, p.b, p.a, cfg)
    value = (q_ab.value - q_ba.value) / p.c
    return EvalResult(value, Method.MARCUM_DIFFERENCE, (q_ab.est_error + q_ba.est_error) / p.c)


def rice_ie_by_parts(k, x, cfg: QuadConfig | None = None) -> EvalResult:
    """``1 - e^-x I_0(kx) + k int_0^x e^-t I_1(kt) dt``, the integrated-by-parts form."""
    p = _params(k, x)
    head = 1.0 - _exp_i0(p)
    if p.x == 0.0 or p.k == 0.0:
        return EvalResult(head, Method.BY_PARTS)

    def f(t):
        return np.exp(-(1.0 - p.k) * t) * bessel_i_scaled(1, p.k * t)

    res = integrate(f, 0.0, p.x, cfg)
    return EvalResult(head + p.k * res.value, Method.BY_PARTS, p.k * res.est_error)


def _erf_ratio(x: float, s: float) -> float:
    # erf(sqrt(x s)) / sqrt(s), with its s -> 0 limit
    if s == 0.0:
        return 2.0 * math.sqrt(x / math.pi)
    return erf(math.sqrt(x * s)) / math.sqrt(s)


def rice_ie_upper(k, x) -> EvalResult:
    """Closed-form upper bound, strict for ``x > 0``::

        1 - e^-x I_0(kx) + sqrt(k/2) [erf(sqrt(x(1-k)))/sqrt(1-k) - erf(sqrt(x(1+k)))/sqrt(1+k)]

    It replaces ``I_1`` by the larger ``I_{1/2}`` in the by-parts form.  At
    ``k = 0`` it reduces to ``1 - e^-x``, which is exact; ``k = 1`` is taken
    as the limit of the first ratio.
    """
    p = _params(k, x)
    head = 1.0 - _exp_i0(p)
    if p.k == 0.0 or p.x == 0.0:
        return EvalResult(head, Method.BOUND_UPPER)
    bracket = _erf_ratio(p.x, 1.0 - p.k) - _erf_ratio(p.x, 1.0 + p.k)
    return EvalResult(head + math.sqrt(p.k / 2.0) * bracket, Method.BOUND_UPPER)


def rice_ie_lower(k, x) -> EvalResult:
    """Closed-form lower bound, strict for ``x > 0`` and ``k > 0``::

        [2 Q(b + a) + 2 Q(b - a) - e^-x I_0(kx) - 1] / sqrt(1 - k^2)

    It is the Marcum form with ``Q_1`` replaced by the smaller ``Q_{1/2}``.
    For large ``x`` it approximates ``Ie`` very closely.
    """
    p = _params(k, x)
    _require_k_below_one(p, "the lower bound")
    a, b = p.a, p.b
    # 2 Q(b - a) - 1 = erf((a - b) / sqrt 2) since a >= b; keeps digits when Q(b - a) ~ 1
    head = 2.0 * gaussian_q(b + a) + erf((a - b) / math.sqrt(2.0))
    value = (head - _exp_i0(p)) / p.c
    return EvalResult(value, Method.BOUND_LOWER)


__all__ = [
    "RiceParams",
    "rice_ie_quad",
    "rice_ie_alt_integral",
    "rice_ie_struve_series",
    "rice_ie_bessel_series",
    "rice_ie_marcum",
    "rice_ie_marcum_difference",
    "rice_ie_by_parts",
    "rice_ie_upper",
    "rice_ie_lower",
]
