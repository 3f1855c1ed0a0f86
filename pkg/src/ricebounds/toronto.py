"""Incomplete Toronto function.

    T_B(m, n, r) = 2 r^(n-m+1) exp(-r^2) int_0^B t^(m-n) exp(-t^2) I_n(2 r t) dt

Routes: the defining integral, the Marcum special case ``n = (m-1)/2``, two
infinite series, and a finite closed form in incomplete gamma functions at
half-integer ``n``, which also yields bounds at integer ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import QuadConfig, integrate
from .results import EvalResult, Method
from .special import (
    HalfIntOrder,
    bessel_i_half,
    bessel_i_scaled,
    gamma_lower,
    gamma_upper,
    half_integer_coefficients,
    marcum_q_result,
)

SERIES_TERM_CAP = 10_000


@dataclass(frozen=True)
class TorontoParams:
    """Arguments ``(m, n, r, B)``, all non-negative and finite."""

    m: float
    n: float
    r: float
    B: float

    def __post_init__(self):
        for name in ("m", "n", "r", "B"):
            v = getattr(self, name)
            if not (v >= 0.0 and math.isfinite(v)):
                raise DomainError(f"{name} must be finite and >= 0, got {v}")


def _r_zero_limit(p: TorontoParams) -> float:
    # I_n(2rt) ~ (rt)^n / n!, so T ~ r^(2n-m+1) gamma((m+1)/2, B^2) / Gamma(n+1)
    power = 2.0 * p.n - p.m + 1.0
    if power > 0:
        return 0.0
    if power == 0:
        return gamma_lower(p.n + 1.0, p.B * p.B) / math.gamma(p.n + 1.0)
    raise DomainError(f"T_B(m, n, r) diverges as r -> 0 when m > 2n + 1 (m={p.m}, n={p.n})")


def toronto_quad(m, n, r, B, cfg: QuadConfig | None = None) -> EvalResult:
    """``T_B(m, n, r)`` by adaptive quadrature of its defining integral."""
    p = TorontoParams(float(m), float(n), float(r), float(B))
    if p.B == 0.0:
        return EvalResult(0.0, Method.QUADRATURE)
    if p.r == 0.0:
        return EvalResult(_r_zero_limit(p), Method.QUADRATURE)
    mu = p.m - p.n

    def f(t):
        # t^(m-n) e^{-(t-r)^2} e^{-2rt} I_n(2rt)
        return np.power(t, mu) * np.exp(-(t - p.r) ** 2) * bessel_i_scaled(p.n, 2.0 * p.r * t)

    res = integrate(f, 0.0, p.B, cfg)
    scale = 2.0 * p.r ** (p.n - p.m + 1.0)
    return EvalResult(scale * res.value, Method.QUADRATURE, scale * res.est_error)


def toronto_marcum(m, r, B, cfg: QuadConfig | None = None) -> EvalResult:
    """``T_B(m, (m-1)/2, r) = 1 - Q_{(m+1)/2}(r sqrt 2, B sqrt 2)``."""
    m, r, B = float(m), float(r), float(B)
    TorontoParams(m, 0.0, r, B)
    q = marcum_q_result(0.5 * (m + 1.0), r * math.sqrt(2.0), B * math.sqrt(2.0), cfg)
    return EvalResult(1.0 - q.value, Method.MARCUM, q.est_error)


def toronto_gamma_series(m, n, r, B, terms: int = 100) -> EvalResult:
    """Partial sum of the incomplete-gamma series (real ``n`` allowed)::

        T = r^(2n-m+1) e^(-r^2) sum_k r^(2k) gamma((m+1)/2 + k, B^2) / (k! Gamma(n+k+1))

    The incomplete gamma takes ``B**2``: expanding ``I_n`` in its ascending
    series and integrating ``t^(m+2k) e^(-t^2)`` term by term gives
    ``gamma((m+1)/2 + k, B^2) / 2``.
    """
    p = TorontoParams(float(m), float(n), float(r), float(B))
    _check_terms(terms)
    if p.B == 0.0:
        return EvalResult(0.0, Method.GAMMA_SERIES)
    if p.r == 0.0:
        return EvalResult(_r_zero_limit(p), Method.GAMMA_SERIES)
    a = 0.5 * (p.m + 1.0)
    log_r = math.log(p.r)
    b2 = p.B * p.B
    total = 0.0
    last = 0.0
    for k in range(terms):
        log_w = (2.0 * p.n - p.m + 1.0 + 2.0 * k) * log_r - p.r * p.r \
            - math.lgamma(k + 1.0) - math.lgamma(p.n + k + 1.0)
        last = math.exp(log_w) * gamma_lower(a + k, b2)
        total += last
    if not math.isfinite(total):
        raise ConvergenceError("incomplete-gamma series produced non-finite terms")
    return EvalResult(total, Method.GAMMA_SERIES, abs(last))


def toronto_pochhammer_series(m, n, r, B, terms: int = 100) -> EvalResult:
    """Partial sum of the double (Pochhammer) series, integer ``n`` only::

        T = B^(2a) r^(2(n-a+1)) e^(-B^2-r^2) / n! * sum_k B^(2k) Y_k / (a)_(k+1)
        Y_k = sum_{i<=k} (a)_i r^(2i) / ((n+1)_i i!),     a = (m+1)/2

    Obtained from the incomplete-gamma series by expanding each
    ``gamma(a+j, B^2)`` in powers of ``B^2`` and regrouping by total degree.
    """
    p = TorontoParams(float(m), float(n), float(r), float(B))
    _check_terms(terms)
    if p.n != int(p.n):
        raise DomainError(f"the Pochhammer series needs integer n, got {p.n}")
    if p.B == 0.0:
        return EvalResult(0.0, Method.POCHHAMMER_SERIES)
    if p.r == 0.0:
        return EvalResult(_r_zero_limit(p), Method.POCHHAMMER_SERIES)
    a = 0.5 * (p.m + 1.0)
    r2, b2 = p.r * p.r, p.B * p.B
    log_pre = 2.0 * (p.n - a + 1.0) * math.log(p.r) + 2.0 * a * math.log(p.B) \
        - b2 - r2 - math.lgamma(p.n + 1.0)
    pre = math.exp(log_pre)
    y_term = 1.0  # (a)_i r^(2i) / ((n+1)_i i!)
    y_sum = 1.0
    outer = 1.0 / a  # B^(2k) / (a)_(k+1)
    total = 0.0
    last = 0.0
    for k in range(terms):
        if k:
            y_term *= (a + k - 1.0) * r2 / ((p.n + k) * k)
            y_sum += y_term
            outer *= b2 / (a + k)
        last = pre * outer * y_sum
        total += last
    if not math.isfinite(total):
        raise ConvergenceError("Pochhammer series produced non-finite terms")
    return EvalResult(total, Method.POCHHAMMER_SERIES, abs(last))


def _check_terms(terms):
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if terms > SERIES_TERM_CAP:
        raise ConvergenceError(f"term count {terms} exceeds the cap of {SERIES_TERM_CAP}")


# --------------------------------------------------------------------------
# closed form at half-integer n
# --------------------------------------------------------------------------

# Every closed-form piece is returned with a "magnitude": the sum of the
# absolute values that were added to form it.  Rounding error is a small
# multiple of eps * magnitude, which exposes cancellation.
_ROUNDING = 16.0 * np.finfo(float).eps


def _gaussian_moment(l: int, c1: float, c2: float) -> tuple[float, float]:
    """``int_{c1}^{c2} u^l exp(-u^2) du`` via incomplete gamma functions, with its magnitude."""
    s = 0.5 * (l + 1)
    if c1 >= 0.0:
        if c1 * c1 > s:
            # both limits in the tail: difference of upper gammas keeps relative accuracy
            g1, g2 = gamma_upper(s, c1 * c1), gamma_upper(s, c2 * c2)
            return 0.5 * (g1 - g2), 0.5 * (g1 + g2)
        g1, g2 = gamma_lower(s, c1 * c1), gamma_lower(s, c2 * c2)
        return 0.5 * (g2 - g1), 0.5 * (g1 + g2)
    if c2 <= 0.0:
        value, mag = _gaussian_moment(l, -c2, -c1)
        return (-1) ** l * value, mag
    g1, g2 = gamma_lower(s, c1 * c1), gamma_lower(s, c2 * c2)
    return 0.5 * (g2 + (-1) ** l * g1), 0.5 * (g1 + g2)


def _shifted_moment(L: int, rho: float, B: float) -> tuple[float, float]:
    """``int_0^B t^L exp(-(t - rho)^2) dt`` by binomial expansion about ``rho``, with its magnitude."""
    parts, mag = [], 0.0
    for l in range(L + 1):
        w = math.comb(L, l) * rho ** (L - l)
        value, m = _gaussian_moment(l, -rho, B - rho)
        parts.append(w * value)
        mag += abs(w) * m
    return math.fsum(parts), mag


def _closed_form_reducible(m: float, n: float) -> bool:
    """Whether ``T_B(m, n, r)`` is a finite sum of incomplete gamma functions at half-integer ``n``.

    Needs integer ``m`` with ``m >= 2n`` (every power in the termwise
    expansion is a non-negative integer) or ``m`` odd (the order-lowering
    recurrence then terminates without reaching ``int t^-nu e^(-t^2) I_nu(2rt) dt``).
    """
    if m != int(m) or m < 0:
        return False
    return m >= 2 * n or int(m) % 2 == 1


def _toronto_closed_value(
    m: int, n: HalfIntOrder, r: float, B: float, cfg: QuadConfig | None
) -> tuple[float, float]:
    """Value and rounding-error estimate of the closed form."""

    # F(mu, nu) = exp(-r^2) int_0^B t^mu exp(-t^2) I_nu(2rt) dt, keyed by twice mu and twice nu
    @lru_cache(maxsize=None)
    def F(two_mu: int, two_nu: int) -> tuple[float, float]:
        mu, nu = two_mu / 2.0, two_nu / 2.0
        order = HalfIntOrder(two_nu)
        if mu >= nu:
            return _direct(mu, order)
        index = (two_mu + two_nu) // 2
        if index == 0:
            return _residual(nu)
        lam = two_nu - 2
        boundary = B ** mu * math.exp(-(B - r) ** 2) * bessel_i_half(HalfIntOrder(lam), 2.0 * r * B, scaled=True)
        mag = abs(boundary)
        if index == 1:
            lam_f = lam / 2.0
            origin = math.exp(-r * r) * r ** lam_f / math.gamma(lam_f + 1.0)
            boundary -= origin
            mag += origin
            lower, lower_err = 0.0, 0.0
        else:
            lower, lower_err = F(two_mu - 2, lam)
            lower, lower_err = (index - 1) * lower, (index - 1) * lower_err
        upper, upper_err = F(two_mu + 2, lam)
        value = (boundary - lower + 2.0 * upper) / (2.0 * r)
        err = (_ROUNDING * (mag + abs(lower) + 2.0 * abs(upper)) + lower_err + 2.0 * upper_err) / (2.0 * r)
        return value, err

    def _residual(nu: float) -> tuple[float, float]:
        # exp(-r^2) int_0^B t^-nu e^(-t^2) I_nu(2rt) dt: the one piece with no gamma form
        def f(t):
            return np.power(t, -nu) * np.exp(-(t - r) ** 2) * bessel_i_scaled(nu, 2.0 * r * t)

        res = integrate(f, 0.0, B, cfg)
        return res.value, res.est_error

    def _direct(mu: float, order: HalfIntOrder) -> tuple[float, float]:
        # termwise integration of the finite closed form of I_nu
        tail_sign = -1 if order.n % 2 == 0 else 1  # (-1)^(n+1)
        terms, mag = [], 0.0
        for k, c in enumerate(half_integer_coefficients(order.n)):
            L = int(round(mu - k - 0.5))
            scale = c * (4.0 * r) ** (-k - 0.5)
            up, up_mag = _shifted_moment(L, r, B)
            down, down_mag = _shifted_moment(L, -r, B)
            terms.append(scale * ((-1) ** k * up + tail_sign * down))
            mag += scale * (up_mag + down_mag)
        root_pi = math.sqrt(math.pi)
        return math.fsum(terms) / root_pi, _ROUNDING * mag / root_pi

    value, err = F(int(round(2 * (m - n.order))), n.twice_order)
    scale = 2.0 * r ** (n.order - m + 1.0)
    return scale * value, scale * err


def toronto_closed(m, n, r, B, *, exact: bool = False, cfg: QuadConfig | None = None) -> EvalResult:
    """``T_B(m, n, r)`` in closed form for half-integer ``n`` and integer ``m``.

    Substituting the finite form of ``I_n`` turns the integrand into terms
    ``t^L exp(-(t -+ r)^2)``; for ``L >= 0`` a binomial expansion about
    ``+-r`` leaves Gaussian moments, which are incomplete gamma functions
    (lower ones across zero, upper ones in the tails).  This covers every
    integer ``m >= 2n``.

    For ``m < 2n`` some powers ``L`` are negative, and the order is first
    lowered with the recurrence

        F(mu, nu) = [B^mu e^(-B^2) I_{nu-1}(2rB) - (mu+nu-1) F(mu-1, nu-1)
                     + 2 F(mu+1, nu-1)] / (2r)

    for ``F(mu, nu) = int_0^B t^mu e^(-t^2) I_nu(2rt) dt``.  When
    ``mu + nu = 1`` the ``F(mu-1, nu-1)`` term has a zero coefficient and its
    boundary value at ``t = 0`` is kept instead.  For odd ``m`` this
    terminates in gamma functions.  For even ``m < 2n`` it ends at
    ``int_0^B t^-nu e^(-t^2) I_nu(2rt) dt``, which has no incomplete-gamma
    form; that single smooth integral is evaluated by quadrature, or a
    :class:`DomainError` is raised when ``exact=True``.

    The pieces combine ``exp(+-2rt)`` and cancel when ``2rB`` is small:
    for ``(m, n) = (3, 2.5)`` the relative error is about ``1e-14`` at
    ``2rB = 2``, ``3e-10`` at ``0.2`` and ``5e-7`` at ``0.02``, and larger
    ``m`` is worse.  ``est_error`` carries a rounding-error bound built from
    the magnitudes of the cancelling terms (plus the quadrature error of the
    numerical piece, if any), so ill-conditioned calls are visible.  Use
    :func:`toronto_quad` or :func:`toronto_gamma_series` there.
    """
    p = TorontoParams(float(m), float(n), float(r), float(B))
    order = HalfIntOrder.from_order(p.n)
    if order.n < 0:
        raise DomainError("closed form needs n >= 1/2")
    if p.m != int(p.m):
        raise DomainError(f"closed form needs integer m, got {p.m}")
    if exact and not _closed_form_reducible(p.m, p.n):
        raise DomainError(
            f"no incomplete-gamma closed form for m={p.m}, n={p.n}: m must be odd or at least 2n"
        )
    if p.B == 0.0:
        return EvalResult(0.0, Method.CLOSED_FORM)
    if p.r == 0.0:
        return EvalResult(_r_zero_limit(p), Method.CLOSED_FORM)
    value, err = _toronto_closed_value(int(p.m), order, p.r, p.B, cfg)
    return EvalResult(float(value), Method.CLOSED_FORM, float(err))


def _integer_order(n, minimum):
    n = float(n)
    if n != int(n) or n < minimum:
        raise DomainError(f"bounds need an integer n >= {minimum}, got {n}")
    return n


def toronto_lower(m, n, r, B) -> EvalResult:
    """Closed-form value at ``n + 1/2`` for integer ``n``.

    It lies below ``T_B(m, n, r)`` wherever the function decreases in ``n``.
    That holds for small ``r`` but not for large ``r``: around ``r = 2`` the
    dependence on ``n`` turns increasing and the inequality reverses.
    """
    n = _integer_order(n, 0)
    res = toronto_closed(m, n + 0.5, r, B)
    return EvalResult(res.value, Method.BOUND_LOWER)


def toronto_upper(m, n, r, B) -> EvalResult:
    """Closed-form value at ``n - 1/2`` for integer ``n >= 1``; see :func:`toronto_lower`."""
    n = _integer_order(n, 1)
    res = toronto_closed(m, n - 0.5, r, B)
    return EvalResult(res.value, Method.BOUND_UPPER)


__all__ = [
    "TorontoParams",
    "toronto_quad",
    "toronto_marcum",
    "toronto_pochhammer_series",
    "toronto_gamma_series",
    "toronto_closed",
    "toronto_lower",
    "toronto_upper",
]
