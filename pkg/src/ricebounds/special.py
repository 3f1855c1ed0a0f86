"""Classical special functions the higher-level routines are built on.

Modified Bessel ``I`` (ascending series, large-argument asymptotics, and the
finite closed form at half-integer order), modified Struve ``L``, the
incomplete gamma pair, the Gaussian tail ``Q`` and the generalized Marcum
``Q`` of real order.

Bessel and Struve routines accept NumPy arrays for ``x`` (the quadrature
engine evaluates integrands on whole node vectors); the incomplete gamma
functions and the Marcum function are scalar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import QuadConfig, QuadResult, integrate_semi_infinite

_SERIES_MAX_X = 100.0
_MAX_EXP_ARG = 709.78
_PI_40 = Decimal("3.141592653589793238462643383279502884197")


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)):
        raise DomainError("argument must be finite")
    if np.any(arr < 0):
        raise DomainError("argument must be non-negative")
    return arr


def _unwrap(x, out):
    return float(out) if np.ndim(x) == 0 else out


# --------------------------------------------------------------------------
# modified Bessel function of the first kind
# --------------------------------------------------------------------------

def _bessel_series(nu, x):
    # sum_k (x/2)^(2k+nu) / (k! Gamma(k+nu+1)), all terms positive
    zero = x == 0
    h = np.where(zero, 1.0, 0.5 * x)
    term = np.power(h, nu) / math.gamma(nu + 1.0)
    term[zero] = 0.0
    total = term.copy()
    hh = h * h
    k = 0
    while True:
        k += 1
        term = term * hh / (k * (k + nu))
        total += term
        if np.all(term <= 1e-17 * total):
            break
        if k > 2000:
            raise ConvergenceError("Bessel series did not converge")
    if np.any(zero):
        total[zero] = 1.0 if nu == 0 else (0.0 if nu > 0 else np.inf)
    return total


def _bessel_asymptotic_scaled(nu, x):
    # e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k
    mu = 4.0 * nu * nu
    term = np.ones_like(x)
    total = term.copy()
    for k in range(1, 200):
        new = -term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if np.all(np.abs(new) >= np.abs(term)) and k > 1:
            break
        term = new
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total / np.sqrt(2.0 * np.pi * x)


def _scaled_large(nu, x):
    out = np.empty_like(x)
    asym = 4.0 * nu * nu <= x
    if np.any(asym):
        out[asym] = _bessel_asymptotic_scaled(nu, x[asym])
    for i in np.flatnonzero(~asym):
        # log-space series: terms peak near k ~ x/2
        xi = x[i]
        h = 0.5 * xi
        kmax = int(h + 12 * math.sqrt(h) + 60)
        logs = [
            (2 * k + nu) * math.log(h) - math.lgamma(k + 1) - math.lgamma(k + nu + 1) - xi
            for k in range(kmax)
        ]
        top = max(logs)
        out[i] = math.exp(top) * math.fsum(math.exp(v - top) for v in logs)
    return out


def bessel_i_scaled(order: float, x):
    """Exponentially scaled modified Bessel function ``exp(-x) * I_order(x)``.

    Valid for ``order > -1`` and ``x >= 0``.  Uses the ascending series up to
    ``x = 100`` and the large-argument expansion beyond it.
    """
    nu = float(order)
    if not nu > -1.0:
        raise DomainError(f"Bessel order must exceed -1, got {order}")
    arr = _as_array(x)
    flat = np.atleast_1d(arr)
    out = np.empty_like(flat)
    small = flat <= _SERIES_MAX_X
    if np.any(small):
        xs = flat[small]
        out[small] = _bessel_series(nu, xs) * np.exp(-xs)
    if np.any(~small):
        out[~small] = _scaled_large(nu, flat[~small])
    return _unwrap(arr, out.reshape(arr.shape))


def bessel_i(order: float, x):
    """Modified Bessel function of the first kind ``I_order(x)``.

    Raises
    ------
    OverflowError
        When the value exceeds the double-precision range (``x`` around 713).
    """
    nu = float(order)
    if not nu > -1.0:
        raise DomainError(f"Bessel order must exceed -1, got {order}")
    arr = _as_array(x)
    flat = np.atleast_1d(arr)
    out = np.empty_like(flat)
    small = flat <= _SERIES_MAX_X
    if np.any(small):
        out[small] = _bessel_series(nu, flat[small])
    if np.any(~small):
        xl = flat[~small]
        scaled = _scaled_large(nu, xl)
        with np.errstate(over="ignore"):
            vals = scaled * np.exp(np.minimum(xl, _MAX_EXP_ARG)) * np.exp(np.maximum(xl - _MAX_EXP_ARG, 0))
        if np.any(~np.isfinite(vals)):
            raise OverflowError("I_nu(x) exceeds the double-precision range")
        out[~small] = vals
    return _unwrap(arr, out.reshape(arr.shape))


@dataclass(frozen=True)
class HalfIntOrder:
    """A half-integer Bessel order stored as twice its value.

    ``HalfIntOrder(3)`` is the order 3/2.  ``n`` is the integer with
    ``order = n + 1/2``.
    """

    twice_order: int

    def __post_init__(self):
        if self.twice_order < -1 or self.twice_order % 2 != 1:
            raise DomainError(f"{self.twice_order}/2 is not a half-integer order >= -1/2")

    @classmethod
    def from_order(cls, order: float) -> "HalfIntOrder":
        twice = 2.0 * float(order)
        if twice != round(twice) or round(twice) % 2 != 1:
            raise DomainError(f"order {order} is not an odd multiple of 1/2")
        return cls(int(round(twice)))

    @property
    def order(self) -> float:
        return self.twice_order / 2.0

    @property
    def n(self) -> int:
        return (self.twice_order - 1) // 2


def is_half_integer(order: float) -> bool:
    try:
        HalfIntOrder.from_order(order)
    except DomainError:
        return False
    return order > 0


def half_integer_coefficients(n: int) -> list[int]:
    """Integer coefficients ``(n+k)! / (k! (n-k)!)`` of the half-integer closed form."""
    return [math.factorial(n + k) // (math.factorial(k) * math.factorial(n - k)) for k in range(n + 1)]


def _bessel_i_half_scalar(n, x, scaled):
    # The alternating sum cancels badly when x is small next to the order,
    # so it is accumulated in decimal arithmetic with enough guard digits.
    lost = (2 * n + 1) * max(0.0, math.log10((2 * n + 2) / x))
    with localcontext() as ctx:
        ctx.prec = 34 + int(lost) + 1
        X = Decimal(x)
        ep, em = X.exp(), (-X).exp()
        sign_tail = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
        total = Decimal(0)
        two_x = 2 * X
        power = two_x.sqrt()
        for k, c in enumerate(half_integer_coefficients(n)):
            bracket = (ep if k % 2 == 0 else -ep) + sign_tail * em
            total += c * bracket / power
            power *= two_x
        total /= _PI_40.sqrt()
        if scaled:
            total *= em
        value = float(total)
    if math.isinf(value):
        raise OverflowError("I_nu(x) exceeds the double-precision range")
    return value


def bessel_i_half(order, x, scaled: bool = False):
    """``I_order(x)`` at half-integer order from its finite closed form.

    With ``n = order - 1/2``::

        I_{n+1/2}(x) = sum_{k=0}^{n} (n+k)! [(-1)^k e^x + (-1)^(n+1) e^-x]
                       / (sqrt(pi) k! (n-k)! (2x)^(k+1/2))

    ``order`` may be a float or a :class:`HalfIntOrder`; it must be at least
    1/2.  ``x`` must be strictly positive.  With ``scaled=True`` the result
    is multiplied by ``exp(-x)``.
    """
    h = order if isinstance(order, HalfIntOrder) else HalfIntOrder.from_order(order)
    if h.n < 0:
        raise DomainError("closed form needs order >= 1/2")
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)) or np.any(~np.isfinite(arr)):
        raise DomainError("closed form needs finite x > 0")
    if arr.ndim == 0:
        return _bessel_i_half_scalar(h.n, float(arr), scaled)
    return np.array([_bessel_i_half_scalar(h.n, float(v), scaled) for v in arr.ravel()]).reshape(arr.shape)


# --------------------------------------------------------------------------
# modified Struve function
# --------------------------------------------------------------------------

_STRUVE_MAX_TERMS = 10_000


def struve_l(order: float, x):
    """Modified Struve function ``L_order(x)`` by its ascending series.

    ``sum_k (x/2)^(2k+order+1) / (Gamma(k+3/2) Gamma(k+order+3/2))``, truncated
    once a term falls below ``1e-16`` of the partial sum.  Needs ``order >= -1/2``.
    """
    nu = float(order)
    if nu < -0.5:
        raise DomainError(f"Struve order must be >= -1/2, got {order}")
    arr = _as_array(x)
    h = 0.5 * np.atleast_1d(arr)
    term = np.power(h, nu + 1.0) / (math.gamma(1.5) * math.gamma(nu + 1.5))
    total = term.copy()
    hh = h * h
    for k in range(1, _STRUVE_MAX_TERMS + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            term = term * hh / ((k + 0.5) * (k + nu + 0.5))
            total += term
        if np.any(~np.isfinite(total)):
            raise OverflowError("L_nu(x) exceeds the double-precision range")
        if np.all(term <= 1e-16 * total):
            break
    else:
        raise ConvergenceError(f"Struve series exceeded {_STRUVE_MAX_TERMS} terms")
    return _unwrap(arr, total.reshape(arr.shape))


# --------------------------------------------------------------------------
# error function, incomplete gamma, Gaussian Q
# --------------------------------------------------------------------------

_erf_vec = np.vectorize(math.erf, otypes=[float])
_erfc_vec = np.vectorize(math.erfc, otypes=[float])


def erf(x):
    """Error function ``(2/sqrt(pi)) * int_0^x exp(-t^2) dt``."""
    return math.erf(x) if np.ndim(x) == 0 else _erf_vec(x)


def erfc(x):
    return math.erfc(x) if np.ndim(x) == 0 else _erfc_vec(x)


def _power_exp(a, x):
    # x^a e^{-x} without premature overflow/underflow
    try:
        v = math.pow(x, a) * math.exp(-x)
    except OverflowError:
        v = math.inf
    if v == 0.0 or not math.isfinite(v):
        v = math.exp(a * math.log(x) - x)
    return v


def _gamma_series(a, x):
    # gamma(a, x) = x^a e^{-x} sum_k x^k / (a (a+1) ... (a+k))
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(10_000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-17:
            return total * _power_exp(a, x)
    raise ConvergenceError("incomplete gamma series did not converge")


def _gamma_cf(a, x):
    # Gamma(a, x) by modified Lentz on the Legendre continued fraction
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h * _power_exp(a, x)
    raise ConvergenceError("incomplete gamma continued fraction did not converge")


def _check_gamma_args(a, x):
    if not a > 0:
        raise DomainError(f"incomplete gamma needs a > 0, got {a}")
    if not x >= 0 or not math.isfinite(x):
        raise DomainError(f"incomplete gamma needs finite x >= 0, got {x}")


def gamma_lower(a: float, x: float) -> float:
    """Lower incomplete gamma ``int_0^x t^(a-1) e^-t dt`` (not regularized)."""
    a, x = float(a), float(x)
    _check_gamma_args(a, x)
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return math.gamma(a) - _gamma_cf(a, x)


def gamma_upper(a: float, x: float) -> float:
    """Upper incomplete gamma ``int_x^inf t^(a-1) e^-t dt`` (not regularized)."""
    a, x = float(a), float(x)
    _check_gamma_args(a, x)
    if x == 0.0:
        return math.gamma(a)
    if x < a + 1.0:
        return math.gamma(a) - _gamma_series(a, x)
    return _gamma_cf(a, x)


def gaussian_q(x):
    """Gaussian tail probability ``Q(x) = erfc(x / sqrt(2)) / 2``."""
    if np.ndim(x) == 0:
        return 0.5 * math.erfc(float(x) / math.sqrt(2.0))
    return 0.5 * _erfc_vec(np.asarray(x, dtype=float) / math.sqrt(2.0))


# --------------------------------------------------------------------------
# Marcum Q
# --------------------------------------------------------------------------

def marcum_q_result(order: float, a: float, b: float, cfg: QuadConfig | None = None) -> QuadResult:
    """Generalized Marcum ``Q_order(a, b)`` with the quadrature error estimate.

    Integrates ``t (t/a)^(order-1) exp(-(t^2+a^2)/2) I_{order-1}(a t)`` over
    ``[b, inf)``.  For ``a = 0`` the closed limit
    ``Gamma(order, b^2/2) / Gamma(order)`` is used instead.
    """
    nu, a, b = float(order), float(a), float(b)
    if not nu >= 0.5:
        raise DomainError(f"Marcum order must be >= 1/2, got {order}")
    if not (a >= 0 and b >= 0) or not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("Marcum arguments must be finite and non-negative")
    if b == 0.0:
        return QuadResult(1.0, 0.0, 0)
    if a == 0.0:
        value = gamma_upper(nu, 0.5 * b * b) / math.gamma(nu)
        return QuadResult(value, 0.0, 0)

    log_a = math.log(a)

    def integrand(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_pre = np.log(t) + (nu - 1.0) * (np.log(t) - log_a) - 0.5 * (t - a) ** 2
        live = log_pre > -745.0
        if np.any(live):
            out[live] = np.exp(log_pre[live]) * bessel_i_scaled(nu - 1.0, a * t[live])
        return out

    res = integrate_semi_infinite(integrand, b, cfg)
    return QuadResult(min(max(res.value, 0.0), 1.0), res.est_error, res.evaluations)


def marcum_q(order: float, a: float, b: float, cfg: QuadConfig | None = None) -> float:
    """Generalized Marcum Q-function of real order ``>= 1/2``."""
    return marcum_q_result(order, a, b, cfg).value


def marcum_q_half(a: float, b: float) -> float:
    """Marcum ``Q_{1/2}(a, b) = Q(b + a) + Q(b - a)`` in terms of Gaussian tails."""
    return gaussian_q(b + a) + gaussian_q(b - a)
