"""Rice Ie-function, incomplete Toronto function and incomplete
Lipschitz-Hankel integrals: quadrature references, series, closed forms at
half-integer order and the bounds built from them."""

from .errors import ConvergenceError, DomainError, ToleranceError
from .ilhi import IlhiParams, ilhi_closed, ilhi_lower, ilhi_quad, ilhi_upper
from .quadrature import DEFAULT_CONFIG, QuadConfig, QuadResult, integrate, integrate_semi_infinite
from .results import EvalResult, Method
from .rice import (
    RiceParams,
    rice_ie_alt_integral,
    rice_ie_bessel_series,
    rice_ie_by_parts,
    rice_ie_lower,
    rice_ie_marcum,
    rice_ie_marcum_difference,
    rice_ie_quad,
    rice_ie_struve_series,
    rice_ie_upper,
)
from .special import (
    bessel_i,
    bessel_i_half,
    bessel_i_scaled,
    erf,
    erfc,
    gamma_lower,
    gamma_upper,
    gaussian_q,
    marcum_q,
    marcum_q_half,
    struve_l,
)
from .sweep import Column, SweepSpec, evaluate, preset, run_sweep
from .toronto import (
    TorontoParams,
    toronto_closed,
    toronto_gamma_series,
    toronto_lower,
    toronto_marcum,
    toronto_pochhammer_series,
    toronto_quad,
    toronto_upper,
)

__version__ = "0.1.0"
