"""Method registry, parameter sweeps and CSV output.

Columns of a sweep are written ``method`` or ``method@name=value;name=value``;
the ``@`` part overrides fixed parameters for that column only, so one sweep
can compare e.g. ``closed-form@n=0.5`` against ``quadrature@n=0.4``.
"""

from __future__ import annotations

import csv
import io
import sys
from dataclasses import dataclass, field
from typing import Callable, Mapping, TextIO

import numpy as np

from . import ilhi, rice, toronto
from .errors import DomainError
from .quadrature import QuadConfig
from .results import EvalResult, Method

PARAMETERS: dict[str, tuple[str, ...]] = {
    "rice": ("k", "x"),
    "toronto": ("m", "n", "r", "B"),
    "ilhi": ("m", "n", "a", "z"),
}

DEFAULT_TERMS = {"rice": 30, "toronto": 100}


def _toronto_marcum(m, n, r, B, cfg=None):
    if abs(n - 0.5 * (m - 1.0)) > 1e-12:
        raise DomainError(f"the Marcum form needs n = (m-1)/2, got m={m}, n={n}")
    return toronto.toronto_marcum(m, r, B, cfg)


# (function, method) -> (callable, extra keyword it accepts: "cfg", "terms" or None)
_REGISTRY: dict[tuple[str, Method], tuple[Callable[..., EvalResult], str | None]] = {
    ("rice", Method.QUADRATURE): (rice.rice_ie_quad, "cfg"),
    ("rice", Method.ALT_INTEGRAL): (rice.rice_ie_alt_integral, "cfg"),
    ("rice", Method.STRUVE_SERIES): (rice.rice_ie_struve_series, "terms"),
    ("rice", Method.BESSEL_SERIES): (rice.rice_ie_bessel_series, "terms"),
    ("rice", Method.MARCUM): (rice.rice_ie_marcum, "cfg"),
    ("rice", Method.MARCUM_DIFFERENCE): (rice.rice_ie_marcum_difference, "cfg"),
    ("rice", Method.BY_PARTS): (rice.rice_ie_by_parts, "cfg"),
    ("rice", Method.BOUND_UPPER): (rice.rice_ie_upper, None),
    ("rice", Method.BOUND_LOWER): (rice.rice_ie_lower, None),
    ("toronto", Method.QUADRATURE): (toronto.toronto_quad, "cfg"),
    ("toronto", Method.MARCUM): (_toronto_marcum, "cfg"),
    ("toronto", Method.POCHHAMMER_SERIES): (toronto.toronto_pochhammer_series, "terms"),
    ("toronto", Method.GAMMA_SERIES): (toronto.toronto_gamma_series, "terms"),
    ("toronto", Method.CLOSED_FORM): (toronto.toronto_closed, "cfg"),
    ("toronto", Method.BOUND_UPPER): (toronto.toronto_upper, None),
    ("toronto", Method.BOUND_LOWER): (toronto.toronto_lower, None),
    ("ilhi", Method.QUADRATURE): (ilhi.ilhi_quad, "cfg"),
    ("ilhi", Method.CLOSED_FORM): (ilhi.ilhi_closed, "cfg"),
    ("ilhi", Method.BOUND_UPPER): (ilhi.ilhi_upper, "cfg"),
    ("ilhi", Method.BOUND_LOWER): (ilhi.ilhi_lower, "cfg"),
}


def methods_for(function: str) -> list[Method]:
    _check_function(function)
    return [m for (f, m) in _REGISTRY if f == function]


def _check_function(function: str):
    if function not in PARAMETERS:
        raise DomainError(f"unknown function {function!r}; choose from {', '.join(PARAMETERS)}")


def evaluate(
    function: str,
    method: str | Method,
    params: Mapping[str, float],
    cfg: QuadConfig | None = None,
    terms: int | None = None,
) -> EvalResult:
    """Dispatch one evaluation by function name and method label."""
    _check_function(function)
    try:
        method = Method(method)
    except ValueError:
        raise DomainError(f"unknown method {method!r}") from None
    entry = _REGISTRY.get((function, method))
    if entry is None:
        names = ", ".join(str(m) for m in methods_for(function))
        raise DomainError(f"{function} has no method {method}; available: {names}")
    fn, extra = entry
    names = PARAMETERS[function]
    missing = [n for n in names if n not in params]
    if missing:
        raise DomainError(f"{function} needs parameter(s): {', '.join(missing)}")
    unknown = sorted(set(params) - set(names))
    if unknown:
        raise DomainError(f"{function} does not take parameter(s): {', '.join(unknown)}")
    args = [float(params[n]) for n in names]
    if extra == "cfg":
        return fn(*args, cfg=cfg)
    if extra == "terms":
        return fn(*args, terms=terms or DEFAULT_TERMS[function])
    return fn(*args)


@dataclass(frozen=True)
class Column:
    """One output column: a method plus per-column parameter overrides."""

    method: Method
    overrides: tuple[tuple[str, float], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Column":
        label, _, rest = text.partition("@")
        try:
            method = Method(label.strip())
        except ValueError:
            raise DomainError(f"unknown method {label!r} in column {text!r}") from None
        overrides = []
        for item in filter(None, (s.strip() for s in rest.split(";"))):
            name, sep, value = item.partition("=")
            if not sep:
                raise DomainError(f"column override {item!r} is not name=value")
            overrides.append((name.strip(), float(value)))
        return cls(method, tuple(overrides))

    @property
    def label(self) -> str:
        if not self.overrides:
            return str(self.method)
        return f"{self.method}@" + ";".join(f"{n}={v:g}" for n, v in self.overrides)


@dataclass(frozen=True)
class SweepSpec:
    """A one-dimensional grid over ``varying`` with the other parameters fixed."""

    function: str
    fixed: Mapping[str, float]
    varying: str
    lo: float
    hi: float
    steps: int
    columns: tuple[Column, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _check_function(self.function)
        names = PARAMETERS[self.function]
        if self.varying not in names:
            raise DomainError(f"{self.function} has no parameter {self.varying!r}")
        if self.varying in self.fixed:
            raise DomainError(f"{self.varying!r} cannot be both fixed and varying")
        if self.steps < 2:
            raise DomainError("steps must be >= 2")
        if not self.lo < self.hi:
            raise DomainError("lo must be below hi")
        if not self.columns:
            raise DomainError("a sweep needs at least one column")
        for col in self.columns:
            if (self.function, col.method) not in _REGISTRY:
                raise DomainError(f"{self.function} has no method {col.method}")
            for name, _ in col.overrides:
                if name not in names or name == self.varying:
                    raise DomainError(f"column {col.label!r} overrides invalid parameter {name!r}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def format_value(v: float) -> str:
    """Fixed 17 significant figures, so output is byte-stable."""
    return format(v, ".16e")


def run_sweep(
    spec: SweepSpec,
    out: TextIO,
    cfg: QuadConfig | None = None,
    terms: int | None = None,
    warn: TextIO | None = None,
) -> int:
    """Write the sweep as CSV to ``out``; returns the number of failed cells.

    A failing point leaves its cell empty and logs one line to ``warn``
    (stderr by default) instead of aborting the sweep.
    """
    warn = warn if warn is not None else sys.stderr
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([spec.varying] + [c.label for c in spec.columns])
    failures = 0
    for point in spec.grid():
        row = [format_value(point)]
        for col in spec.columns:
            params = dict(spec.fixed)
            params.update(col.overrides)
            params[spec.varying] = point
            try:
                row.append(format_value(evaluate(spec.function, col.method, params, cfg, terms).value))
            except (ArithmeticError, ValueError) as exc:
                failures += 1
                row.append("")
                print(f"warning: {col.label} at {spec.varying}={point:g}: {exc}", file=warn)
        writer.writerow(row)
    return failures


def sweep_to_string(spec: SweepSpec, cfg: QuadConfig | None = None, terms: int | None = None) -> str:
    buf = io.StringIO()
    run_sweep(spec, buf, cfg, terms)
    return buf.getvalue()


def _cols(*labels: str) -> tuple[Column, ...]:
    return tuple(Column.parse(s) for s in labels)


# Defaults fill in what the figure captions leave open (B for Toronto, a and
# the z range for the ILHI); every field can be overridden from the CLI.
PRESETS: dict[str, tuple[str, SweepSpec]] = {
    "figure1": (
        "Rice Ie bounds against x at k = 0.5",
        SweepSpec("rice", {"k": 0.5}, "x", 0.1, 20.0, 100,
                  _cols("quadrature", "bound-upper", "bound-lower")),
    ),
    "figure2": (
        "Rice Ie bounds against k at x = 7",
        SweepSpec("rice", {"x": 7.0}, "k", 0.01, 0.99, 99,
                  _cols("quadrature", "bound-upper", "bound-lower")),
    ),
    "figure3": (
        "Rice Ie lower bound against k at x = 80 (the caption's x = 40 via --set x=40)",
        SweepSpec("rice", {"x": 80.0}, "k", 0.01, 0.99, 99,
                  _cols("quadrature", "bound-lower")),
    ),
    "figure4": (
        "Toronto function against r at m = 1, B = 2: closed form at n = 0.5, quadrature at n = 0.4, 0.5, 0.6",
        SweepSpec("toronto", {"m": 1.0, "B": 2.0}, "r", 0.05, 4.0, 80,
                  _cols("closed-form@n=0.5", "quadrature@n=0.4", "quadrature@n=0.5", "quadrature@n=0.6")),
    ),
    "figure5": (
        "Toronto function against r at m = 3, B = 2: closed form at n = 2.5, quadrature at n = 2.4, 2.5, 2.6",
        SweepSpec("toronto", {"m": 3.0, "B": 2.0}, "r", 0.05, 4.0, 80,
                  _cols("closed-form@n=2.5", "quadrature@n=2.4", "quadrature@n=2.5", "quadrature@n=2.6")),
    ),
    "figure6": (
        "Lipschitz-Hankel integral against z at a = 2 for several (m, n), with bounds at integer n",
        SweepSpec("ilhi", {"a": 2.0}, "z", 0.1, 10.0, 100,
                  _cols("closed-form@m=1;n=0.5", "quadrature@m=1;n=0.5",
                        "closed-form@m=3;n=2.5", "quadrature@m=3;n=2.5",
                        "bound-upper@m=2;n=1", "quadrature@m=2;n=1", "bound-lower@m=2;n=1")),
    ),
}


def preset(name: str, overrides: Mapping[str, float] | None = None, lo=None, hi=None, steps=None) -> SweepSpec:
    """A preset sweep with optional fixed-parameter and grid overrides.

    Overriding the varying parameter's value is an error; use ``lo``/``hi``.
    """
    try:
        _, base = PRESETS[name]
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    fixed = dict(base.fixed)
    fixed.update(overrides or {})
    return SweepSpec(
        base.function, fixed, base.varying,
        base.lo if lo is None else lo,
        base.hi if hi is None else hi,
        base.steps if steps is None else steps,
        base.columns,
    )


__all__ = [
    "PARAMETERS",
    "PRESETS",
    "Column",
    "SweepSpec",
    "evaluate",
    "format_value",
    "methods_for",
    "preset",
    "run_sweep",
    "sweep_to_string",
]
