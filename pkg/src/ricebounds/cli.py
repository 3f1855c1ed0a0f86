"""Command-line front end: ``eval``, ``sweep``, ``verify`` and ``preset``.

Exit status: 0 success, 1 verification failure, 2 usage or domain error,
3 numerical failure (quadrature tolerance, series convergence, overflow).
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from typing import Callable, Sequence

from . import ilhi, rice, toronto
from .errors import DomainError
from .quadrature import DEFAULT_CONFIG, QuadConfig
from .sweep import PARAMETERS, PRESETS, Column, SweepSpec, evaluate, methods_for, preset, run_sweep

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

TOL_ENV = "RICEBOUNDS_TOL"


def quad_config(tol: float | None = None) -> QuadConfig:
    """Quadrature settings: ``--tol`` beats ``$RICEBOUNDS_TOL`` beats the default."""
    if tol is None:
        env = os.environ.get(TOL_ENV)
        if env:
            try:
                tol = float(env)
            except ValueError:
                raise DomainError(f"{TOL_ENV}={env!r} is not a number") from None
    if tol is None:
        return DEFAULT_CONFIG
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    return QuadConfig(abs_tol=min(DEFAULT_CONFIG.abs_tol, tol), rel_tol=tol)


def _assignment(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not a number") from None


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


# ---------------------------------------------------------------- eval

def cmd_eval(args) -> int:
    cfg = quad_config(args.tol)
    params = {n: getattr(args, n) for n in PARAMETERS[args.function] if getattr(args, n) is not None}
    if args.function == "toronto" and "n" not in params:
        if args.method != "marcum":
            raise DomainError("--n is required unless --method marcum")
        params["n"] = 0.5 * (params["m"] - 1.0)
    res = evaluate(args.function, args.method, params, cfg, args.terms)
    print(f"{args.function} {res.method} value={res.value:.16e} est_error={res.est_error:.2e}")
    return EXIT_OK


# ---------------------------------------------------------------- sweep

def _write_sweep(spec: SweepSpec, args) -> int:
    cfg = quad_config(args.tol)
    with _output(args.out) as fh:
        failures = run_sweep(spec, fh, cfg, args.terms)
    if failures:
        print(f"warning: {failures} cell(s) failed and were left empty", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args) -> int:
    fixed = dict(args.set or [])
    columns = tuple(Column.parse(c) for c in args.columns)
    spec = SweepSpec(args.function, fixed, args.vary, args.lo, args.hi, args.steps, columns)
    return _write_sweep(spec, args)


def cmd_preset_list(args) -> int:
    for name, (description, spec) in PRESETS.items():
        fixed = ", ".join(f"{k}={v:g}" for k, v in spec.fixed.items())
        print(f"{name}: {description}")
        print(f"    {spec.function}: {spec.varying} in [{spec.lo:g}, {spec.hi:g}] x {spec.steps}; {fixed}")
        print(f"    columns: {' '.join(c.label for c in spec.columns)}")
    return EXIT_OK


def cmd_preset_run(args) -> int:
    spec = preset(args.name, dict(args.set or []), args.lo, args.hi, args.steps)
    return _write_sweep(spec, args)


# ---------------------------------------------------------------- verify

RICE_GRID = [(k / 10, x) for k in range(1, 10) for x in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0)]
TORONTO_GRID = [(r, B) for r in (0.25, 0.5, 1.0, 2.0, 4.0) for B in (0.5, 1.0, 2.0)]
ILHI_GRID = [(a, z) for a in (1.5, 2.0, 3.0, 5.0) for z in (0.5, 1.0, 2.0, 5.0, 10.0)]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a - b)


def _check_by_parts(cfg):
    return max(abs(rice.rice_ie_by_parts(k, x, cfg).value - rice.rice_ie_quad(k, x, cfg).value)
               for k, x in RICE_GRID)


def _check_marcum_forms(cfg):
    return max(abs(rice.rice_ie_marcum(k, x, cfg).value - rice.rice_ie_marcum_difference(k, x, cfg).value)
               for k, x in RICE_GRID)


def _check_rice_bounds(cfg):
    # worst relative violation of lower <= Ie <= upper (0 when the bounds hold)
    worst = 0.0
    for k, x in RICE_GRID:
        q = rice.rice_ie_quad(k, x, cfg).value
        lo, up = rice.rice_ie_lower(k, x).value, rice.rice_ie_upper(k, x).value
        worst = max(worst, (lo - q) / q, (q - up) / q)
    return worst


def _check_toronto_marcum(cfg):
    return max(abs(toronto.toronto_marcum(m, r, B, cfg).value - toronto.toronto_quad(m, (m - 1) / 2, r, B, cfg).value)
               for m in (1, 2, 3) for r in (0.5, 1.0, 2.0) for B in (0.5, 1.0, 2.0))


def _check_toronto_closed(cfg):
    return max(_rel(toronto.toronto_closed(m, n, r, B, cfg=cfg).value, toronto.toronto_quad(m, n, r, B, cfg).value)
               for m, n in ((1, 0.5), (3, 2.5)) for r, B in TORONTO_GRID)


def _check_ilhi_closed(cfg):
    return max(_rel(ilhi.ilhi_closed(m, n, a, z, cfg).value, ilhi.ilhi_quad(m, n, a, z, cfg).value)
               for m, n in ((1, 0.5), (2, 1.5), (3, 2.5)) for a, z in ILHI_GRID)


# name, what is measured, base threshold, check
IDENTITIES: list[tuple[str, str, float, Callable[[QuadConfig], float]]] = [
    ("rice by-parts = quadrature", "max abs", 1e-9, _check_by_parts),
    ("rice marcum = marcum-difference", "max abs", 1e-9, _check_marcum_forms),
    ("rice bounds bracket quadrature", "max rel violation", 1e-12, _check_rice_bounds),
    ("toronto marcum = quadrature", "max abs", 1e-9, _check_toronto_marcum),
    ("toronto closed-form = quadrature", "max rel", 1e-9, _check_toronto_closed),
    ("ilhi closed-form = quadrature", "max rel", 1e-9, _check_ilhi_closed),
]


def cmd_verify(args) -> int:
    cfg = quad_config(args.tol)
    failed = []
    print(f"{'identity':<36} {'measure':<18} {'residual':>10} {'threshold':>10}  status")
    for name, measure, base, check in IDENTITIES:
        # looser quadrature makes every identity proportionally looser
        threshold = max(base, 100.0 * cfg.rel_tol)
        residual = check(cfg)
        ok = residual <= threshold
        if not ok:
            failed.append(name)
        print(f"{name:<36} {measure:<18} {residual:>10.2e} {threshold:>10.2e}  {'PASS' if ok else 'FAIL'}")
    if failed:
        print("verification failed: " + "; ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    print("all identities PASS")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_common(p: argparse.ArgumentParser, *, output: bool = False):
    p.add_argument("--tol", type=float, default=None,
                   help=f"quadrature relative tolerance (overrides ${TOL_ENV}; default 1e-12)")
    p.add_argument("--terms", type=int, default=None, help="series truncation (rice 30, toronto 100)")
    if output:
        p.add_argument("--out", "-o", default=None, help="CSV path (default stdout)")
        p.add_argument("--set", action="append", type=_assignment, metavar="NAME=VALUE",
                       help="fix a parameter; repeatable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ricebounds",
        description="Rice Ie-function, incomplete Toronto function and Lipschitz-Hankel integrals: "
                    "evaluation, bounds and reproducible CSV sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one point")
    fsub = p_eval.add_subparsers(dest="function", required=True)
    for function, names in PARAMETERS.items():
        methods = [str(m) for m in methods_for(function)]
        fp = fsub.add_parser(function, help=f"{function}({', '.join(names)})")
        for n in names:
            # the Toronto Marcum form fixes n = (m-1)/2, so n may be omitted there
            optional = function == "toronto" and n == "n"
            fp.add_argument(f"--{n}", type=float, required=not optional)
        fp.add_argument("--method", default="quadrature", choices=methods)
        _add_common(fp)
        fp.set_defaults(handler=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="tabulate methods over a 1-D grid as CSV")
    p_sweep.add_argument("function", choices=list(PARAMETERS))
    p_sweep.add_argument("--vary", required=True, help="parameter to sweep")
    p_sweep.add_argument("--lo", type=float, required=True)
    p_sweep.add_argument("--hi", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, default=50)
    p_sweep.add_argument("--columns", nargs="+", required=True,
                         help="method or method@name=value;name=value per column")
    _add_common(p_sweep, output=True)
    p_sweep.set_defaults(handler=cmd_sweep)

    p_verify = sub.add_parser("verify", help="check the cross-representation identities")
    _add_common(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_preset = sub.add_parser("preset", help="figure sweeps with documented defaults")
    psub = p_preset.add_subparsers(dest="preset_command", required=True)
    p_list = psub.add_parser("list", help="describe the presets")
    p_list.set_defaults(handler=cmd_preset_list)
    p_run = psub.add_parser("run", help="run a preset sweep")
    p_run.add_argument("name", choices=list(PRESETS))
    p_run.add_argument("--lo", type=float, default=None)
    p_run.add_argument("--hi", type=float, default=None)
    p_run.add_argument("--steps", type=int, default=None)
    _add_common(p_run, output=True)
    p_run.set_defaults(handler=cmd_preset_run)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        # ToleranceError, ConvergenceError and OverflowError all land here
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
