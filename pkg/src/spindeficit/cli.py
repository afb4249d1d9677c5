"""Command-line front end.

Subcommands:

* ``xy-phase-diagram``  deficit over an (h, gamma) grid of the XY chain
* ``sweep``             one-parameter deficit/susceptibility sweep
* ``critical-points``   unit-circle roots of the characteristic equation
* ``spectrum``          finite-chain +-omega branches along a sweep
* ``winding``           (Y, Z) loop and integer winding number

Output is CSV on stdout or ``--out``, with ``#``-prefixed comment lines
carrying the resolved configuration and any per-run diagnostics.  Exit
codes: 0 success (and validation PASS), 2 configuration error, 3 numerical
failure, 4 validation FAIL.
"""

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext

from . import topology
from .errors import (
    ConvergenceFailure,
    GapClosed,
    NonPhysicalState,
    NoRoots,
    SingularIntegrand,
)
from .models import ExtIsingParams, QuadratureOptions
from .sweep import SweepSpec, evaluate_point, run_sweep, sweep_points, validate_extrema
from .xstate import MinimizerOptions

__all__ = ["main"]


class ConfigError(Exception):
    pass


def _parse_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"range must look like lo:hi:N, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as err:
        raise ConfigError(f"bad range {text!r}: {err}") from None
    if n < 1:
        raise ConfigError("range needs at least one sample")
    if n > 1 and not lo < hi:
        raise ConfigError("range needs lo < hi")
    return lo, hi, n


def _range_values(lo, hi, n):
    if n == 1:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + k * step for k in range(n)]


def _resolve_beta(args):
    t = getattr(args, "T", None)
    beta = getattr(args, "beta", None)
    if t is not None:
        if t < 0:
            raise ConfigError("temperature must be >= 0")
        return math.inf if t == 0 else 1.0 / t
    if beta is not None:
        if beta <= 0:
            raise ConfigError("beta must be positive")
        return beta
    return math.inf


def _add_couplings(parser, which=("gamma", "delta", "lambda", "h")):
    if "gamma" in which:
        parser.add_argument("--gamma", type=float, default=None)
    if "delta" in which:
        parser.add_argument("--delta", type=float, default=None)
    if "lambda" in which:
        parser.add_argument("--lambda", dest="lam", type=float, default=None)
    if "h" in which:
        parser.add_argument("--h", type=float, default=None)


def _add_temperature(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--T", type=float, default=None, help="temperature; 0 means T -> 0")
    group.add_argument("--beta", type=float, default=None, help="inverse temperature")


def _add_numerics(parser):
    parser.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")
    parser.add_argument("--grid", type=int, default=64, help="minimizer seed grid size")
    parser.add_argument("--fd-step", type=float, default=None, help="susceptibility step")
    parser.add_argument("--threads", type=int, default=1)


def _numeric_options(args):
    if args.tol <= 0:
        raise ConfigError("--tol must be positive")
    if args.grid < 2:
        raise ConfigError("--grid must be at least 2")
    if args.fd_step is not None and args.fd_step <= 0:
        raise ConfigError("--fd-step must be positive")
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    return MinimizerOptions(grid_size=args.grid), QuadratureOptions(abs_tol=args.tol)


def _parallel_map(fn, items, threads):
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _echo(out, command, settings):
    out.write(f"# spindeficit {command}\n")
    for key, value in settings.items():
        out.write(f"# {key}={value!r}\n")


def _fmt(v):
    return repr(float(v))


def _infer_sweep_param(args, model):
    if getattr(args, "param", None):
        name = {"lambda": "lam"}.get(args.param, args.param)
        if name not in ("h", "lam", "gamma"):
            raise ConfigError(f"cannot sweep {args.param!r}")
        return name
    free = ["h", "gamma"] if model == "xy" else ["h", "gamma", "lam"]
    missing = [
        name
        for name, given in (
            ("h", args.h is not None),
            ("gamma", args.gamma is not None),
            ("lam", model != "xy" and args.lam is not None),
        )
        if name in free and not given
    ]
    if len(missing) != 1:
        raise ConfigError(
            "ambiguous sweep parameter: fix all couplings except one, or pass --param"
        )
    return missing[0]


def _infer_model(args):
    if getattr(args, "model", None):
        name = args.model.replace("-", "_")
        if name not in ("xy", "ext_ising"):
            raise ConfigError(f"unknown model {args.model!r}")
        return name
    ext = (
        args.delta is not None
        or args.lam is not None
        or getattr(args, "param", None) in ("lambda", "lam")
        or getattr(args, "T", None) is not None
        or getattr(args, "beta", None) is not None
    )
    return "ext_ising" if ext else "xy"


def _topology_params(args, lam_default=0.0):
    return ExtIsingParams(
        gamma=args.gamma if args.gamma is not None else 1.0,
        delta=args.delta if args.delta is not None else 0.0,
        lam=args.lam if args.lam is not None else lam_default,
        h=args.h if args.h is not None else 0.0,
    )


def cmd_sweep(args, out):
    model = _infer_model(args)
    param = _infer_sweep_param(args, model)
    lo, hi, n = _parse_range(args.range)
    minimizer, quadrature = _numeric_options(args)
    try:
        spec = SweepSpec(
            model=model,
            param=param,
            lo=lo,
            hi=hi,
            n=n,
            gamma=args.gamma if args.gamma is not None else 1.0,
            delta=args.delta if args.delta is not None else 0.0,
            lam=args.lam if args.lam is not None else 0.0,
            h=args.h if args.h is not None else 0.0,
            beta=_resolve_beta(args),
            fd_step=args.fd_step,
            minimizer=minimizer,
            quadrature=quadrature,
        )
    except ValueError as err:
        raise ConfigError(str(err)) from None

    _echo(
        out,
        "sweep",
        {
            "model": spec.model,
            "param": spec.param,
            "range": f"{lo}:{hi}:{n}",
            "gamma": spec.gamma,
            "delta": spec.delta,
            "lambda": spec.lam,
            "h": spec.h,
            "beta": spec.beta,
            "tol": args.tol,
            "grid": args.grid,
            "fd_step": args.fd_step,
            "threads": args.threads,
        },
    )
    evaluations = _parallel_map(
        lambda x: evaluate_point(spec, x), sweep_points(spec), args.threads
    )
    result = run_sweep(spec, evaluations=evaluations)

    out.write("x,deficit,chi\n")
    for x, d, c in zip(result.x, result.deficit, result.chi):
        out.write(f"{_fmt(x)},{_fmt(d)},{_fmt(c)}\n")
    for x, c in result.extrema:
        out.write(f"# extremum x={_fmt(x)} chi={_fmt(c)}\n")

    if not args.critical_points:
        return 0
    if spec.param == "gamma":
        raise ConfigError("--critical-points needs the sweep parameter to be h or lambda")
    roots = topology.characteristic_roots(spec.params_at(0.0), free=spec.param)
    report = validate_extrema(result, [r.value for r in roots], args.window)
    for m in report.matches:
        verdict = "PASS" if m.ok else "FAIL"
        where = "none" if m.extremum is None else _fmt(m.extremum)
        dist = "inf" if m.distance is None else _fmt(m.distance)
        out.write(
            f"# critical x={_fmt(m.critical)} extremum={where} distance={dist} {verdict}\n"
        )
    out.write(f"# validation {'PASS' if report.passed else 'FAIL'}\n")
    return 0 if report.passed else 4


def cmd_xy_phase_diagram(args, out):
    h_lo, h_hi, h_n = _parse_range(args.range if args.range else "0:2:41")
    g_lo, g_hi, g_n = _parse_range(args.gamma_range if args.gamma_range else "0:1:21")
    minimizer, quadrature = _numeric_options(args)
    _echo(
        out,
        "xy-phase-diagram",
        {
            "h_range": f"{h_lo}:{h_hi}:{h_n}",
            "gamma_range": f"{g_lo}:{g_hi}:{g_n}",
            "tol": args.tol,
            "grid": args.grid,
            "threads": args.threads,
        },
    )
    h_values = _range_values(h_lo, h_hi, h_n)
    g_values = _range_values(g_lo, g_hi, g_n)
    points = [(g, h) for g in g_values for h in h_values]

    def evaluate(point):
        g, h = point
        spec = SweepSpec(
            model="xy",
            param="h",
            lo=min(h_lo, -1.0),
            hi=max(h_hi, 1.0),
            n=3,
            gamma=g,
            minimizer=minimizer,
            quadrature=quadrature,
        )
        return evaluate_point(spec, h)

    rows = _parallel_map(evaluate, points, args.threads)
    out.write("h,gamma,deficit,chi\n")
    for gi, g in enumerate(g_values):
        block = rows[gi * h_n : (gi + 1) * h_n]
        for k, (h, d) in enumerate(block):
            if 0 < k < h_n - 1:
                chi = (block[k + 1][1] - block[k - 1][1]) / (block[k + 1][0] - block[k - 1][0])
            else:
                chi = math.nan
            out.write(f"{_fmt(h)},{_fmt(g)},{_fmt(d)},{_fmt(chi)}\n")
    return 0


def cmd_critical_points(args, out):
    free = getattr(args, "free", None)
    if free is None:
        if args.h is None and args.lam is not None:
            free = "h"
        elif args.lam is None and args.h is not None:
            free = "lam"
        else:
            raise ConfigError("pass exactly one of --h/--lambda, or choose with --free")
    free = {"lambda": "lam"}.get(free, free)
    if free not in ("h", "lam"):
        raise ConfigError(f"--free must be h or lambda, got {free!r}")
    params = _topology_params(args)
    _echo(
        out,
        "critical-points",
        {
            "gamma": params.gamma,
            "delta": params.delta,
            "lambda": params.lam,
            "h": params.h,
            "free": free,
        },
    )
    roots = topology.characteristic_roots(params, free=free)
    out.write("value,zeta_re,zeta_im,theta\n")
    for r in roots:
        out.write(f"{r.value:.6f},{r.zeta.real:.6f},{r.zeta.imag:.6f},{r.theta:.6f}\n")
    return 0


def _swept_topology_values(args):
    """(param_name, values) for spectrum/winding; single fixed point if no --range."""
    if args.range:
        model = "ext_ising"
        param = _infer_sweep_param(args, model)
        if param == "gamma":
            raise ConfigError("spectrum/winding sweeps run over h or lambda")
        lo, hi, n = _parse_range(args.range)
        return param, _range_values(lo, hi, n)
    name = "h"
    return name, [args.h if args.h is not None else 0.0]


def cmd_spectrum(args, out):
    if args.L < 1:
        raise ConfigError("--L must be a positive integer")
    param, values = _swept_topology_values(args)
    base = _topology_params(args)
    _echo(
        out,
        "spectrum",
        {
            "gamma": base.gamma,
            "delta": base.delta,
            "lambda": base.lam,
            "h": base.h,
            "param": param,
            "L": args.L,
        },
    )
    out.write("x,phi,omega_plus,omega_minus\n")
    from dataclasses import replace

    for x in values:
        series = topology.spectrum(replace(base, **{param: x}), args.L)
        for phi, om in zip(series.phi, series.omega):
            out.write(f"{_fmt(x)},{_fmt(phi)},{_fmt(om)},{_fmt(-om)}\n")
    return 0


def cmd_winding(args, out):
    param, values = _swept_topology_values(args)
    base = _topology_params(args)
    swept = args.range is not None
    _echo(
        out,
        "winding",
        {
            "gamma": base.gamma,
            "delta": base.delta,
            "lambda": base.lam,
            "h": base.h,
            "param": param,
        },
    )
    from dataclasses import replace

    failures = []
    if swept:
        out.write("x,phi,Y,Z,nu\n")
    else:
        out.write("phi,Y,Z\n")
    for x in values:
        params = replace(base, **{param: x})
        phi, y, z = topology.winding_curve(params)
        try:
            nu = topology.winding_number(params)
        except GapClosed as err:
            nu = math.nan
            failures.append((x, str(err)))
        if swept:
            for p, yy, zz in zip(phi, y, z):
                out.write(f"{_fmt(x)},{_fmt(p)},{_fmt(yy)},{_fmt(zz)},{_fmt(nu)}\n")
        else:
            for p, yy, zz in zip(phi, y, z):
                out.write(f"{_fmt(p)},{_fmt(yy)},{_fmt(zz)}\n")
            out.write(f"# nu = {_fmt(nu)}\n")
    for x, msg in failures:
        out.write(f"# gap-closed at {param}={_fmt(x)}: {msg}\n")
        sys.stderr.write(f"gap-closed at {param}={_fmt(x)}: {msg}\n")
    return 3 if failures else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spindeficit",
        description="One-way deficit and criticality diagnostics of XY/extended-Ising chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xy-phase-diagram", help="deficit over an (h, gamma) grid")
    p.add_argument("--range", default=None, help="h range as lo:hi:N (default 0:2:41)")
    p.add_argument("--gamma-range", default=None, help="gamma range as lo:hi:N (default 0:1:21)")
    p.add_argument("--out", default=None)
    _add_numerics(p)
    p.set_defaults(handler=cmd_xy_phase_diagram)

    p = sub.add_parser("sweep", help="one-parameter deficit sweep")
    _add_couplings(p)
    _add_temperature(p)
    p.add_argument("--model", default=None, help="xy or ext-ising (inferred if omitted)")
    p.add_argument("--param", default=None, help="swept coupling (inferred if omitted)")
    p.add_argument("--range", required=True, help="lo:hi:N")
    p.add_argument("--critical-points", action="store_true", help="validate extrema against them")
    p.add_argument("--window", type=float, default=0.1)
    p.add_argument("--out", default=None)
    _add_numerics(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("critical-points", help="roots of the characteristic equation")
    _add_couplings(p)
    p.add_argument("--free", default=None, help="h or lambda (inferred if omitted)")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_critical_points)

    p = sub.add_parser("spectrum", help="finite-chain dispersion branches")
    _add_couplings(p)
    p.add_argument("--L", type=int, default=200)
    p.add_argument("--range", default=None, help="sweep the missing coupling over lo:hi:N")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("winding", help="(Y, Z) loop and winding number")
    _add_couplings(p)
    p.add_argument("--range", default=None, help="sweep the missing coupling over lo:hi:N")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_winding)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if err.code is not None else 0

    sink = open(args.out, "w") if getattr(args, "out", None) else nullcontext(sys.stdout)
    try:
        with sink as out:
            return args.handler(args, out)
    except ConfigError as err:
        sys.stderr.write(f"configuration error: {err}\n")
        return 2
    except (SingularIntegrand, GapClosed, ConvergenceFailure, NoRoots, NonPhysicalState) as err:
        detail = ""
        if isinstance(err, SingularIntegrand) and err.x is not None:
            detail = f" at x={err.x!r}"
        sys.stderr.write(f"numerical failure{detail}: {err}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
