"""Command-line front end.

Exit codes: 0 success, 1 usage/config error, 2 numerical invariant
violation, 3 I/O failure.  Diagnostics go to stderr, data to stdout or to
the requested output file.  Numeric output is fixed at 12 significant
digits so regenerated outputs are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import analytic, channels, sweep
from .channels import ChannelSpec
from .entanglement import negativity as pt_negativity
from .errors import (
    CompletenessViolation,
    IoFailure,
    NegativeEigenvalue,
    NotHermitian,
    OutOfRange,
    SimulationError,
    TraceDeviation,
)
from .state import unruh_state

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_IO = 3

_KIND_FLAGS = {
    "phase-flip": channels.PHASE_FLIP,
    "dephasing": channels.DEPHASING,
    "bit-trit-flip": channels.BIT_TRIT_FLIP,
    "bit-trit-phase-flip": channels.BIT_TRIT_PHASE_FLIP,
}
_COUPLING_FLAGS = {"multilocal": channels.MULTILOCAL, "ml": channels.MULTILOCAL,
                   "global": channels.GLOBAL}
_VARIANT_FLAGS = {"as-printed": channels.AS_PRINTED, "corrected": channels.CORRECTED}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1, not argparse's default 2
        raise UsageError(message)


def parse_angle(text: str) -> float:
    """Accept decimal radians or literals like 'pi', 'pi/4', '3*pi/10'."""
    s = text.strip().lower().replace(" ", "")
    try:
        return float(s)
    except ValueError:
        pass
    mult = 1.0
    if "*pi" in s:
        head, _, tail = s.partition("*pi")
        try:
            mult = float(head)
        except ValueError:
            raise UsageError(f"cannot parse angle {text!r}")
        s = "pi" + tail
    if s == "pi":
        return mult * math.pi
    if s.startswith("pi/"):
        try:
            return mult * math.pi / float(s[3:])
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse angle {text!r}")
    raise UsageError(f"cannot parse angle {text!r}")


def _parse_p_grid(text: str):
    """Either an integer point count (linspace over [0,1]) or a comma list."""
    s = text.strip()
    try:
        n = int(s)
        if n < 2:
            raise UsageError("p grid needs at least 2 points")
        return [float(x) for x in np.linspace(0.0, 1.0, n)]
    except ValueError:
        pass
    try:
        return [float(x) for x in s.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse p grid {text!r}")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _fmt_complex(z: complex) -> str:
    if z.imag == 0.0:
        return _fmt(z.real)
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _build_parser() -> _Parser:
    parser = _Parser(prog="unruhsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key = value file overriding flag defaults")

    p_state = sub.add_parser("state", parents=[], help="print the initial state")
    p_state.add_argument("--r", default="0", help="acceleration in [0, pi/4]")
    add_common(p_state)

    p_check = sub.add_parser("check-channels", help="completeness table")
    p_check.add_argument("--variant", choices=sorted(_VARIANT_FLAGS), default=None,
                         help="restrict to one variant (default: both)")
    p_check.add_argument("--p", default="11", dest="p_grid",
                         help="point count or comma list of p values")
    add_common(p_check)

    p_neg = sub.add_parser("negativity", help="single point evaluation")
    p_neg.add_argument("--channel", choices=sorted(_KIND_FLAGS), required=True)
    p_neg.add_argument("--coupling", choices=sorted(_COUPLING_FLAGS), required=True)
    p_neg.add_argument("--p", default="0", help="linked decoherence parameter")
    p_neg.add_argument("--p1", default=None, help="qubit local parameter override")
    p_neg.add_argument("--p2", default=None, help="qutrit local parameter override")
    p_neg.add_argument("--r", required=True, help="acceleration in [0, pi/4]")
    p_neg.add_argument("--global-mode", choices=sorted(channels.GLOBAL_MODES),
                       default=channels.PRODUCT)
    p_neg.add_argument("--variant", choices=sorted(_VARIANT_FLAGS),
                       default="corrected")
    add_common(p_neg)

    p_sweep = sub.add_parser("sweep", help="grid sweep to CSV or plot data")
    p_sweep.add_argument("--channel", choices=sorted(_KIND_FLAGS), required=True)
    p_sweep.add_argument("--coupling", choices=sorted(_COUPLING_FLAGS), required=True)
    p_sweep.add_argument("--axis", choices=["p", "r", "grid"], required=True)
    p_sweep.add_argument("--r", default="0", help="fixed acceleration (p axis)")
    p_sweep.add_argument("--p", default="0", help="fixed linked p (r axis)")
    p_sweep.add_argument("--steps", type=int, default=101)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--plot-data", action="store_true",
                         help="write gnuplot-style blocks instead of CSV")
    p_sweep.add_argument("--global-mode", choices=sorted(channels.GLOBAL_MODES),
                         default=channels.PRODUCT)
    p_sweep.add_argument("--variant", choices=sorted(_VARIANT_FLAGS),
                         default="corrected")
    add_common(p_sweep)

    p_esd = sub.add_parser("esd", help="sudden-death threshold (linked p)")
    p_esd.add_argument("--channel", choices=sorted(_KIND_FLAGS), required=True)
    p_esd.add_argument("--coupling", choices=sorted(_COUPLING_FLAGS), required=True)
    p_esd.add_argument("--r", required=True)
    p_esd.add_argument("--tol", type=float, default=1e-6)
    p_esd.add_argument("--global-mode", choices=sorted(channels.GLOBAL_MODES),
                       default=channels.PRODUCT)
    add_common(p_esd)

    p_verify = sub.add_parser("verify", help="closed form vs numeric pipeline")
    p_verify.add_argument("--channel", choices=["phase-flip", "dephasing"],
                          required=True)
    p_verify.add_argument("--coupling", choices=sorted(_COUPLING_FLAGS),
                          required=True)
    p_verify.add_argument("--global-mode", choices=sorted(channels.GLOBAL_MODES),
                          default=channels.PRODUCT)
    p_verify.add_argument("--grid", type=int, default=None,
                          help="grid points per axis (default 21 ml, 11 global)")
    p_verify.add_argument("--csv", default=None, help="also write the report as CSV")
    add_common(p_verify)

    p_repro = sub.add_parser("repro", help="regenerate a preset figure dataset")
    p_repro.add_argument("--figure", choices=list(sweep.FIGURES), required=True)
    p_repro.add_argument("--out-dir", required=True)
    add_common(p_repro)

    return parser


def _apply_config(parser: _Parser, argv: list[str], args) -> argparse.Namespace:
    """Re-parse with defaults overridden by the config file, if any."""
    path = getattr(args, "config", None)
    if not path:
        return args
    try:
        with open(path, "r") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}")
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        overrides[key.strip().replace("-", "_")] = value.strip()
    known = set(vars(args)) - {"command", "config"}
    for key in overrides:
        if key not in known:
            raise UsageError(
                f"unknown config key {key!r} for subcommand {args.command!r}"
            )
    # Config overrides defaults; flags given explicitly on the command
    # line still win.
    explicit = {
        tok[2:].split("=", 1)[0].replace("-", "_")
        for tok in argv
        if tok.startswith("--")
    }
    for key, value in overrides.items():
        if key in explicit:
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, value.lower() in ("1", "true", "yes", "on"))
        elif isinstance(current, int) and not isinstance(current, bool):
            setattr(args, key, int(value))
        elif isinstance(current, float):
            setattr(args, key, float(value))
        else:
            setattr(args, key, value)
    return args


def _channel_spec(args, linked_p: float | None = None) -> ChannelSpec:
    kind = _KIND_FLAGS[args.channel]
    coupling = _COUPLING_FLAGS[args.coupling]
    variant = _VARIANT_FLAGS.get(getattr(args, "variant", "corrected"), "corrected")
    p = float(getattr(args, "p", 0.0) or 0.0) if linked_p is None else linked_p
    p1 = float(args.p1) if getattr(args, "p1", None) is not None else p
    p2 = float(args.p2) if getattr(args, "p2", None) is not None else p
    return ChannelSpec(
        kind=kind,
        coupling=coupling,
        p1=p1,
        p2=p2,
        p=p if coupling == channels.GLOBAL else 0.0,
        global_mode=getattr(args, "global_mode", channels.PRODUCT),
        variant=variant,
    )


def _cmd_state(args) -> int:
    rho = unruh_state(parse_angle(args.r))
    for row in rho.matrix:
        print(",".join(_fmt_complex(z) for z in row))
    return EXIT_OK


def _cmd_check_channels(args) -> int:
    variants = (
        [_VARIANT_FLAGS[args.variant]] if args.variant else list(channels.VARIANTS)
    )
    p_values = _parse_p_grid(args.p_grid)
    print("channel,side,variant,p,completeness_defect")
    for kind in channels.KINDS:
        for variant in variants:
            for p in p_values:
                kq = channels.qubit_channel(kind, p)
                print(f"{kind},qubit,{variant},{_fmt(p)},"
                      f"{_fmt(channels.completeness_defect(kq))}")
                kt = channels.qutrit_channel(kind, p, variant)
                print(f"{kind},qutrit,{variant},{_fmt(p)},"
                      f"{_fmt(channels.completeness_defect(kt))}")
    return EXIT_OK


def _cmd_negativity(args) -> int:
    spec = _channel_spec(args)
    rho = channels.evolve(unruh_state(parse_angle(args.r)), spec)
    print(_fmt(pt_negativity(rho).negativity))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    axis = {"p": sweep.AXIS_P, "r": sweep.AXIS_R, "grid": sweep.AXIS_GRID}[args.axis]
    fixed_p = float(args.p)
    template = _channel_spec(args, linked_p=fixed_p)
    spec = sweep.SweepSpec(
        channel=template,
        axis=axis,
        r=parse_angle(args.r),
        p_count=args.steps,
        r_count=args.steps,
    )
    records = sweep.run_sweep(spec)
    if args.plot_data:
        count = sweep.write_plot_data(records, args.out)
        print(f"wrote {count} block(s) to {args.out}", file=sys.stderr)
    else:
        count = sweep.write_csv(records, args.out)
        print(f"wrote {count} row(s) to {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_esd(args) -> int:
    template = _channel_spec(args, linked_p=0.0)
    threshold = sweep.esd_threshold(template, parse_angle(args.r), p_tol=args.tol)
    print("none" if threshold is None else _fmt(threshold))
    return EXIT_OK


def _cmd_verify(args) -> int:
    kind = _KIND_FLAGS[args.channel]
    coupling = _COUPLING_FLAGS[args.coupling]
    grid = args.grid
    if grid is None:
        grid = 21 if coupling == channels.MULTILOCAL else 11
    report = analytic.verify_against_numeric(
        kind, coupling, global_mode=args.global_mode, grid_points=grid
    )
    sys.stdout.write(analytic.format_report(report))
    if args.csv:
        p1, p2, p, r = report.worst_point
        lines = [
            "channel,coupling,global_mode,grid,tolerance,"
            "max_abs_deviation,worst_p1,worst_p2,worst_p,worst_r,verdict",
            ",".join([
                report.kind, report.coupling, report.global_mode,
                report.grid_description.replace(",", ";"),
                _fmt(report.tolerance), _fmt(report.max_abs_deviation),
                _fmt(p1), _fmt(p2), _fmt(p), _fmt(r), report.verdict,
            ]),
        ]
        try:
            with open(args.csv, "w", newline="\n") as fh:
                fh.write("\n".join(lines) + "\n")
        except OSError as exc:
            raise IoFailure(f"cannot write {args.csv!r}: {exc}") from exc
    return EXIT_OK


def _cmd_repro(args) -> int:
    out_dir = args.out_dir
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {out_dir!r}: {exc}") from exc
    records = []
    for spec in sweep.figure_sweeps(args.figure):
        records.extend(sweep.run_sweep(spec))
    base = os.path.join(out_dir, f"fig{args.figure}")
    rows = sweep.write_csv(records, base + ".csv")
    blocks = sweep.write_plot_data(records, base + ".dat")
    print(f"wrote {rows} row(s) to {base}.csv and {blocks} block(s) to {base}.dat",
          file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "state": _cmd_state,
    "check-channels": _cmd_check_channels,
    "negativity": _cmd_negativity,
    "sweep": _cmd_sweep,
    "esd": _cmd_esd,
    "verify": _cmd_verify,
    "repro": _cmd_repro,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args = _apply_config(parser, argv, args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CompletenessViolation, NotHermitian, TraceDeviation,
            NegativeEigenvalue) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except IoFailure as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def run() -> None:
    sys.exit(main())
