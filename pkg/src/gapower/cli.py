"""Command-line front end.

    gapower analyze (--csv FILE | --demo NAME | --config FILE) [options]
    gapower hilbert FILE --column NAME [--out FILE]
    gapower demo NAME [--out DIR]
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import io
from .analysis import analyze
from .decomp import project_time, sequence_split
from .geompower import OutOfBandInLinearMode
from .impedance import AllSingular
from .multivector import NearZeroVector
from .scenarios import BUILTINS, builtin
from .waveform import DEFAULT_THRESHOLD, PhaseSignal, hilbert, hilbert_array

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_MALFORMED = 4
EXIT_NEAR_ZERO = 5
EXIT_OUT_OF_BAND = 6
EXIT_ALL_SINGULAR = 7

_EPILOG = f"""exit codes:
  {EXIT_OK}  success
  {EXIT_ERROR}  unexpected error
  {EXIT_USAGE}  usage error (bad flags, unknown demo or column)
  {EXIT_IO}  file could not be read or written
  {EXIT_MALFORMED}  malformed input (CSV/config layout, non-uniform time, aliasing)
  {EXIT_NEAR_ZERO}  voltage vector vanishes where it must be inverted
  {EXIT_OUT_OF_BAND}  out-of-band current in linear mode (use --nonlinear)
  {EXIT_ALL_SINGULAR}  impedance requested for a phase whose current is zero
"""


class UsageError(Exception):
    pass


def _scenario(name, samples):
    if name not in BUILTINS:
        raise UsageError(f"unknown demo {name!r}; choose from {', '.join(BUILTINS)}")
    return builtin(name, samples) if samples else builtin(name)


def _load_input(args):
    if args.csv is not None:
        if args.samples is not None:
            raise UsageError("--samples cannot be combined with --csv (no resampling)")
        _, volts, amps = io.read_waveform_csv(args.csv)
        return volts, amps
    if args.demo is not None:
        scen = _scenario(args.demo, args.samples)
    else:
        scen = io.read_scenario_config(args.config, n_samples=args.samples)
    return scen.voltage_signals(), scen.current_signals()


def _write_analysis(result, out: Path, impedance_phases=()) -> None:
    out.mkdir(parents=True, exist_ok=True)
    io.write_summary_json(out / "summary.json", result.summary)
    io.write_decomp_csv(out / "decomp.csv", result.decomposition)
    io.write_power_csv(out / "power.csv", result.trace)
    for k in impedance_phases:
        if not 1 <= k <= result.u.n_phases:
            raise UsageError(f"--impedance phase {k} out of range 1..{result.u.n_phases}")
        io.write_impedance_csv(out / f"impedance_{k}.csv", result.impedance(k), k)


def _report(result) -> None:
    s = result.summary
    print(f"P = {io.fmt(s.P)} W")
    print(f"Q = {io.fmt(s.Q)} var")
    print(io.format_norms_table(result.decomposition))


def cmd_analyze(args) -> int:
    if not 0 < args.threshold < 1:
        raise UsageError("--threshold must lie in (0, 1)")
    volts, amps = _load_input(args)
    result = analyze(volts, amps, threshold=args.threshold, nonlinear=args.nonlinear)
    _write_analysis(result, Path(args.out), args.impedance or ())
    _report(result)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    path = Path(args.file)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise io.MalformedInput(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if args.column not in header:
        raise UsageError(f"unknown column {args.column!r}; available: {', '.join(header)}")
    try:
        grid, _, _ = io.read_waveform_csv(path)
    except io.MalformedInput:
        grid = None
    col = header.index(args.column)
    try:
        values = np.array([float(r[col]) for r in rows[1:]])
    except (ValueError, IndexError) as exc:
        raise io.MalformedInput(f"{path}: {exc}") from None
    # a non-waveform CSV is still transformed, treating the rows as one period
    transformed = hilbert(PhaseSignal(grid, values)).samples if grid else hilbert_array(values)
    out = Path(args.out) if args.out else path.with_name(f"{path.stem}_hilbert.csv")
    t = grid.t if grid else np.arange(values.size)
    io._write_rows(out, ["t", args.column, f"H_{args.column}"], [t, values, transformed])
    print(f"wrote {out}")
    return EXIT_OK


def cmd_demo(args) -> int:
    scen = _scenario(args.name, args.samples)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.export_scenario(scen, out / "waveform.csv")
    result = analyze(scen.voltage_signals(), scen.current_signals())
    phases = (1,) if scen.n_phases == 1 else ()
    _write_analysis(result, out, phases)
    if scen.n_phases == 3:
        zero, neg, pos = sequence_split(result.decomposition["q"])
        io.write_sequence_csv(
            out / "sequences.csv",
            {"i0": project_time(zero), "ineg": project_time(neg), "ipos": project_time(pos)},
        )
    _report(result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapower",
        description="Time-domain geometric-algebra power analysis of periodic waveforms.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyse one period of voltages and currents",
                       epilog=_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--csv", help="waveform CSV with header t,u1..un,i1..in")
    src.add_argument("--demo", help=f"builtin scenario: {', '.join(BUILTINS)}")
    src.add_argument("--config", help="scenario config file")
    p.add_argument("--samples", type=int, help="samples per period (demo/config input)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                   help="relative amplitude cutoff for in-band harmonics (default %(default)g)")
    p.add_argument("--nonlinear", action="store_true",
                   help="route out-of-band current to the breve axes instead of failing")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--impedance", type=int, action="append", metavar="PHASE",
                   help="also write impedance_<PHASE>.csv (repeatable)")
    p.set_defaults(func=cmd_analyze)

    h = sub.add_parser("hilbert", help="append the Hilbert transform of one column")
    h.add_argument("file")
    h.add_argument("--column", required=True)
    h.add_argument("--out", help="output CSV (default: <file>_hilbert.csv)")
    h.set_defaults(func=cmd_hilbert)

    d = sub.add_parser("demo", help="materialise a builtin scenario with its full analysis")
    d.add_argument("name", help=f"one of {', '.join(BUILTINS)}")
    d.add_argument("--samples", type=int)
    d.add_argument("--out", default=".", help="output directory")
    d.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gapower: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gapower: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NearZeroVector as exc:
        print(f"gapower: error: {exc}", file=sys.stderr)
        return EXIT_NEAR_ZERO
    except OutOfBandInLinearMode as exc:
        print(f"gapower: error: {exc} (rerun with --nonlinear)", file=sys.stderr)
        return EXIT_OUT_OF_BAND
    except AllSingular as exc:
        print(f"gapower: error: {exc}", file=sys.stderr)
        return EXIT_ALL_SINGULAR
    except ValueError as exc:
        # MalformedInput, AliasingError, grid problems
        print(f"gapower: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
