"""Text file formats: waveform CSV, scenario config and analysis outputs.

Analysis outputs use 9 significant digits with a ``.`` decimal separator so
that identical inputs give byte-identical files. Waveform exports use 17
significant digits, which round-trips binary doubles exactly.
"""

from __future__ import annotations

import configparser
import csv
import json
import math
import re
from pathlib import Path
from typing import Sequence

import numpy as np

from .multivector import blade_label
from .scenarios import Scenario
from .waveform import HarmonicSeries, PhaseSignal, SamplingGrid

__all__ = [
    "MalformedInput",
    "export_scenario",
    "fmt",
    "format_norms_table",
    "read_scenario_config",
    "read_waveform_csv",
    "summary_dict",
    "write_decomp_csv",
    "write_impedance_csv",
    "write_power_csv",
    "write_sequence_csv",
    "write_summary_json",
    "write_waveform_csv",
]

TIME_RTOL = 1e-9
DECOMP_COLUMNS = ("ip", "iq", "iF", "if", "iB", "ib", "iperp")
_DECOMP_KEYS = ("p", "q", "F", "f", "B", "b", "perp")


class MalformedInput(ValueError):
    """An input file does not follow its documented layout."""


def fmt(x: float, digits: int = 9) -> str:
    if math.isnan(x):
        return "nan"
    s = f"{x:.{digits}g}"
    return "0" if s == "-0" else s


def _write_rows(path, header: Sequence[str], columns: Sequence[np.ndarray], digits: int = 9) -> None:
    cols = [np.asarray(c, dtype=float) for c in columns]
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*cols):
            fh.write(",".join(fmt(v, digits) for v in row) + "\n")


# --------------------------------------------------------------------------
# waveform CSV


def write_waveform_csv(path, voltages: Sequence[PhaseSignal], currents: Sequence[PhaseSignal]) -> None:
    grid = voltages[0].grid
    n = len(voltages)
    header = ["t"] + [f"u{k}" for k in range(1, n + 1)] + [f"i{k}" for k in range(1, n + 1)]
    cols = [grid.t] + [s.samples for s in voltages] + [s.samples for s in currents]
    _write_rows(path, header, cols, digits=17)


def export_scenario(scenario: Scenario, path) -> None:
    write_waveform_csv(path, scenario.voltage_signals(), scenario.current_signals())


def read_waveform_csv(path):
    """Read ``t,u1..un,i1..in`` covering exactly one period.

    Returns ``(grid, voltages, currents)``. The period is inferred from the
    sample spacing; every time stamp must sit on ``j*T/N`` to within
    ``1e-9*T``.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise MalformedInput(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if len(header) < 3 or header[0] != "t" or (len(header) - 1) % 2:
        raise MalformedInput(f"{path}: header must be t,u1..un,i1..in, got {','.join(header)}")
    n = (len(header) - 1) // 2
    expected = ["t"] + [f"u{k}" for k in range(1, n + 1)] + [f"i{k}" for k in range(1, n + 1)]
    if header != expected:
        raise MalformedInput(f"{path}: header must be {','.join(expected)}")
    body = rows[1:]
    data = np.empty((len(body), len(header)))
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise MalformedInput(f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}")
        try:
            data[lineno - 2] = [float(c) for c in row]
        except ValueError as exc:
            raise MalformedInput(f"{path}:{lineno}: {exc}") from None
    if not np.all(np.isfinite(data)):
        raise MalformedInput(f"{path}: non-finite values")
    N = data.shape[0]
    if N < 4 or N % 2:
        raise MalformedInput(f"{path}: need an even number (>= 4) of samples, got {N}")
    t = data[:, 0]
    dt = (t[-1] - t[0]) / (N - 1)
    if not dt > 0:
        raise MalformedInput(f"{path}: time column must increase")
    T = N * dt
    if abs(t[0]) > TIME_RTOL * T:
        raise MalformedInput(f"{path}: the period must start at t=0")
    dev = np.abs(t - np.arange(N) * dt).max()
    if dev > TIME_RTOL * T:
        raise MalformedInput(f"{path}: time column is not uniformly spaced (deviation {dev:.3g})")
    grid = SamplingGrid(2.0 * math.pi / T, N)
    volts = [PhaseSignal(grid, data[:, 1 + k]) for k in range(n)]
    amps = [PhaseSignal(grid, data[:, 1 + n + k]) for k in range(n)]
    return grid, volts, amps


# --------------------------------------------------------------------------
# scenario config

_TERM_KEY = re.compile(r"^([ui])(\d+)\.h(\d+)$")


def read_scenario_config(path, n_samples: int | None = None) -> Scenario:
    """Key-value scenario file.

    Keys: ``omega``, ``n_samples``, ``phases`` and harmonic terms
    ``u<k>.h<h> = a, b`` / ``i<k>.h<h> = a, b`` meaning
    ``a cos(h w t) + b sin(h w t)``. ``#`` starts a comment.
    """
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        parser.read_string("[scenario]\n" + path.read_text(encoding="utf-8"))
    except configparser.Error as exc:
        raise MalformedInput(f"{path}: {exc}") from None
    sec = parser["scenario"]
    try:
        omega = float(sec.get("omega", "1"))
        n = int(sec.get("n_samples", "4096")) if n_samples is None else n_samples
        phases = int(sec["phases"])
    except (KeyError, ValueError) as exc:
        raise MalformedInput(f"{path}: bad or missing omega/n_samples/phases ({exc})") from None
    if phases < 1:
        raise MalformedInput(f"{path}: phases must be >= 1")
    terms = {"u": [dict() for _ in range(phases)], "i": [dict() for _ in range(phases)]}
    for key, value in sec.items():
        if key in ("omega", "n_samples", "phases"):
            continue
        m = _TERM_KEY.match(key)
        if not m:
            raise MalformedInput(f"{path}: unknown key {key!r}")
        kind, k, h = m.group(1), int(m.group(2)), int(m.group(3))
        if not 1 <= k <= phases:
            raise MalformedInput(f"{path}: phase {k} out of range in {key!r}")
        try:
            a, b = (float(x) for x in value.split(","))
        except ValueError:
            raise MalformedInput(f"{path}: {key} needs 'a, b', got {value!r}") from None
        terms[kind][k - 1][h] = (a, b)
    try:
        grid = SamplingGrid(omega, n)
        volts = tuple(HarmonicSeries(t, omega) for t in terms["u"])
        amps = tuple(HarmonicSeries(t, omega) for t in terms["i"])
    except ValueError as exc:
        raise MalformedInput(f"{path}: {exc}") from None
    return Scenario(path.stem, grid, volts, amps)


# --------------------------------------------------------------------------
# analysis outputs


def summary_dict(summary) -> dict:
    out = {
        "P": float(fmt(summary.P)),
        "Q": float(fmt(summary.Q)),
        "rms_u": float(fmt(summary.rms_u)),
        "rms_i": float(fmt(summary.rms_i)),
    }
    for key, value in summary.mq_mean.items():
        out[f"mq_mean.{blade_label(key)}"] = float(fmt(value))
    return out


def write_summary_json(path, summary) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(summary_dict(summary), fh, indent=2)
        fh.write("\n")


def write_power_csv(path, trace) -> None:
    header = ["t", "Mp"]
    cols = [trace.grid.t, trace.m_p]
    for key, s in trace.m_q.items():
        header.append(f"Mq_{blade_label(key)}")
        cols.append(s)
    for key, s in trace.m_perp.items():
        header.append(f"Mperp_{blade_label(key)}")
        cols.append(s)
    header.append("p_classic")
    cols.append(trace.p_classic)
    _write_rows(path, header, cols)


def write_decomp_csv(path, decomposition) -> None:
    grid = decomposition.components["p"].grid
    header, cols = ["t"], [grid.t]
    for label, key in zip(DECOMP_COLUMNS, _DECOMP_KEYS):
        for k, sig in enumerate(decomposition.time_domain[key], start=1):
            header.append(f"{label}_{k}")
            cols.append(sig.samples)
    _write_rows(path, header, cols)


def write_impedance_csv(path, trace, phase: int) -> None:
    flags = np.zeros(trace.grid.n_samples)
    flags[trace.singular] = 1
    _write_rows(
        path, ["t", f"R_{phase}", f"X_{phase}", "singular"], [trace.grid.t, trace.r, trace.x, flags]
    )


def write_sequence_csv(path, parts: dict[str, list[PhaseSignal]]) -> None:
    """Plot data for symmetrical components: ``<name>_<k>`` per phase."""
    first = next(iter(parts.values()))
    header, cols = ["t"], [first[0].grid.t]
    for name, signals in parts.items():
        for k, sig in enumerate(signals, start=1):
            header.append(f"{name}_{k}")
            cols.append(sig.samples)
    _write_rows(path, header, cols)


def truncate2(x: float) -> float:
    """Cut (not round) to two decimals, tolerating round-off just below a cut."""
    return math.copysign(math.floor(abs(x) * 100.0 + 1e-6) / 100.0, x)


def format_norms_table(decomposition) -> str:
    """RMS of the vector norm per component, truncated to two decimals."""
    lines = [f"{'current':<8}{'rms':>10}"]
    for label, value in decomposition.table():
        lines.append(f"{label:<8}{truncate2(value):>10.2f}")
    return "\n".join(lines)
