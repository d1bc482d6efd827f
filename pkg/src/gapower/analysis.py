"""One-call pipeline: phase samples -> vectors -> power -> decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .decomp import CurrentDecomposition, decompose
from .geompower import (
    GeomPowerTrace,
    PowerSummary,
    build_current,
    build_voltage,
    instantaneous_power,
    summarize,
)
from .impedance import ImpedanceTrace, phase_impedance
from .multivector import GeomVector
from .waveform import DEFAULT_THRESHOLD, HarmonicSupport, PhaseSignal, harmonic_support

__all__ = ["Analysis", "analyze", "analyze_scenario"]


@dataclass(frozen=True, eq=False)
class Analysis:
    u: GeomVector
    i: GeomVector
    support: HarmonicSupport
    trace: GeomPowerTrace
    summary: PowerSummary
    decomposition: CurrentDecomposition

    @property
    def grid(self):
        return self.u.grid

    def impedance(self, phase: int) -> ImpedanceTrace:
        return phase_impedance(self.u, self.i.in_band(), phase)


def analyze(
    voltages: Sequence[PhaseSignal],
    currents: Sequence[PhaseSignal],
    threshold: float = DEFAULT_THRESHOLD,
    nonlinear: bool = False,
) -> Analysis:
    """Run the full analysis on one period of multi-phase samples.

    The in-band support is taken from the voltage spectrum (orders above
    ``threshold`` times the largest voltage harmonic).
    """
    if len(voltages) != len(currents):
        raise ValueError(f"{len(voltages)} voltage phase(s) but {len(currents)} current phase(s)")
    support = harmonic_support(voltages, threshold)
    u = build_voltage(voltages)
    i = build_current(currents, support, nonlinear=nonlinear)
    trace = instantaneous_power(u, i)
    return Analysis(
        u=u,
        i=i,
        support=support,
        trace=trace,
        summary=summarize(trace, u, i),
        decomposition=decompose(u, i),
    )


def analyze_scenario(scenario, threshold: float = DEFAULT_THRESHOLD, nonlinear: bool = False) -> Analysis:
    return analyze(
        scenario.voltage_signals(), scenario.current_signals(), threshold=threshold, nonlinear=nonlinear
    )
