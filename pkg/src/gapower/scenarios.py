"""Reference circuits and a plain complex-phasor steady-state solver.

Nothing here touches the geometric-algebra kernel: the phasor solution is
the independent oracle the GA pipeline is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .waveform import DEFAULT_N_SAMPLES, HarmonicSeries, PhaseSignal, SamplingGrid, sample_series

__all__ = [
    "DcWithCapacitor",
    "Scenario",
    "SeriesRLC",
    "CIRCUIT_A",
    "CIRCUIT_B",
    "builtin",
    "example1",
    "example2",
    "per_element_voltages",
    "solve_rlc",
]

SQRT2 = math.sqrt(2.0)
DEG120 = 2.0 * math.pi / 3.0


class DcWithCapacitor(ValueError):
    """A dc voltage term was applied across a series capacitor."""


@dataclass(frozen=True)
class SeriesRLC:
    """Series R-L-C branch. ``L=0`` and ``C=None`` mean the element is absent."""

    R: float = 0.0
    L: float = 0.0
    C: float | None = None

    def __post_init__(self):
        if self.R < 0 or self.L < 0:
            raise ValueError("R and L must be non-negative")
        if self.C is not None and not self.C > 0:
            raise ValueError("C must be positive (or None when absent)")
        values = [self.R, self.L] + ([self.C] if self.C is not None else [])
        if not all(math.isfinite(v) for v in values):
            raise ValueError("element values must be finite")
        if self.R == 0 and self.L == 0 and self.C is None:
            raise ValueError("at least one element must be present")

    def impedance(self, h: int, omega: float) -> complex:
        """Complex impedance at harmonic order ``h``."""
        if h == 0:
            if self.C is not None:
                raise DcWithCapacitor("dc voltage across a series capacitor")
            return complex(self.R, 0.0)
        w = h * omega
        x = w * self.L
        if self.C is not None:
            x -= 1.0 / (w * self.C)
        return complex(self.R, x)


CIRCUIT_A = SeriesRLC(R=1.0, L=0.5, C=2.0 / 3.0)
CIRCUIT_B = SeriesRLC(R=1.0, L=0.5, C=2.0 / 7.0)


def solve_rlc(circ: SeriesRLC, v: HarmonicSeries) -> HarmonicSeries:
    """Steady-state current of a series RLC branch driven by ``v``."""
    currents = {}
    for h in v.terms:
        z = circ.impedance(h, v.omega)
        if z == 0:
            raise ZeroDivisionError(f"branch is a short circuit at order {h}")
        currents[h] = v.phasor(h) / z
    return HarmonicSeries.from_phasors(currents, v.omega)


def per_element_voltages(circ: SeriesRLC, i: HarmonicSeries):
    """``(v_R, v_L, v_C)`` for current ``i``; absent elements give empty series."""
    vr, vl, vc = {}, {}, {}
    for h in i.terms:
        I = i.phasor(h)
        w = h * i.omega
        vr[h] = circ.R * I
        if circ.L:
            vl[h] = 1j * w * circ.L * I
        if circ.C is not None:
            if h == 0:
                raise DcWithCapacitor("dc current through a series capacitor")
            vc[h] = I / (1j * w * circ.C)
    return tuple(HarmonicSeries.from_phasors(p, i.omega) for p in (vr, vl, vc))


@dataclass(frozen=True, eq=False)
class Scenario:
    """Multi-phase voltage and current given as harmonic series.

    ``meta`` carries the expected closed-form results used by the tests and
    demos (numbers, or callables of ``t``).
    """

    name: str
    grid: SamplingGrid
    voltage: tuple[HarmonicSeries, ...]
    current: tuple[HarmonicSeries, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.voltage) != len(self.current) or not self.voltage:
            raise ValueError("voltage and current need the same, non-zero phase count")

    @property
    def n_phases(self) -> int:
        return len(self.voltage)

    def voltage_signals(self) -> list[PhaseSignal]:
        return [sample_series(s, self.grid) for s in self.voltage]

    def current_signals(self) -> list[PhaseSignal]:
        return [sample_series(s, self.grid) for s in self.current]


# published two-decimal RMS norms for the two circuits
_REFERENCE_NORMS = {
    "a": {"p": 100.00, "q": 0.00, "F": 70.71, "f": 70.71, "B": 0.00, "b": 0.00, "i": 100.00},
    "b": {"p": 82.45, "q": 56.56, "F": 70.71, "f": 42.42, "B": 0.00, "b": 56.56, "i": 100.00},
}


def example1(variant: str = "a", n_samples: int = DEFAULT_N_SAMPLES) -> Scenario:
    """Single-phase series RLC fed by ``100*sqrt(2)*(sin t + sin 3t)``."""
    variant = variant.lower()
    circ = {"a": CIRCUIT_A, "b": CIRCUIT_B}.get(variant)
    if circ is None:
        raise ValueError(f"unknown example1 variant {variant!r} (expected 'a' or 'b')")
    grid = SamplingGrid(1.0, n_samples)
    v = HarmonicSeries({1: (0.0, 100 * SQRT2), 3: (0.0, 100 * SQRT2)}, 1.0)
    i = solve_rlc(circ, v)

    if variant == "a":
        m_p = lambda t: 10_000 * (1 + np.sin(2 * t) + np.cos(2 * t))
        m_q = lambda t: np.zeros_like(t)
        r = lambda t: 1 + np.cos(2 * t) / (1 + np.sin(2 * t))
        x = lambda t: np.zeros_like(t)
    else:
        m_p = lambda t: 10_000 + 6_000 * np.sin(2 * t) + 10_000 * np.cos(2 * t)
        m_q = lambda t: -8_000 * np.sin(2 * t)
        r = lambda t: 1 + 5 * np.cos(2 * t) / (5 + 3 * np.sin(2 * t))
        x = lambda t: -4 * np.sin(2 * t) / (5 + 3 * np.sin(2 * t))

    meta = {
        "circuit": circ,
        "P": 10_000.0,
        "Q": 0.0,
        "rms": dict(_REFERENCE_NORMS[variant]),
        "m_p": m_p,
        "m_q_11h": m_q,
        "r": r,
        "x": x,
    }
    return Scenario(f"ex1{variant}", grid, (v,), (i,), meta)


def _cos_series(amplitude: float, angle: float, omega: float) -> HarmonicSeries:
    """``amplitude * cos(w t + angle)`` as a harmonic series."""
    return HarmonicSeries(
        {1: (amplitude * math.cos(angle), -amplitude * math.sin(angle))}, omega
    )


def example2(
    U: float = 230.0, omega: float = 1.0, G: float = 1.0, n_samples: int = DEFAULT_N_SAMPLES
) -> Scenario:
    """Balanced sinusoidal supply with a single resistor ``G`` on phase R."""
    grid = SamplingGrid(omega, n_samples)
    angles = (0.0, -DEG120, DEG120)
    voltage = tuple(_cos_series(SQRT2 * U, a, omega) for a in angles)
    current = (
        _cos_series(SQRT2 * G * U, 0.0, omega),
        HarmonicSeries({}, omega),
        HarmonicSeries({}, omega),
    )
    amp = SQRT2 * G * U / 3.0

    def three(shifts) -> Callable:
        return lambda t: np.vstack([amp * np.cos(omega * t + s) for s in shifts])

    meta = {
        "U": U,
        "G": G,
        "P": G * U * U,
        "Q": 0.0,
        "i_p": three(angles),
        "i_q": lambda t: np.vstack(
            [2 * amp * np.cos(omega * t), -amp * np.cos(omega * t - DEG120), -amp * np.cos(omega * t + DEG120)]
        ),
        "i_0": three((0.0, 0.0, 0.0)),
        "i_neg": three((0.0, DEG120, -DEG120)),
    }
    return Scenario("ex2", grid, voltage, current, meta)


BUILTINS = ("ex1a", "ex1b", "ex2")


def builtin(name: str, n_samples: int = DEFAULT_N_SAMPLES) -> Scenario:
    if name == "ex1a":
        return example1("a", n_samples)
    if name == "ex1b":
        return example1("b", n_samples)
    if name == "ex2":
        return example2(n_samples=n_samples)
    raise KeyError(f"unknown demo {name!r}; choose from {', '.join(BUILTINS)}")
