"""Instantaneous geometric impedance of one phase.

``Z_k = u_k i_k^-1 = R_k + X_k s_{k kh}`` is evaluated directly from the two
analytic pairs: with ``d = i^2 + H[i]^2``,

    R = (u i + H[u] H[i]) / d,     X = (u H[i] - H[u] i) / d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .multivector import HAT, PLAIN, GeomVector
from .waveform import PhaseSignal, SamplingGrid

__all__ = ["AllSingular", "ImpedanceTrace", "instantaneous_impedance", "phase_impedance"]

SINGULAR_RTOL = 1e-9


class AllSingular(ArithmeticError):
    """The current vanishes at every sample; no impedance can be formed."""


@dataclass(frozen=True, eq=False)
class ImpedanceTrace:
    """Per-sample resistance and reactance; ``nan`` at singular samples."""

    grid: SamplingGrid
    r: np.ndarray
    x: np.ndarray
    singular: np.ndarray

    @property
    def regular(self) -> np.ndarray:
        mask = np.ones(self.grid.n_samples, dtype=bool)
        mask[self.singular] = False
        return mask


def _series(x) -> np.ndarray:
    return np.asarray(x.samples if isinstance(x, PhaseSignal) else x, dtype=float)


def instantaneous_impedance(u_pair, i_pair, grid: SamplingGrid | None = None) -> ImpedanceTrace:
    """Impedance from ``(plain, hat)`` voltage and current pairs.

    Pairs may hold :class:`PhaseSignal` objects or plain arrays (then
    ``grid`` is required). Samples where ``d`` drops below ``1e-9`` of its
    peak are flagged as singular instead of being divided through.
    """
    if grid is None:
        grid = u_pair[0].grid
    for s in (*u_pair, *i_pair):
        if isinstance(s, PhaseSignal):
            grid.check(s.grid)
    u, hu = (_series(s) for s in u_pair)
    i, hi = (_series(s) for s in i_pair)
    d = i * i + hi * hi
    peak = d.max()
    if peak <= 0:
        raise AllSingular("current is zero at every sample")
    singular = np.flatnonzero(d <= SINGULAR_RTOL * peak)
    if singular.size == d.size:
        raise AllSingular("current is negligible at every sample")
    safe = d.copy()
    safe[singular] = 1.0
    r = (u * i + hu * hi) / safe
    x = (u * hi - hu * i) / safe
    r[singular] = np.nan
    x[singular] = np.nan
    return ImpedanceTrace(grid, r, x, singular)


def phase_impedance(u: GeomVector, i: GeomVector, phase: int) -> ImpedanceTrace:
    """Impedance of ``phase`` from in-band geometric vectors."""
    u.grid.check(i.grid)
    return instantaneous_impedance(
        (u.component(phase, PLAIN), u.component(phase, HAT)),
        (i.component(phase, PLAIN), i.component(phase, HAT)),
        grid=u.grid,
    )
