"""Geometric voltage/current vectors and the instantaneous geometric power.

Each phase ``k`` contributes the analytic pair ``(x_k, H[x_k]) / sqrt(2)`` on
the ``(k, kh)`` axes. In nonlinear mode the current is first split into its
in-band part (orders present in the voltage) and an out-of-band remainder
which lives on the breve axis ``kb``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .multivector import (
    BREVE,
    HAT,
    PLAIN,
    GeomVector,
    Multivector,
    axis_channel,
    axis_index,
    geometric_product,
    mv_norm,
    vec_norm,
)
from .waveform import (
    GridMismatchError,
    HarmonicSupport,
    PhaseSignal,
    band_split,
    hilbert_array,
)

__all__ = [
    "GeomPowerTrace",
    "OutOfBandInLinearMode",
    "PowerSummary",
    "build_current",
    "build_voltage",
    "classify_load",
    "commutator_power",
    "instantaneous_power",
    "summarize",
    "tellegen_sum",
]

_SQRT2 = math.sqrt(2.0)


class OutOfBandInLinearMode(ValueError):
    """Current content outside the voltage support in linear mode."""

    def __init__(self, phase: int, ratio: float, threshold: float):
        super().__init__(
            f"phase {phase}: out-of-band current is {ratio:.3g} of its RMS "
            f"(threshold {threshold:g}); analyse as a nonlinear load"
        )
        self.phase = phase
        self.ratio = ratio


@dataclass(frozen=True, eq=False)
class GeomPowerTrace:
    """Instantaneous geometric power split into its parts.

    ``m_q`` holds the bivector planes made of in-band axes only, ``m_perp``
    those that pair an in-band voltage axis with a breve current axis.
    """

    grid: object
    m_p: np.ndarray
    m_q: dict[tuple[int, int], np.ndarray]
    m_perp: dict[tuple[int, int], np.ndarray]
    p_classic: np.ndarray
    n_phases: int = 1

    def multivector(self, include_perp: bool = True) -> Multivector:
        planes = dict(self.m_q)
        if include_perp:
            planes.update(self.m_perp)
        return Multivector(self.grid, self.m_p, {}, planes)

    @property
    def m_q_multivector(self) -> Multivector:
        return Multivector(self.grid, None, {}, self.m_q)


@dataclass(frozen=True)
class PowerSummary:
    P: float
    Q: float
    rms_u: float
    rms_i: float
    mq_mean: dict[tuple[int, int], float] = field(default_factory=dict)


def _check_phases(phases: Sequence[PhaseSignal]) -> None:
    if not phases:
        raise ValueError("need at least one phase")
    for p in phases[1:]:
        phases[0].grid.check(p.grid)


def build_voltage(phases: Sequence[PhaseSignal]) -> GeomVector:
    """Geometric voltage ``sum_k (u_k s_k + H[u_k] s_kh) / sqrt(2)``."""
    _check_phases(phases)
    grid = phases[0].grid
    raw = np.vstack([p.samples for p in phases])
    quad = hilbert_array(raw)
    coeffs = {}
    for k in range(len(phases)):
        coeffs[axis_index(k + 1, PLAIN)] = raw[k] / _SQRT2
        coeffs[axis_index(k + 1, HAT)] = quad[k] / _SQRT2
    return GeomVector(grid, len(phases), coeffs)


def build_current(
    phases: Sequence[PhaseSignal],
    v_support: HarmonicSupport,
    nonlinear: bool = False,
) -> GeomVector:
    """Geometric current.

    In nonlinear mode each phase is band-split against ``v_support``; the
    in-band part gets the analytic-pair layout and the remainder goes to the
    breve axis. In linear mode the whole current takes the voltage layout and
    :class:`OutOfBandInLinearMode` is raised if the out-of-band RMS exceeds
    ``v_support.threshold`` relative to the phase RMS.
    """
    _check_phases(phases)
    grid = phases[0].grid
    coeffs = {}
    for k, phase in enumerate(phases, start=1):
        i_par, i_perp = band_split(phase, v_support)
        if nonlinear:
            inband = i_par.samples
            coeffs[axis_index(k, BREVE)] = i_perp.samples / _SQRT2
        else:
            total = np.sqrt(np.mean(phase.samples ** 2))
            out = np.sqrt(np.mean(i_perp.samples ** 2))
            if total > 0 and out > v_support.threshold * total:
                raise OutOfBandInLinearMode(k, out / total, v_support.threshold)
            inband = phase.samples
        coeffs[axis_index(k, PLAIN)] = inband / _SQRT2
        coeffs[axis_index(k, HAT)] = hilbert_array(inband) / _SQRT2
    return GeomVector(grid, len(phases), coeffs)


def _check_power_operands(u: GeomVector, i: GeomVector) -> None:
    u.grid.check(i.grid)
    if u.n_phases != i.n_phases:
        raise GridMismatchError(f"phase count mismatch: {u.n_phases} vs {i.n_phases}")
    if u.has_breve:
        raise ValueError("the voltage vector cannot carry out-of-band (breve) axes")


def _classic_power(u: GeomVector, i: GeomVector) -> np.ndarray:
    # raw samples are sqrt(2) times the plain (plus breve) coefficients
    p = np.zeros(u.grid.n_samples)
    for k in range(1, u.n_phases + 1):
        i_k = i.component(k, PLAIN) + i.component(k, BREVE)
        p += 2.0 * u.component(k, PLAIN) * i_k
    return p


def _split_planes(planes):
    m_q, m_perp = {}, {}
    for key, series in planes.items():
        if any(axis_channel(a) == BREVE for a in key):
            m_perp[key] = series
        else:
            m_q[key] = series
    return m_q, m_perp


def instantaneous_power(u: GeomVector, i: GeomVector) -> GeomPowerTrace:
    """``M = u i = M_p + M_q (+ M_perp)``."""
    _check_power_operands(u, i)
    M = geometric_product(u, i)
    m_q, m_perp = _split_planes(M.grade2)
    return GeomPowerTrace(u.grid, M.grade0, m_q, m_perp, _classic_power(u, i), u.n_phases)


def commutator_power(u: GeomVector, i: GeomVector) -> tuple[np.ndarray, dict]:
    """Cross-check path: ``M_p = (ui + iu)/2`` and ``M_q = (ui - iu)/2``.

    Returns ``(m_p, planes)`` where ``planes`` holds every bivector plane,
    out-of-band ones included.
    """
    _check_power_operands(u, i)
    ui = geometric_product(u, i)
    iu = geometric_product(i, u)
    sym = (ui + iu) * 0.5
    anti = (ui - iu) * 0.5
    return sym.grade0.copy(), {k: s.copy() for k, s in anti.grade2.items()}


def summarize(trace: GeomPowerTrace, u: GeomVector, i: GeomVector) -> PowerSummary:
    """Averaged quantities: active power ``P``, Budeanu ``Q`` and RMS norms.

    ``Q`` is the sum over phases of the mean ``(k, kh)`` plane coefficient;
    the remaining (unbalance) planes are only reported raw in ``mq_mean``.
    """
    q = 0.0
    for k in range(1, trace.n_phases + 1):
        key = (axis_index(k, PLAIN), axis_index(k, HAT))
        if key in trace.m_q:
            q += float(np.mean(trace.m_q[key]))
    nu, ni = vec_norm(u), vec_norm(i)
    return PowerSummary(
        P=float(np.mean(trace.m_p)),
        Q=q,
        rms_u=float(np.sqrt(np.mean(nu * nu))),
        rms_i=float(np.sqrt(np.mean(ni * ni))),
        mq_mean={k: float(np.mean(s)) for k, s in trace.m_q.items()},
    )


def classify_load(trace: GeomPowerTrace, rel_tol: float = 1e-9) -> dict[int, str]:
    """Tag each phase plane as ``inductive``, ``capacitive`` or ``resistive``.

    Positive mean ``(k, kh)`` quadrature power means inductive. The tolerance
    is relative to the mean apparent magnitude ``|M|`` so that purely
    reactive loads (``P = 0``) still classify.
    """
    scale = float(np.mean(mv_norm(trace.multivector())))
    tol = rel_tol * scale
    tags = {}
    for k in range(1, trace.n_phases + 1):
        key = (axis_index(k, PLAIN), axis_index(k, HAT))
        m = float(np.mean(trace.m_q[key])) if key in trace.m_q else 0.0
        tags[k] = "inductive" if m > tol else "capacitive" if m < -tol else "resistive"
    return tags


def tellegen_sum(branches) -> Multivector:
    """Signed sum of branch geometric powers ``sum s_b u_b i_b``.

    ``branches`` is an iterable of ``(u, i, sign)``; a valid circuit with
    consistent reference directions leaves a residual at round-off level.
    """
    total = None
    for u, i, sign in branches:
        M = geometric_product(u, i) * float(sign)
        total = M if total is None else total + M
    if total is None:
        raise ValueError("tellegen_sum needs at least one branch")
    return total

