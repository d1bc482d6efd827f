"""Periodic signals on a one-period uniform grid.

Everything here works on exactly one period of a band-limited signal, so
the DFT of the samples *is* the Fourier series (up to scaling) and the
Hilbert transform, spectra and band splitting are exact bin operations.

Hilbert sign convention: ``H[sin hwt] = cos hwt`` and ``H[cos hwt] = -sin hwt``
for every order ``h >= 1``; dc and the Nyquist bin are annihilated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "AliasingError",
    "GridMismatchError",
    "HarmonicSeries",
    "HarmonicSupport",
    "PhaseSignal",
    "SamplingGrid",
    "band_split",
    "derivative",
    "harmonic_support",
    "hilbert",
    "hilbert_array",
    "mean",
    "rms",
    "sample_series",
    "spectrum",
]

DEFAULT_N_SAMPLES = 4096
DEFAULT_THRESHOLD = 1e-6


class GridMismatchError(ValueError):
    """Two signals (or vectors) were combined on different sampling grids."""


class AliasingError(ValueError):
    """A harmonic order cannot be represented on the requested grid."""

    def __init__(self, order: int, n_samples: int):
        super().__init__(
            f"harmonic order {order} aliases on a grid of {n_samples} samples "
            f"(orders must be below {n_samples // 2})"
        )
        self.order = order


@dataclass(frozen=True)
class SamplingGrid:
    """Uniform sampling of exactly one period ``T = 2*pi/omega``."""

    omega: float
    n_samples: int = DEFAULT_N_SAMPLES

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be finite and positive, got {self.omega}")
        n = int(self.n_samples)
        if n != self.n_samples or n < 4 or n % 2:
            raise ValueError(f"n_samples must be an even integer >= 4, got {self.n_samples}")
        object.__setattr__(self, "n_samples", n)
        object.__setattr__(self, "omega", float(self.omega))

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    @property
    def dt(self) -> float:
        return self.period / self.n_samples

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.n_samples) * self.dt

    def check(self, other: "SamplingGrid") -> None:
        if other != self:
            raise GridMismatchError(f"grid mismatch: {self} vs {other}")


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PhaseSignal:
    """One period of a real periodic signal for a single phase or channel."""

    grid: SamplingGrid
    samples: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.samples)
        if arr.shape != (self.grid.n_samples,):
            raise ValueError(
                f"expected {self.grid.n_samples} samples, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("PhaseSignal samples must be finite")
        object.__setattr__(self, "samples", arr)

    @property
    def t(self) -> np.ndarray:
        return self.grid.t

    def __len__(self):
        return self.grid.n_samples

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.samples, dtype=dtype)

    def _coerce(self, other):
        if isinstance(other, PhaseSignal):
            self.grid.check(other.grid)
            return other.samples
        return other

    def __add__(self, other):
        return PhaseSignal(self.grid, self.samples + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return PhaseSignal(self.grid, self.samples - self._coerce(other))

    def __rsub__(self, other):
        return PhaseSignal(self.grid, self._coerce(other) - self.samples)

    def __mul__(self, other):
        return PhaseSignal(self.grid, self.samples * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PhaseSignal(self.grid, self.samples / self._coerce(other))

    def __neg__(self):
        return PhaseSignal(self.grid, -self.samples)

    def __repr__(self):
        return f"PhaseSignal(grid={self.grid}, rms={rms(self):.6g})"


@dataclass(frozen=True)
class HarmonicSeries:
    """Fourier series ``sum_h a_h cos(h w t) + b_h sin(h w t)``.

    ``terms`` maps the order ``h`` to the ``(a_h, b_h)`` pair.
    """

    terms: Mapping[int, tuple[float, float]]
    omega: float = 1.0

    def __post_init__(self):
        clean: dict[int, tuple[float, float]] = {}
        for h, (a, b) in self.terms.items():
            if int(h) != h or h < 0:
                raise ValueError(f"harmonic order must be a non-negative integer, got {h}")
            h = int(h)
            if h == 0 and b != 0:
                raise ValueError("the dc term (h=0) cannot carry a sine coefficient")
            clean[h] = (float(a), float(b))
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @property
    def orders(self) -> frozenset[int]:
        return frozenset(self.terms)

    def phasor(self, h: int) -> complex:
        """Peak phasor ``X`` with ``x_h(t) = Re[X exp(j h w t)]``."""
        a, b = self.terms.get(h, (0.0, 0.0))
        return complex(a, -b)

    def __add__(self, other: "HarmonicSeries") -> "HarmonicSeries":
        if other.omega != self.omega:
            raise GridMismatchError("cannot add harmonic series with different omega")
        terms = dict(self.terms)
        for h, (a, b) in other.terms.items():
            a0, b0 = terms.get(h, (0.0, 0.0))
            terms[h] = (a0 + a, b0 + b)
        return HarmonicSeries(terms, self.omega)

    def scaled(self, k: float) -> "HarmonicSeries":
        return HarmonicSeries({h: (k * a, k * b) for h, (a, b) in self.terms.items()}, self.omega)

    @classmethod
    def from_phasors(cls, phasors: Mapping[int, complex], omega: float) -> "HarmonicSeries":
        terms = {}
        for h, z in phasors.items():
            z = complex(z)
            terms[h] = (z.real, 0.0) if h == 0 else (z.real, -z.imag)
        return cls(terms, omega)


@dataclass(frozen=True)
class HarmonicSupport:
    """Set of harmonic orders considered "in band"."""

    orders: frozenset[int]
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "orders", frozenset(int(h) for h in self.orders))
        if any(h < 0 for h in self.orders):
            raise ValueError("harmonic orders must be non-negative")
        if not 0 < self.threshold < 1:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")

    def __contains__(self, h):
        return h in self.orders


# --------------------------------------------------------------------------
# bin-level helpers (operate on the last axis of plain arrays)


def _orders(n: int) -> np.ndarray:
    """Signed harmonic order of every full-FFT bin, Nyquist marked as n//2."""
    return np.fft.fftfreq(n, d=1.0 / n).round().astype(int)


def hilbert_array(x: np.ndarray) -> np.ndarray:
    """Hilbert transform of one-period sample arrays along the last axis."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    k = _orders(n)
    mult = np.where(k > 0, 1j, -1j)
    mult[0] = 0.0
    mult[n // 2] = 0.0
    return np.fft.ifft(np.fft.fft(x, axis=-1) * mult, axis=-1).real


def _check_band_limited(n: int, h: int) -> None:
    if h > n // 2:
        raise AliasingError(h, n)


# --------------------------------------------------------------------------
# public operations


def sample_series(series: HarmonicSeries, grid: SamplingGrid) -> PhaseSignal:
    """Evaluate a harmonic series at the grid instants.

    Orders must stay below the Nyquist order ``n_samples/2``. A pure cosine
    at exactly the Nyquist order is accepted since it is representable.
    """
    if not math.isclose(series.omega, grid.omega, rel_tol=1e-12):
        raise GridMismatchError(
            f"series omega {series.omega} does not match grid omega {grid.omega}"
        )
    n = grid.n_samples
    out = np.zeros(n)
    for h, (a, b) in series.terms.items():
        _check_band_limited(n, h)
        if h == n // 2 and b != 0:
            raise AliasingError(h, n)
        if h == 0:
            out += a
            continue
        # 2*pi*h*j/n keeps the phase exact for large h instead of h*omega*t
        phase = 2.0 * np.pi * ((h * np.arange(n)) % n) / n
        out += a * np.cos(phase) + b * np.sin(phase)
    return PhaseSignal(grid, out)


def hilbert(x: PhaseSignal) -> PhaseSignal:
    """Quadrature companion of ``x``: ``sin -> cos``, ``cos -> -sin``, dc -> 0."""
    return PhaseSignal(x.grid, hilbert_array(x.samples))


def derivative(x: PhaseSignal) -> PhaseSignal:
    """Exact time derivative of the band-limited interpolant of ``x``."""
    n = x.grid.n_samples
    k = _orders(n).astype(float)
    k[n // 2] = 0.0
    spec = np.fft.fft(x.samples) * (1j * k * x.grid.omega)
    return PhaseSignal(x.grid, np.fft.ifft(spec).real)


def spectrum(x: PhaseSignal, rtol: float = 1e-13) -> HarmonicSeries:
    """Exact Fourier coefficients of one period of ``x``.

    Terms whose amplitude is below ``rtol`` times the largest amplitude are
    dropped (they are round-off); ``sample_series(spectrum(x))`` reproduces
    ``x`` to round-off.
    """
    n = x.grid.n_samples
    X = np.fft.rfft(x.samples) / n
    amp = np.abs(X) * 2.0
    amp[0] /= 2.0
    amp[-1] /= 2.0
    cutoff = rtol * amp.max() if amp.max() > 0 else 0.0
    terms = {}
    for h, z in enumerate(X):
        if amp[h] <= cutoff:
            continue
        if h == 0 or h == n // 2:
            terms[h] = (z.real, 0.0)
        else:
            terms[h] = (2.0 * z.real, -2.0 * z.imag)
    return HarmonicSeries(terms, x.grid.omega)


def harmonic_amplitudes(x: PhaseSignal) -> np.ndarray:
    """Peak amplitude per order ``0..n_samples/2``."""
    n = x.grid.n_samples
    amp = np.abs(np.fft.rfft(x.samples)) * (2.0 / n)
    amp[0] /= 2.0
    amp[-1] /= 2.0
    return amp


def harmonic_support(
    signals: Iterable[PhaseSignal], threshold: float = DEFAULT_THRESHOLD
) -> HarmonicSupport:
    """Orders present in any of ``signals`` above ``threshold`` times the largest one."""
    signals = list(signals)
    if not signals:
        raise ValueError("need at least one signal to determine the harmonic support")
    amps = np.vstack([harmonic_amplitudes(s) for s in signals]).max(axis=0)
    peak = amps.max()
    if peak == 0:
        return HarmonicSupport(frozenset(), threshold)
    return HarmonicSupport(frozenset(np.flatnonzero(amps > threshold * peak).tolist()), threshold)


def band_split(i: PhaseSignal, v_support: HarmonicSupport) -> tuple[PhaseSignal, PhaseSignal]:
    """Split ``i`` into its in-band and out-of-band parts.

    The in-band part holds exactly the harmonic content of ``i`` on the
    orders of ``v_support``; the out-of-band part is the rest, including any
    dc when order 0 is not in the support.
    """
    n = i.grid.n_samples
    X = np.fft.rfft(i.samples)
    keep = np.zeros(X.shape, dtype=bool)
    for h in v_support.orders:
        if h <= n // 2:
            keep[h] = True
    i_par = np.fft.irfft(np.where(keep, X, 0.0), n=n)
    return PhaseSignal(i.grid, i_par), PhaseSignal(i.grid, i.samples - i_par)


def mean(x: PhaseSignal) -> float:
    return float(np.mean(np.asarray(x, dtype=float)))


def rms(x: PhaseSignal) -> float:
    arr = np.asarray(x, dtype=float)
    return float(np.sqrt(np.mean(arr * arr)))
