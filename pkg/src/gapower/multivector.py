"""Euclidean geometric algebra over the per-phase ``{plain, hat, breve}`` axes.

Axes are encoded as integers: phase ``k`` (1-based) and channel ``c`` map to
``3*(k-1) + c`` with ``plain=0``, ``hat=1``, ``breve=2``. Sorting by that
integer gives the canonical basis order ``1, 1h, 1b, 2, 2h, ...``.

Every coefficient is a time series over one :class:`SamplingGrid`, so all
products are evaluated sample by sample with numpy broadcasting. Only the
grades this theory needs (0 to 3) exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

import numpy as np

from .waveform import GridMismatchError, SamplingGrid

__all__ = [
    "BREVE",
    "HAT",
    "PLAIN",
    "GeomVector",
    "Multivector",
    "NearZeroVector",
    "axis_index",
    "axis_label",
    "axis_phase",
    "axis_channel",
    "blade_label",
    "geometric_product",
    "inner",
    "inverse_vector",
    "mv_norm",
    "reverse",
    "vec_norm",
    "vector_times_bivector",
    "wedge",
]

PLAIN, HAT, BREVE = 0, 1, 2
_CHANNEL_SUFFIX = {PLAIN: "", HAT: "h", BREVE: "b"}
_SUFFIX_CHANNEL = {v: k for k, v in _CHANNEL_SUFFIX.items()}
_CHANNEL_NAMES = {"plain": PLAIN, "hat": HAT, "breve": BREVE}


class NearZeroVector(ArithmeticError):
    """A vector has (numerically) zero norm where an inverse was requested."""

    def __init__(self, indices, message=None):
        self.indices = np.asarray(indices, dtype=int)
        shown = ", ".join(str(i) for i in self.indices[:10])
        if len(self.indices) > 10:
            shown += ", ..."
        super().__init__(message or f"vector norm vanishes at sample(s) {shown}")


def axis_index(phase: int, channel=PLAIN) -> int:
    if isinstance(channel, str):
        channel = _CHANNEL_NAMES[channel]
    if phase < 1 or channel not in _CHANNEL_SUFFIX:
        raise ValueError(f"invalid axis (phase={phase}, channel={channel})")
    return 3 * (phase - 1) + channel


def axis_phase(axis: int) -> int:
    return axis // 3 + 1


def axis_channel(axis: int) -> int:
    return axis % 3


def axis_label(axis: int) -> str:
    return f"{axis_phase(axis)}{_CHANNEL_SUFFIX[axis_channel(axis)]}"


def parse_axis_label(label: str) -> int:
    suffix = label[-1] if label[-1] in "hb" else ""
    return axis_index(int(label[: len(label) - len(suffix)]), _SUFFIX_CHANNEL[suffix])


def blade_label(blade: tuple[int, ...]) -> str:
    """``(0, 1)`` -> ``"1^1h"``."""
    return "^".join(axis_label(a) for a in blade)


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _freeze_map(grid: SamplingGrid, m: Mapping, arity: int | None) -> dict:
    out = {}
    for key, series in m.items():
        if arity is not None:
            key = tuple(int(a) for a in key)
            if len(key) != arity or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"blade key {key} must be {arity} strictly increasing axes")
        else:
            key = int(key)
        arr = _frozen(np.broadcast_to(series, (grid.n_samples,)))
        out[key] = arr
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=False)
class GeomVector:
    """Grade-1 multivector whose coefficients are time series.

    ``coeffs`` is sparse: axes that are absent are zero.
    """

    grid: SamplingGrid
    n_phases: int
    coeffs: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_phases < 1:
            raise ValueError("a geometric vector needs at least one phase")
        coeffs = _freeze_map(self.grid, self.coeffs, None)
        bad = [a for a in coeffs if not 0 <= a < 3 * self.n_phases]
        if bad:
            raise ValueError(f"axes {bad} are invalid for {self.n_phases} phase(s)")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def basis(cls, grid: SamplingGrid, n_phases: int, axis: int, scale: float = 1.0):
        return cls(grid, n_phases, {axis: np.full(grid.n_samples, float(scale))})

    @property
    def axes(self) -> list[int]:
        return list(self.coeffs)

    @property
    def has_breve(self) -> bool:
        return any(axis_channel(a) == BREVE for a in self.coeffs)

    def __getitem__(self, axis: int) -> np.ndarray:
        """Coefficient series of ``axis`` (zeros when absent)."""
        if axis in self.coeffs:
            return self.coeffs[axis]
        return np.zeros(self.grid.n_samples)

    def component(self, phase: int, channel=PLAIN) -> np.ndarray:
        return self[axis_index(phase, channel)]

    def select(self, channels) -> "GeomVector":
        """Keep only the axes whose channel is in ``channels``."""
        channels = {_CHANNEL_NAMES.get(c, c) for c in channels}
        return GeomVector(
            self.grid,
            self.n_phases,
            {a: s for a, s in self.coeffs.items() if axis_channel(a) in channels},
        )

    def in_band(self) -> "GeomVector":
        return self.select((PLAIN, HAT))

    def out_of_band(self) -> "GeomVector":
        return self.select((BREVE,))

    def dense(self) -> np.ndarray:
        """Array of shape ``(3*n_phases, n_samples)``."""
        out = np.zeros((3 * self.n_phases, self.grid.n_samples))
        for a, s in self.coeffs.items():
            out[a] = s
        return out

    def _check(self, other: "GeomVector") -> None:
        self.grid.check(other.grid)
        if other.n_phases != self.n_phases:
            raise GridMismatchError(
                f"phase count mismatch: {self.n_phases} vs {other.n_phases}"
            )

    def _combine(self, other, op) -> "GeomVector":
        self._check(other)
        keys = sorted(set(self.coeffs) | set(other.coeffs))
        return GeomVector(self.grid, self.n_phases, {a: op(self[a], other[a]) for a in keys})

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __neg__(self):
        return self * -1.0

    def __mul__(self, k):
        """Scale by a scalar or a per-sample scalar series."""
        k = np.asarray(k, dtype=float)
        return GeomVector(self.grid, self.n_phases, {a: s * k for a, s in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1.0 / np.asarray(k, dtype=float))

    def allclose(self, other: "GeomVector", rtol=1e-10, atol=0.0) -> bool:
        self._check(other)
        a, b = self.dense(), other.dense()
        scale = max(np.abs(a).max(), np.abs(b).max(), 1e-300)
        return bool(np.all(np.abs(a - b) <= atol + rtol * scale))

    def __repr__(self):
        labels = ",".join(axis_label(a) for a in self.coeffs)
        return f"GeomVector(n_phases={self.n_phases}, axes=[{labels}])"


@dataclass(frozen=True, eq=False)
class Multivector:
    """Per-sample multivector with grades 0 to 3.

    Blade keys are strictly increasing axis tuples; absent keys are zero.
    Grade 1 only appears as the result of vector-bivector products.
    """

    grid: SamplingGrid
    grade0: np.ndarray = None
    grade1: Mapping[int, np.ndarray] = field(default_factory=dict)
    grade2: Mapping[tuple[int, int], np.ndarray] = field(default_factory=dict)
    grade3: Mapping[tuple[int, int, int], np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        n = self.grid.n_samples
        g0 = np.zeros(n) if self.grade0 is None else np.broadcast_to(self.grade0, (n,))
        object.__setattr__(self, "grade0", _frozen(g0))
        object.__setattr__(self, "grade1", _freeze_map(self.grid, self.grade1, None))
        object.__setattr__(self, "grade2", _freeze_map(self.grid, self.grade2, 2))
        object.__setattr__(self, "grade3", _freeze_map(self.grid, self.grade3, 3))

    def _grades(self):
        return self.grade1, self.grade2, self.grade3

    def _combine(self, other: "Multivector", op) -> "Multivector":
        self.grid.check(other.grid)
        parts = []
        for mine, theirs in zip(self._grades(), other._grades()):
            keys = sorted(set(mine) | set(theirs))
            zero = np.zeros(self.grid.n_samples)
            parts.append({k: op(mine.get(k, zero), theirs.get(k, zero)) for k in keys})
        return Multivector(self.grid, op(self.grade0, other.grade0), *parts)

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, k):
        k = np.asarray(k, dtype=float)
        return Multivector(
            self.grid,
            self.grade0 * k,
            *({key: s * k for key, s in g.items()} for g in self._grades()),
        )

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def grade(self, k: int) -> "Multivector":
        if k == 0:
            return Multivector(self.grid, self.grade0)
        parts = [{}, {}, {}]
        parts[k - 1] = self._grades()[k - 1]
        return Multivector(self.grid, None, *parts)

    def vector_part(self, n_phases: int) -> GeomVector:
        return GeomVector(self.grid, n_phases, self.grade1)

    def bivector_norm(self) -> np.ndarray:
        return _sum_sq(self.grade2.values(), self.grid.n_samples) ** 0.5

    def max_abs(self) -> float:
        arrays = [self.grade0, *(s for g in self._grades() for s in g.values())]
        return float(max(np.abs(a).max() for a in arrays))

    def __repr__(self):
        blades = [blade_label(k) for k in self.grade2] + [blade_label(k) for k in self.grade3]
        return f"Multivector(grade1={len(self.grade1)}, blades=[{', '.join(blades)}])"


def _sum_sq(arrays, n) -> np.ndarray:
    out = np.zeros(n)
    for a in arrays:
        out += a * a
    return out


def _check_pair(a: GeomVector, b: GeomVector) -> None:
    a.grid.check(b.grid)


def inner(a: GeomVector, b: GeomVector) -> np.ndarray:
    """Scalar product per sample."""
    _check_pair(a, b)
    out = np.zeros(a.grid.n_samples)
    for axis in set(a.coeffs) & set(b.coeffs):
        out += a.coeffs[axis] * b.coeffs[axis]
    return out


def wedge(a: GeomVector, b: GeomVector) -> Multivector:
    """Outer product ``a ^ b`` (pure bivector)."""
    _check_pair(a, b)
    axes = sorted(set(a.coeffs) | set(b.coeffs))
    biv = {}
    for e, f in combinations(axes, 2):
        # skip blades that are structurally zero so sparse vectors stay sparse
        if (e in a.coeffs and f in b.coeffs) or (f in a.coeffs and e in b.coeffs):
            biv[(e, f)] = a[e] * b[f] - a[f] * b[e]
    return Multivector(a.grid, None, {}, biv)


def geometric_product(a: GeomVector, b: GeomVector) -> Multivector:
    """``ab = a.b + a^b``."""
    w = wedge(a, b)
    return Multivector(a.grid, inner(a, b), {}, w.grade2)


def _blade_sign(seq: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sort distinct axes, returning the permutation parity and sorted blade."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def vector_times_bivector(v: GeomVector, B: Multivector) -> Multivector:
    """Geometric product ``v B`` for a pure bivector ``B``; grades 1 and 3."""
    v.grid.check(B.grid)
    if B.grade1 or B.grade3 or np.any(B.grade0 != 0):
        raise ValueError("vector_times_bivector expects a pure bivector")
    n = v.grid.n_samples
    g1: dict[int, np.ndarray] = {}
    g3: dict[tuple[int, int, int], np.ndarray] = {}

    def acc(store, key, value):
        if key in store:
            store[key] = store[key] + value
        else:
            store[key] = value

    for g, vg in v.coeffs.items():
        for (e, f), bef in B.grade2.items():
            term = vg * bef
            if g == e:  # s_e s_e s_f = s_f
                acc(g1, f, term)
            elif g == f:  # s_f s_e s_f = -s_e
                acc(g1, e, -term)
            else:
                sign, blade = _blade_sign((g, e, f))
                acc(g3, blade, sign * term)
    return Multivector(v.grid, np.zeros(n), g1, {}, g3)


def reverse(M: Multivector) -> Multivector:
    """Reversion: grades 0, 1 unchanged; grades 2, 3 negated."""
    return Multivector(
        M.grid,
        M.grade0,
        M.grade1,
        {k: -s for k, s in M.grade2.items()},
        {k: -s for k, s in M.grade3.items()},
    )


def mv_norm(M: Multivector) -> np.ndarray:
    """``sqrt(<M M~>_0)`` per sample."""
    n = M.grid.n_samples
    total = M.grade0 * M.grade0
    for g in M._grades():
        total = total + _sum_sq(g.values(), n)
    return np.sqrt(total)


def vec_norm(v: GeomVector) -> np.ndarray:
    return np.sqrt(_sum_sq(v.coeffs.values(), v.grid.n_samples))


def singular_samples(norm: np.ndarray, rel_eps: float = 1e-9) -> np.ndarray:
    """Indices where ``norm`` falls below ``rel_eps`` times its peak."""
    peak = float(np.max(norm)) if norm.size else 0.0
    if peak == 0.0:
        return np.arange(norm.size)
    return np.flatnonzero(norm <= rel_eps * peak)


def inverse_vector(v: GeomVector, rel_eps: float = 1e-9) -> GeomVector:
    """``v / |v|^2``; raises :class:`NearZeroVector` where ``|v|`` vanishes."""
    norm = vec_norm(v)
    bad = singular_samples(norm, rel_eps)
    if bad.size:
        raise NearZeroVector(bad)
    return v / (norm * norm)
