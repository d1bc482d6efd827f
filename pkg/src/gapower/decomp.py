"""Current decomposition ``i = i_F + i_f + i_B + i_b + i_perp``.

``i_p = u M_p / |u|^2`` and ``i_q = u M_q / |u|^2`` split the in-band
current into the parts parallel and orthogonal to ``u`` at every instant.
``i_F`` and ``i_B`` are the averaged (Fryze and Budeanu) references, and
``i_f``, ``i_b`` their complements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .multivector import (
    BREVE,
    HAT,
    PLAIN,
    GeomVector,
    NearZeroVector,
    axis_index,
    inner,
    singular_samples,
    vec_norm,
    vector_times_bivector,
    wedge,
)
from .waveform import PhaseSignal, derivative, hilbert_array

__all__ = [
    "COMPONENTS",
    "CurrentDecomposition",
    "decompose",
    "hilbert_geomvector",
    "project_time",
    "sequence_split",
]

COMPONENTS = ("p", "q", "F", "f", "B", "b", "perp")
GRADE3_RTOL = 1e-10
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class CurrentDecomposition:
    components: dict[str, GeomVector]
    rms: dict[str, float]
    time_domain: dict[str, list[PhaseSignal]]
    P: float = 0.0
    Q: float = 0.0
    u_mean_sq: float = 0.0
    rms_total: float = 0.0
    singular: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    grade3_residual: float = 0.0

    def __getitem__(self, name: str) -> GeomVector:
        return self.components[name]

    def table(self) -> list[tuple[str, float]]:
        """Rows ``(label, rms)`` in the usual reporting order, total last."""
        rows = [(f"i_{c}", self.rms[c]) for c in COMPONENTS]
        rows.append(("i", self.rms_total))
        return rows


def _rms_norm(v: GeomVector) -> float:
    n = vec_norm(v)
    return float(np.sqrt(np.mean(n * n)))


def hilbert_geomvector(u: GeomVector) -> GeomVector:
    """Apply the Hilbert transform to every coefficient series of ``u``."""
    if u.has_breve:
        raise ValueError("hilbert_geomvector is defined for in-band vectors only")
    axes = list(u.coeffs)
    if not axes:
        return u
    transformed = hilbert_array(np.vstack([u.coeffs[a] for a in axes]))
    return GeomVector(u.grid, u.n_phases, dict(zip(axes, transformed)))


def _derivative_vector(u: GeomVector) -> GeomVector:
    return GeomVector(
        u.grid,
        u.n_phases,
        {a: derivative(PhaseSignal(u.grid, s)).samples for a, s in u.coeffs.items()},
    )


def _parallel_part(u: GeomVector, i_par: GeomVector, m_p: np.ndarray):
    """``u M_p / |u|^2`` with removable zeros of ``u`` filled by continuity.

    Where ``u`` passes through zero the projector onto ``u`` is continuous
    (``u ~ (t - t0) u'(t0)``), so at those samples the derivative direction is
    used. A zero of higher order is not resolved and raises.
    """
    norm = vec_norm(u)
    bad = singular_samples(norm)
    norm2 = norm * norm
    safe = np.where(norm2 > 0, norm2, 1.0)
    if bad.size == 0:
        return u * (m_p / safe), bad, safe
    scale = m_p / safe
    scale[bad] = 0.0
    i_p = u * scale
    du = _derivative_vector(u)
    dnorm = vec_norm(du)
    if np.any(dnorm[bad] <= 1e-9 * dnorm.max()):
        raise NearZeroVector(bad[dnorm[bad] <= 1e-9 * dnorm.max()])
    dproj = inner(du, i_par)[bad] / (dnorm[bad] ** 2)
    coeffs = {a: s.copy() for a, s in i_p.coeffs.items()}
    for a in coeffs:
        coeffs[a][bad] = du[a][bad] * dproj
    return GeomVector(u.grid, u.n_phases, coeffs), bad, safe


def decompose(u: GeomVector, i: GeomVector) -> CurrentDecomposition:
    """Decompose the geometric current ``i`` against the geometric voltage ``u``.

    Only the in-band power ``u i_par`` enters the decomposition; the breve part
    of ``i`` is reported unchanged as ``perp``.

    The Budeanu reference is ``i_B = (Q / <|u|^2>) * Hd[u]`` where
    ``Hd = -H`` delays each harmonic by a quarter period. With the sin -> cos
    Hilbert convention of this package that is the sign that makes ``i_B``
    lag the voltage for inductive loads and keeps it orthogonal to ``i_b``.
    """
    u.grid.check(i.grid)
    if u.has_breve:
        raise ValueError("the voltage vector cannot carry breve axes")
    i_par = i.in_band()
    i_perp = i.out_of_band()

    m_p = inner(u, i_par)
    m_q = wedge(u, i_par)

    i_p, bad, norm2 = _parallel_part(u, i_par, m_p)

    uq = vector_times_bivector(u, m_q)
    g3 = max((float(np.abs(s).max()) for s in uq.grade3.values()), default=0.0)
    ref = float(np.max(vec_norm(u) * vec_norm(i_par))) * float(np.max(vec_norm(u)))
    residual = g3 / ref if ref > 0 else 0.0
    if residual > GRADE3_RTOL:
        raise ArithmeticError(f"grade-3 residual of u M_q is {residual:.3g} (relative)")
    if bad.size:
        # same continuity argument as for i_p: i_q = i_par - i_p at the zeros
        i_q = i_par - i_p
        keep = np.ones(u.grid.n_samples, dtype=bool)
        keep[bad] = False
        direct = uq.vector_part(u.n_phases) / norm2
        i_q = GeomVector(
            u.grid,
            u.n_phases,
            {a: np.where(keep, direct[a], i_q[a]) for a in sorted(set(i_q.coeffs) | set(direct.coeffs))},
        )
    else:
        i_q = uq.vector_part(u.n_phases) / norm2
    # keep the in-band layout even where products left axes out
    i_q = _with_axes(i_q, i_par)

    nu = vec_norm(u)
    u_mean_sq = float(np.mean(nu * nu))
    P = float(np.mean(m_p))
    Q = 0.0
    for k in range(1, u.n_phases + 1):
        key = (axis_index(k, PLAIN), axis_index(k, HAT))
        if key in m_q.grade2:
            Q += float(np.mean(m_q.grade2[key]))

    i_F = u * (P / u_mean_sq)
    i_B = hilbert_geomvector(u) * (-Q / u_mean_sq)
    i_f = i_p - i_F
    i_b = i_q - i_B

    comps = {
        "p": _with_axes(i_p, i_par),
        "q": i_q,
        "F": _with_axes(i_F, i_par),
        "f": _with_axes(i_f, i_par),
        "B": _with_axes(i_B, i_par),
        "b": _with_axes(i_b, i_par),
        "perp": _perp_layout(i_perp, u.n_phases),
    }
    time_domain = {
        c: project_time(v, channel=BREVE if c == "perp" else PLAIN) for c, v in comps.items()
    }
    return CurrentDecomposition(
        components=comps,
        rms={c: _rms_norm(v) for c, v in comps.items()},
        time_domain=time_domain,
        P=P,
        Q=Q,
        u_mean_sq=u_mean_sq,
        rms_total=_rms_norm(i),
        singular=bad,
        grade3_residual=residual,
    )


def _with_axes(v: GeomVector, like: GeomVector) -> GeomVector:
    coeffs = {a: v[a] for a in sorted(set(v.coeffs) | set(like.coeffs))}
    return GeomVector(v.grid, v.n_phases, coeffs)


def _perp_layout(v: GeomVector, n_phases: int) -> GeomVector:
    coeffs = {axis_index(k, BREVE): v.component(k, BREVE) for k in range(1, n_phases + 1)}
    return GeomVector(v.grid, n_phases, coeffs)


def project_time(v: GeomVector, channel=PLAIN) -> list[PhaseSignal]:
    """Per-phase time waveform ``sqrt(2) * [v]_k`` read from one channel.

    The plain axis carries the in-band waveform; pass ``channel=BREVE`` to
    recover the out-of-band waveform.
    """
    return [
        PhaseSignal(v.grid, _SQRT2 * v.component(k, channel)) for k in range(1, v.n_phases + 1)
    ]


_A = np.exp(2j * np.pi / 3)


def sequence_split(v: GeomVector, n: int = 3) -> tuple[GeomVector, GeomVector, GeomVector]:
    """Symmetrical components ``(zero, negative, positive)`` of a 3-phase vector.

    The usual 120-degree combinations are applied bin by bin to the spectra of
    the plain axes and, identically, of the hat axes. Because the per-bin
    operator commutes with the Hilbert transform, the hat axes of each part
    are the Hilbert transforms of its plain axes whenever ``v`` has that
    layout, and the three parts always add back to ``v``.
    """
    if n != 3 or v.n_phases != 3:
        raise ValueError(f"sequence_split needs exactly 3 phases, got {v.n_phases}")
    if v.has_breve:
        raise ValueError("sequence_split expects the in-band (linear) layout")
    N = v.grid.n_samples
    parts = {"zero": {}, "negative": {}, "positive": {}}
    for channel in (PLAIN, HAT):
        axes = [axis_index(k, channel) for k in (1, 2, 3)]
        if not any(a in v.coeffs for a in axes):
            continue
        Xa, Xb, Xc = np.fft.rfft(np.vstack([v[a] for a in axes]), axis=-1)
        zero = (Xa + Xb + Xc) / 3.0
        pos = (Xa + _A * Xb + _A**2 * Xc) / 3.0
        neg = (Xa + _A**2 * Xb + _A * Xc) / 3.0
        per_phase = {
            "zero": (zero, zero, zero),
            "positive": (pos, _A**2 * pos, _A * pos),
            "negative": (neg, _A * neg, _A**2 * neg),
        }
        for name, spectra in per_phase.items():
            for a, X in zip(axes, spectra):
                parts[name][a] = np.fft.irfft(X, n=N)
    # the dc and Nyquist bins are real: irfft drops the imaginary parts of the
    # rotated copies, which splits their non-zero-sequence residue evenly
    # between positive and negative sequence
    out = [GeomVector(v.grid, 3, parts[name]) for name in ("zero", "negative", "positive")]
    return tuple(out)
