"""Time-domain geometric-algebra power analysis.

Voltages and currents of an n-phase system are mapped, together with their
Hilbert transforms, to vectors of a 3n-dimensional Euclidean geometric
algebra. Their geometric product is the instantaneous geometric power
``M = M_p + M_q (+ M_perp)``, and left-multiplying by the inverse voltage
decomposes the current into parallel, quadrature, Fryze, Budeanu and
out-of-band parts.
"""

from .analysis import Analysis, analyze, analyze_scenario
from .decomp import CurrentDecomposition, decompose, hilbert_geomvector, project_time, sequence_split
from .geompower import (
    GeomPowerTrace,
    OutOfBandInLinearMode,
    PowerSummary,
    build_current,
    build_voltage,
    classify_load,
    commutator_power,
    instantaneous_power,
    summarize,
    tellegen_sum,
)
from .impedance import AllSingular, ImpedanceTrace, instantaneous_impedance, phase_impedance
from .multivector import (
    GeomVector,
    Multivector,
    NearZeroVector,
    axis_index,
    geometric_product,
    inner,
    inverse_vector,
    mv_norm,
    reverse,
    vec_norm,
    vector_times_bivector,
    wedge,
)
from .scenarios import Scenario, SeriesRLC, example1, example2, per_element_voltages, solve_rlc
from .waveform import (
    HarmonicSeries,
    HarmonicSupport,
    PhaseSignal,
    SamplingGrid,
    band_split,
    harmonic_support,
    hilbert,
    mean,
    rms,
    sample_series,
    spectrum,
)

__all__ = [
    "AllSingular",
    "Analysis",
    "analyze",
    "analyze_scenario",
    "axis_index",
    "band_split",
    "build_current",
    "build_voltage",
    "classify_load",
    "commutator_power",
    "CurrentDecomposition",
    "decompose",
    "example1",
    "example2",
    "geometric_product",
    "GeomPowerTrace",
    "GeomVector",
    "harmonic_support",
    "HarmonicSeries",
    "HarmonicSupport",
    "hilbert",
    "hilbert_geomvector",
    "ImpedanceTrace",
    "inner",
    "instantaneous_impedance",
    "instantaneous_power",
    "inverse_vector",
    "mean",
    "Multivector",
    "mv_norm",
    "NearZeroVector",
    "OutOfBandInLinearMode",
    "per_element_voltages",
    "phase_impedance",
    "PhaseSignal",
    "PowerSummary",
    "project_time",
    "reverse",
    "rms",
    "sample_series",
    "SamplingGrid",
    "Scenario",
    "sequence_split",
    "SeriesRLC",
    "solve_rlc",
    "spectrum",
    "summarize",
    "tellegen_sum",
    "vec_norm",
    "vector_times_bivector",
    "wedge",
]

__version__ = "0.1.0"
