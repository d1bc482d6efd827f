import numpy as np
import pytest

from conftest import random_case
from gapower.analysis import analyze, analyze_scenario
from gapower.geompower import build_current, build_voltage, classify_load
from gapower.impedance import AllSingular, instantaneous_impedance, phase_impedance
from gapower.multivector import geometric_product, inverse_vector
from gapower.scenarios import SeriesRLC, example1, solve_rlc
from gapower.waveform import HarmonicSeries, PhaseSignal, SamplingGrid, harmonic_support, sample_series


def guard_mask(n, singular, width=2):
    keep = np.ones(n, dtype=bool)
    for j in singular:
        keep[[(j + d) % n for d in range(-width, width + 1)]] = False
    return keep


class TestExample1:
    def test_circuit_a(self):
        scen = example1("a", 1024)
        z = analyze_scenario(scen).impedance(1)
        t = scen.grid.t
        # 1 + sin 2t = 0 at t = 3pi/4 and 7pi/4
        assert list(z.singular) == [384, 896]
        assert np.all(np.isnan(z.r[z.singular]))
        keep = guard_mask(1024, z.singular)
        ref = scen.meta["r"](t[keep])
        # r crosses zero, so the tolerance is relative to the trace magnitude
        assert np.abs(z.r[keep] - ref).max() <= 1e-9 * np.abs(ref).max()
        assert np.abs(z.x[keep]).max() <= 1e-9 * np.abs(ref).max()

    def test_circuit_b(self):
        scen = example1("b", 1024)
        z = analyze_scenario(scen).impedance(1)
        t = scen.grid.t
        assert z.singular.size == 0
        for got, ref in ((z.r, scen.meta["r"](t)), (z.x, scen.meta["x"](t))):
            assert np.abs(got - ref).max() <= 1e-9 * np.abs(ref).max()

    def test_pure_resistor(self, rng):
        volts, _ = random_case(rng, 1, n_samples=128)
        a = analyze(volts, [v * 0.25 for v in volts])
        z = a.impedance(1)
        ok = z.regular
        np.testing.assert_allclose(z.r[ok], 4.0, rtol=1e-9)
        assert np.abs(z.x[ok]).max() < 1e-9


class TestSingleHarmonic:
    @pytest.mark.parametrize("circ", [SeriesRLC(R=2.0, L=0.3, C=0.1), SeriesRLC(R=1.0, L=3.0), SeriesRLC(R=0.5, C=2.0)])
    @pytest.mark.parametrize("h", [1, 4])
    def test_constant_phasor_values(self, circ, h):
        grid = SamplingGrid(2.0, 128)
        v = HarmonicSeries({h: (1.5, -2.0)}, 2.0)
        a = analyze([sample_series(v, grid)], [sample_series(solve_rlc(circ, v), grid)])
        z = a.impedance(1)
        ref = circ.impedance(h, 2.0)
        np.testing.assert_allclose(z.r, ref.real, rtol=1e-9)
        np.testing.assert_allclose(z.x, ref.imag, rtol=1e-9, atol=1e-12)
        tag = classify_load(a.trace)[1]
        assert tag == ("inductive" if ref.imag > 0 else "capacitive")


class TestReconstruction:
    def test_z_applied_to_current_gives_voltage(self):
        scen = example1("b", 256)
        a = analyze_scenario(scen)
        z = a.impedance(1)
        u, i = a.u, a.i
        # Z i = r i + x s_{1 1h} (i_1 s_1 + i_1h s_1h) = r i + x (i_1h s_1 - i_1 s_1h)
        u_plain = z.r * i[0] + z.x * i[1]
        u_hat = z.r * i[1] - z.x * i[0]
        np.testing.assert_allclose(u_plain, u[0], atol=1e-9 * np.abs(u[0]).max())
        np.testing.assert_allclose(u_hat, u[1], atol=1e-9 * np.abs(u[1]).max())

    def test_agrees_with_multivector_kernel(self):
        # u i^-1 through the GA products: scalar part r, (1, 1h) plane x
        scen = example1("b", 256)
        a = analyze_scenario(scen)
        z = a.impedance(1)
        M = geometric_product(a.u, inverse_vector(a.i.in_band()))
        np.testing.assert_allclose(M.grade0, z.r, rtol=1e-10)
        np.testing.assert_allclose(M.grade2[(0, 1)], z.x, rtol=1e-10, atol=1e-12)


class TestErrors:
    def test_zero_current(self):
        grid = SamplingGrid(1.0, 16)
        u = (PhaseSignal(grid, np.sin(grid.t)), PhaseSignal(grid, np.cos(grid.t)))
        zero = (PhaseSignal(grid, np.zeros(16)), PhaseSignal(grid, np.zeros(16)))
        with pytest.raises(AllSingular):
            instantaneous_impedance(u, zero)

    def test_arrays_need_grid(self):
        grid = SamplingGrid(1.0, 16)
        t = grid.t
        z = instantaneous_impedance((np.sin(t), np.cos(t)), (np.sin(t), np.cos(t)), grid=grid)
        np.testing.assert_allclose(z.r, 1.0)

    def test_phase_index(self, rng):
        volts, amps = random_case(rng, 2, n_samples=64)
        u = build_voltage(volts)
        i = build_current(amps, harmonic_support(volts))
        assert phase_impedance(u, i, 2).r.shape == (64,)
