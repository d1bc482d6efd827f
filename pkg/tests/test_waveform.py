import math

import numpy as np
import pytest
import scipy.signal
from hypothesis import given, settings
from hypothesis import strategies as st

from gapower.waveform import (
    AliasingError,
    GridMismatchError,
    HarmonicSeries,
    HarmonicSupport,
    PhaseSignal,
    SamplingGrid,
    band_split,
    derivative,
    harmonic_support,
    hilbert,
    mean,
    rms,
    sample_series,
    spectrum,
)

SQRT2 = math.sqrt(2.0)


def sig(grid, fn):
    return PhaseSignal(grid, fn(grid.t))


class TestGrid:
    def test_instants(self):
        g = SamplingGrid(2.0, 8)
        assert g.period == pytest.approx(math.pi)
        np.testing.assert_allclose(g.t, np.arange(8) * math.pi / 8)

    @pytest.mark.parametrize("n", [0, 2, 5, 7, 4.5])
    def test_rejects_bad_sample_counts(self, n):
        with pytest.raises(ValueError):
            SamplingGrid(1.0, n)

    @pytest.mark.parametrize("omega", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_omega(self, omega):
        with pytest.raises(ValueError):
            SamplingGrid(omega, 8)

    def test_signals_only_combine_on_same_grid(self):
        a = PhaseSignal(SamplingGrid(1.0, 8), np.ones(8))
        b = PhaseSignal(SamplingGrid(2.0, 8), np.ones(8))
        with pytest.raises(GridMismatchError):
            a + b
        assert np.all((a + a).samples == 2)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            PhaseSignal(SamplingGrid(1.0, 4), [0, np.nan, 0, 0])


class TestSampleSeries:
    def test_sine_quarter_points(self):
        s = sample_series(HarmonicSeries({1: (0.0, 1.0)}), SamplingGrid(1.0, 4))
        np.testing.assert_allclose(s.samples, [0, 1, 0, -1], atol=1e-15)

    def test_constant(self):
        s = sample_series(HarmonicSeries({0: (5.0, 0.0)}), SamplingGrid(1.0, 16))
        assert np.all(s.samples == 5.0)

    def test_example_supply(self):
        grid = SamplingGrid(1.0, 512)
        s = sample_series(HarmonicSeries({1: (0, 100 * SQRT2), 3: (0, 100 * SQRT2)}), grid)
        expected = 100 * SQRT2 * (np.sin(grid.t) + np.sin(3 * grid.t))
        np.testing.assert_allclose(s.samples, expected, atol=1e-10)

    def test_aliasing_rejected_with_order(self):
        with pytest.raises(AliasingError) as err:
            sample_series(HarmonicSeries({5: (1.0, 0.0)}), SamplingGrid(1.0, 8))
        assert err.value.order == 5

    def test_nyquist_sine_rejected(self):
        with pytest.raises(AliasingError):
            sample_series(HarmonicSeries({4: (0.0, 1.0)}), SamplingGrid(1.0, 8))

    def test_omega_must_match(self):
        with pytest.raises(GridMismatchError):
            sample_series(HarmonicSeries({1: (1, 0)}, omega=2.0), SamplingGrid(1.0, 8))

    def test_dc_cannot_have_sine(self):
        with pytest.raises(ValueError):
            HarmonicSeries({0: (1.0, 2.0)})


class TestHilbert:
    grid = SamplingGrid(1.0, 64)

    @pytest.mark.parametrize("h", [1, 2, 3, 7, 31])
    def test_sin_to_cos_and_cos_to_minus_sin(self, h):
        t = self.grid.t
        np.testing.assert_allclose(hilbert(sig(self.grid, lambda t: np.sin(h * t))).samples, np.cos(h * t), atol=1e-13)
        np.testing.assert_allclose(hilbert(sig(self.grid, lambda t: np.cos(h * t))).samples, -np.sin(h * t), atol=1e-13)

    def test_dc_removed(self):
        assert np.all(np.abs(hilbert(PhaseSignal(self.grid, np.full(64, 3.0))).samples) < 1e-15)

    def test_nyquist_zeroed(self):
        alt = PhaseSignal(self.grid, np.cos(32 * self.grid.t))
        assert np.abs(hilbert(alt).samples).max() < 1e-13

    def test_matches_scipy_up_to_sign(self, rng):
        # scipy returns x + j*Hs[x] with Hs[sin] = -cos; ours is the negative
        x = rng.normal(size=64)
        x -= x.mean()
        X = np.fft.rfft(x)
        X[-1] = 0
        x = np.fft.irfft(X, 64)
        ours = hilbert(PhaseSignal(self.grid, x)).samples
        np.testing.assert_allclose(ours, -np.imag(scipy.signal.hilbert(x)), atol=1e-12)

    def test_principal_value_quadrature(self):
        # periodic form of the singular integral, (1/2pi) PV int f(tau) cot((tau - t)/2) dtau,
        # evaluated by a midpoint rule on a staggered grid (exact for trig polynomials)
        grid = SamplingGrid(1.0, 32)
        f = lambda t: 2.0 * np.sin(t) - np.cos(3 * t) + 0.5 * np.sin(5 * t)
        M = 512
        tau = (np.arange(M) + 0.5) * 2 * np.pi / M
        ref = []
        for t0 in grid.t:
            # shift the quadrature nodes so that the singularity sits halfway between two nodes
            nodes = t0 + tau
            ref.append(np.sum(f(nodes) / np.tan((nodes - t0) / 2)) / M)
        ours = hilbert(sig(grid, f)).samples
        np.testing.assert_allclose(ours, ref, atol=1e-9)


def band_limited(rng, n=128, max_order=20, dc=True):
    grid = SamplingGrid(float(rng.uniform(0.5, 10)), n)
    terms = {h: tuple(rng.normal(size=2)) for h in range(1, max_order + 1)}
    if dc:
        terms[0] = (float(rng.normal()), 0.0)
    return sample_series(HarmonicSeries(terms, grid.omega), grid)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestHilbertProperties:
    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_double_transform_is_minus_identity_on_ac(self, seed):
        x = band_limited(np.random.default_rng(seed))
        hh = hilbert(hilbert(x)).samples
        ref = -(x.samples - mean(x))
        assert np.abs(hh - ref).max() <= 1e-10 * np.abs(ref).max()

    @given(seeds, st.floats(-5, 5), st.floats(-5, 5))
    @settings(max_examples=40, deadline=None)
    def test_linear(self, seed, a, b):
        rng = np.random.default_rng(seed)
        x = band_limited(rng)
        y = PhaseSignal(x.grid, band_limited(rng).samples)
        lhs = hilbert(a * x + b * y).samples
        rhs = a * hilbert(x).samples + b * hilbert(y).samples
        scale = max(np.abs(x.samples).max(), np.abs(y.samples).max()) * (abs(a) + abs(b) + 1)
        assert np.abs(lhs - rhs).max() <= 1e-12 * scale

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_parseval_without_dc(self, seed):
        x = band_limited(np.random.default_rng(seed))
        lhs = rms(hilbert(x)) ** 2
        rhs = rms(x) ** 2 - mean(x) ** 2
        assert lhs == pytest.approx(rhs, rel=1e-10)


class TestSpectrum:
    def test_sine(self):
        s = spectrum(PhaseSignal(SamplingGrid(1.0, 4), [0, 1, 0, -1]))
        assert set(s.terms) == {1}
        assert s.terms[1] == pytest.approx((0.0, 1.0), abs=1e-15)

    def test_constant(self):
        s = spectrum(PhaseSignal(SamplingGrid(1.0, 8), np.full(8, 5.0)))
        assert s.terms == {0: (5.0, 0.0)}

    def test_round_trip(self, rng):
        for _ in range(20):
            x = band_limited(rng, n=64, max_order=31)
            back = sample_series(spectrum(x), x.grid).samples
            assert np.abs(back - x.samples).max() <= 1e-12 * np.abs(x.samples).max()

    def test_nyquist_term_round_trips(self):
        grid = SamplingGrid(1.0, 8)
        x = PhaseSignal(grid, [1, -1, 1, -1, 1, -1, 1, -1])
        s = spectrum(x)
        assert s.terms == {4: pytest.approx((1.0, 0.0))}
        np.testing.assert_allclose(sample_series(s, grid).samples, x.samples, atol=1e-15)


class TestBandSplit:
    grid = SamplingGrid(1.0, 128)

    def test_out_of_band_order(self):
        t = self.grid.t
        i = PhaseSignal(self.grid, np.sin(t) + 0.5 * np.cos(3 * t) + 0.2 * np.sin(5 * t))
        par, perp = band_split(i, HarmonicSupport({1, 3}))
        np.testing.assert_allclose(par.samples, np.sin(t) + 0.5 * np.cos(3 * t), atol=1e-14)
        np.testing.assert_allclose(perp.samples, 0.2 * np.sin(5 * t), atol=1e-14)

    def test_dc_goes_out_of_band(self):
        t = self.grid.t
        par, perp = band_split(PhaseSignal(self.grid, 2 + np.sin(t)), HarmonicSupport({1}))
        np.testing.assert_allclose(perp.samples, 2.0, atol=1e-14)
        np.testing.assert_allclose(par.samples, np.sin(t), atol=1e-14)

    def test_linear_load_has_no_out_of_band(self):
        t = self.grid.t
        _, perp = band_split(PhaseSignal(self.grid, np.cos(t - 0.3)), HarmonicSupport({1, 3}))
        assert np.abs(perp.samples).max() < 1e-15

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_parts_orthogonal_and_recompose(self, seed):
        rng = np.random.default_rng(seed)
        x = band_limited(rng)
        support = HarmonicSupport(set(rng.choice(21, size=5, replace=False).tolist()))
        par, perp = band_split(x, support)
        scale = rms(x) ** 2
        assert abs(mean(par * perp)) <= 1e-10 * scale
        np.testing.assert_array_equal((par + perp).samples, par.samples + perp.samples)
        assert np.abs((par + perp).samples - x.samples).max() <= 1e-12 * np.abs(x.samples).max()


class TestSupport:
    def test_threshold_relative_to_largest_harmonic(self):
        grid = SamplingGrid(1.0, 64)
        t = grid.t
        u = PhaseSignal(grid, 100 * np.sin(t) + 1e-3 * np.sin(3 * t) + 1e-5 * np.sin(5 * t))
        assert harmonic_support([u], threshold=1e-6).orders == {1, 3}
        assert harmonic_support([u], threshold=1e-4).orders == {1}

    def test_threshold_bounds(self):
        with pytest.raises(ValueError):
            HarmonicSupport({1}, threshold=1.5)


def test_rms_and_mean():
    grid = SamplingGrid(1.0, 256)
    assert rms(sig(grid, lambda t: SQRT2 * 100 * np.sin(t))) == pytest.approx(100.0, rel=1e-14)
    assert abs(mean(sig(grid, np.sin))) < 1e-16


def test_derivative_exact_for_trig_polynomials():
    grid = SamplingGrid(3.0, 64)
    t = grid.t
    x = PhaseSignal(grid, np.sin(3 * t) + 2 * np.cos(6 * t) + 4)
    np.testing.assert_allclose(derivative(x).samples, 3 * np.cos(3 * t) - 12 * np.sin(6 * t), atol=1e-11)
