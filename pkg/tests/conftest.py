import math

import numpy as np
import pytest

from gapower.waveform import HarmonicSeries, SamplingGrid, sample_series


def random_series(rng, orders, omega, scale=1.0, dc=0.0):
    terms = {int(h): tuple(rng.normal(scale=scale, size=2)) for h in orders}
    if dc:
        terms[0] = (dc, 0.0)
    return HarmonicSeries(terms, omega)


def random_case(rng, n_phases, max_order=15, n_samples=256, nonlinear=False, omega=None):
    """Random multi-phase voltage/current pair made of harmonics up to ``max_order``.

    Voltages are zero-mean. In nonlinear mode the currents also carry orders
    (and sometimes a dc term) that are absent from every voltage.
    """
    omega = omega if omega is not None else float(rng.uniform(0.5, 400.0))
    grid = SamplingGrid(omega, n_samples)
    pool = np.arange(1, max_order + 1)
    n_v = int(rng.integers(1, min(5, max_order) + 1))
    v_orders = rng.choice(pool, size=n_v, replace=False)
    rest = np.setdiff1d(pool, v_orders)
    volts, amps = [], []
    for _ in range(n_phases):
        volts.append(sample_series(random_series(rng, v_orders, omega, scale=100.0), grid))
        i_orders = list(v_orders)
        dc = 0.0
        if nonlinear and rest.size:
            i_orders += list(rng.choice(rest, size=min(2, rest.size), replace=False))
            dc = float(rng.normal(scale=3.0)) if rng.random() < 0.5 else 0.0
        amps.append(sample_series(random_series(rng, i_orders, omega, scale=10.0, dc=dc), grid))
    return volts, amps


def corpus(n_cases=200, seed=20240601, nonlinear_every=4):
    """The randomized acceptance corpus: phases 1..4, orders <= 15."""
    rng = np.random.default_rng(seed)
    cases = []
    for j in range(n_cases):
        n = 1 + j % 4
        nonlinear = j % nonlinear_every == nonlinear_every - 1
        cases.append((n, nonlinear, *random_case(rng, n, nonlinear=nonlinear)))
    return cases


# --------------------------------------------------------------------------
# brute-force Euclidean Clifford product on bitmask blades (test oracle)


def _reorder_sign(a: int, b: int) -> int:
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(x: dict, y: dict) -> dict:
    """Geometric product of ``{bitmask: coeff}`` multivectors, orthonormal basis."""
    out: dict = {}
    for ba, ca in x.items():
        for bb, cb in y.items():
            key = ba ^ bb
            out[key] = out.get(key, 0.0) + _reorder_sign(ba, bb) * ca * cb
    return out


def vector_blades(coeffs: dict) -> dict:
    return {1 << a: c for a, c in coeffs.items()}


def blade_key(axes) -> int:
    return sum(1 << a for a in axes)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(12345)


SQRT2 = math.sqrt(2.0)


# --------------------------------------------------------------------------
# acceptance report: one PASS/FAIL line per criterion, echoed in the summary

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
