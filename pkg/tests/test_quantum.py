"""Tests for the closed-form packet expectation values against first principles."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from fejerwell import (
    PacketSpec,
    WellConfig,
    exp_p,
    exp_p2,
    exp_x,
    exp_x2,
    expectation_sample,
    oracle_expectation,
    quasi_exp,
    reduced_uncertainty,
    uncertainty_product,
)
from fejerwell.core import classical_period

NATURAL = WellConfig()

# (n, N) validation cases with per-observable relative tolerances;
# scales are the natural magnitudes a, a^2, p_n, p_n^2
ORACLE_CASES = [(10, 3), (50, 7)]
TOLS = {"position": 1e-8, "position_sq": 1e-8, "momentum": 1e-6}


@pytest.mark.parametrize("n,N", ORACLE_CASES)
def test_closed_forms_match_grid_oracle(n, N):
    spec = PacketSpec(n=n, N=N)
    T = classical_period(NATURAL, n)
    p_n = n * math.pi
    for t in np.linspace(0.0, T, 32):
        t = float(t)
        assert abs(
            exp_x(NATURAL, spec, t) - oracle_expectation(NATURAL, spec, t, "position")
        ) < TOLS["position"]
        assert abs(
            exp_x2(NATURAL, spec, t)
            - oracle_expectation(NATURAL, spec, t, "position_sq")
        ) < TOLS["position_sq"]
        assert abs(
            exp_p(NATURAL, spec, t) - oracle_expectation(NATURAL, spec, t, "momentum")
        ) < TOLS["momentum"] * p_n


def test_closed_forms_match_grid_oracle_large_n():
    # spot-check the heaviest case; the acceptance suite runs the full grid
    spec = PacketSpec(n=200, N=14)
    T = classical_period(NATURAL, 200)
    p_n = 200 * math.pi
    for t in np.linspace(0.0, T, 8):
        t = float(t)
        assert abs(
            exp_x(NATURAL, spec, t) - oracle_expectation(NATURAL, spec, t, "position")
        ) < 1e-8
        assert abs(
            exp_p(NATURAL, spec, t) - oracle_expectation(NATURAL, spec, t, "momentum")
        ) < 1e-6 * p_n


def test_grid_and_spectral_oracles_cross_validate():
    spec = PacketSpec(n=50, N=7)
    for t in (0.0, 0.0041, 0.009):
        g = oracle_expectation(NATURAL, spec, t, "position", method="grid")
        s = oracle_expectation(NATURAL, spec, t, "position", method="spectral")
        assert abs(g - s) < 1e-8


def test_brute_force_matrix_elements_small_packet():
    # fully independent oracle: numerically integrated matrix elements
    # x_uv = int x psi_u psi_v dx over all 25 level pairs of (n=5, N=2)
    n, N = 5, 2
    spec = PacketSpec(n=n, N=N)
    levels = range(n - N, n + N + 1)

    def x_elem(u, v):
        val, _ = quad(
            lambda x: x * math.sqrt(2) * math.sin(u * math.pi * x)
            * math.sqrt(2) * math.sin(v * math.pi * x),
            0.0,
            1.0,
            limit=200,
        )
        return val

    for t in (0.0, 0.05):
        total = 0.0
        for u in levels:
            for v in levels:
                w_uv = ((u * math.pi) ** 2 - (v * math.pi) ** 2) / 2.0
                total += x_elem(u, v) * math.cos(w_uv * t)
        brute = total / (2 * N + 1)
        assert math.isclose(exp_x(NATURAL, spec, t), brute, rel_tol=0, abs_tol=1e-9)


def test_exp_x_single_state():
    spec = PacketSpec(n=9, N=0)
    for t in (0.0, 0.4, 12.0):
        assert exp_x(NATURAL, spec, t) == 0.5


def test_exp_x2_single_state():
    for n in (1, 9, 200):
        spec = PacketSpec(n=n, N=0)
        expected = 1 / 3 - 1 / (2 * math.pi**2 * n**2)
        assert math.isclose(exp_x2(NATURAL, spec, 0.7), expected, rel_tol=1e-14)


def test_packet_localized_at_wall_initially():
    spec = PacketSpec(n=500, N=23)
    assert exp_x2(NATURAL, spec, 0.0) < 0.25
    v = oracle_expectation(NATURAL, spec, 0.0, "position_sq")
    assert math.isclose(exp_x2(NATURAL, spec, 0.0), v, rel_tol=0, abs_tol=1e-8)


def test_exp_p_zero_at_start():
    assert exp_p(NATURAL, PacketSpec(n=50, N=7), 0.0) == 0.0
    assert exp_p(NATURAL, PacketSpec(n=500, N=23), 0.0) == 0.0


@pytest.mark.parametrize("n,N", [(50, 7), (500, 23)])
def test_exp_p_is_time_derivative_of_exp_x(n, N):
    spec = PacketSpec(n=n, N=N)
    T = classical_period(NATURAL, n)
    h = T * 1e-6
    p_n = n * math.pi
    for t in (0.13 * T, 0.57 * T):
        fd = (exp_x(NATURAL, spec, t + h) - exp_x(NATURAL, spec, t - h)) / (2 * h)
        assert abs(exp_p(NATURAL, spec, t) - fd) < 1e-6 * p_n


def test_exp_x_is_even_in_time():
    spec = PacketSpec(n=50, N=7)
    for t in (1e-4, 0.003):
        assert math.isclose(
            exp_x(NATURAL, spec, t), exp_x(NATURAL, spec, -t), rel_tol=0, abs_tol=1e-12
        )


def test_exp_p2_values():
    assert math.isclose(exp_p2(NATURAL, PacketSpec(n=9, N=0)), (9 * math.pi) ** 2, rel_tol=1e-15)
    expected = (500 * math.pi) ** 2 * (1 + 552 / 750000)
    assert math.isclose(exp_p2(NATURAL, PacketSpec(n=500, N=23)), expected, rel_tol=1e-15)


def test_exp_p2_equals_level_average():
    # the two closed forms of the same diagonal sum
    for n, N in [(10, 3), (500, 23)]:
        levels = np.arange(n - N, n + N + 1, dtype=float)
        avg = float(np.mean((levels * math.pi) ** 2))
        assert math.isclose(exp_p2(NATURAL, PacketSpec(n=n, N=N)), avg, rel_tol=1e-14)


def test_exp_p2_matches_spectral_oracle():
    spec = PacketSpec(n=50, N=7)
    for t in (0.0, 0.002, 0.011):
        v = oracle_expectation(NATURAL, spec, t, "momentum_sq", method="spectral")
        assert abs(v - exp_p2(NATURAL, spec)) < 1e-10 * exp_p2(NATURAL, spec)


def test_grid_oracle_p2_constant_over_period():
    spec = PacketSpec(n=50, N=7)
    T = classical_period(NATURAL, 50)
    vals = [
        oracle_expectation(NATURAL, spec, float(t), "momentum_sq", method="grid")
        for t in np.linspace(0.0, T, 16)
    ]
    spread = (max(vals) - min(vals)) / exp_p2(NATURAL, spec)
    assert spread < 1e-10


def test_oracle_rejects_bad_input():
    spec = PacketSpec(n=10, N=3)
    with pytest.raises(ValueError):
        oracle_expectation(NATURAL, spec, 0.0, "energy")
    with pytest.raises(ValueError):
        oracle_expectation(NATURAL, spec, 0.0, "position", grid_points=128)
    with pytest.raises(ValueError):
        oracle_expectation(NATURAL, spec, 0.0, "position", method="magic")


def test_oracle_warns_on_coarse_grid():
    spec = PacketSpec(n=10, N=3)
    with pytest.warns(UserWarning):
        oracle_expectation(NATURAL, spec, 0.0, "position", grid_points=1024)


def test_quasi_position_close_at_large_n():
    # classical amplitudes with the exact pair frequencies track the true
    # mean to O(1/n^2) uniformly in time
    spec = PacketSpec(n=500, N=23)
    ts = np.linspace(0.0, 0.0025, 400)
    dev = np.max(np.abs(quasi_exp(NATURAL, spec, ts, "position") - exp_x(NATURAL, spec, ts)))
    assert dev < 1e-2
    assert dev < 1e-4


def test_quasi_momentum_zero_at_start():
    for mode in ("exact", "reference"):
        assert quasi_exp(NATURAL, PacketSpec(n=50, N=7), 0.0, "momentum", frequencies=mode) == 0.0


def test_quasi_reference_frequencies_dephase():
    # collapsing each harmonic to the central-level Bohr frequency makes
    # the deviation grow with time
    spec = PacketSpec(n=50, N=7)
    T = classical_period(NATURAL, 50)
    early = np.linspace(0.0, T / 4, 300)
    late = np.linspace(2.75 * T, 3.25 * T, 300)
    d_early = np.max(np.abs(
        quasi_exp(NATURAL, spec, early, "position", frequencies="reference")
        - exp_x(NATURAL, spec, early)
    ))
    d_late = np.max(np.abs(
        quasi_exp(NATURAL, spec, late, "position", frequencies="reference")
        - exp_x(NATURAL, spec, late)
    ))
    assert d_late > 10 * d_early


def test_quasi_rejects_bad_arguments():
    spec = PacketSpec(n=50, N=7)
    with pytest.raises(ValueError):
        quasi_exp(NATURAL, spec, 0.0, "position_sq")
    with pytest.raises(ValueError):
        quasi_exp(NATURAL, spec, 0.0, "position", frequencies="detuned")


def test_reduced_uncertainty_momentum_starts_at_one():
    assert reduced_uncertainty(NATURAL, PacketSpec(n=500, N=23), 0.0, "momentum") == 1.0


def test_reduced_uncertainty_bounds():
    spec = PacketSpec(n=500, N=23)
    T = classical_period(NATURAL, 500)
    ts = np.linspace(0.0, 2 * T, 256)
    dx = reduced_uncertainty(NATURAL, spec, ts, "position")
    assert np.all(dx >= 0.0) and np.all(dx <= 1.0)
    v = reduced_uncertainty(NATURAL, spec, T / 4, "momentum")
    assert 0.0 < v < 1.0


def test_uncertainty_product_ground_state():
    expected = math.pi * math.sqrt(1 / 12 - 1 / (2 * math.pi**2))
    assert math.isclose(expected, 0.5678, rel_tol=2e-4)
    for t in (0.0, 0.3):
        assert math.isclose(
            uncertainty_product(NATURAL, PacketSpec(n=1, N=0), t), expected, rel_tol=1e-12
        )


def test_uncertainty_product_heisenberg_floor():
    spec = PacketSpec(n=500, N=23)
    assert uncertainty_product(NATURAL, spec, 0.0) >= 0.5


def test_uncertainty_product_decreases_with_width_at_start():
    # at t = 0 no dephasing has occurred, so wider packets are sharper:
    # the product falls monotonically with N there
    products = [
        uncertainty_product(NATURAL, PacketSpec(n=500, N=N), 0.0) for N in (3, 23, 100)
    ]
    assert products[0] > products[1] > products[2]


def test_expectation_sample_invariants():
    spec = PacketSpec(n=50, N=7)
    T = classical_period(NATURAL, 50)
    p2_ref = None
    for t in np.linspace(0.0, T, 9):
        s = expectation_sample(NATURAL, spec, float(t))
        assert s.x2_mean >= s.x_mean**2 - 1e-12
        assert s.p2_mean >= s.p_mean**2 - 1e-12 * s.p2_mean
        assert s.product == s.dx * s.dp
        assert s.product >= 0.5 * (1 - 1e-9)
        if p2_ref is None:
            p2_ref = s.p2_mean
        assert s.p2_mean == p2_ref


def test_variance_positivity_on_grid():
    spec = PacketSpec(n=200, N=14)
    T = classical_period(NATURAL, 200)
    ts = np.linspace(0.0, T, 64)
    var_x = exp_x2(NATURAL, spec, ts) - exp_x(NATURAL, spec, ts) ** 2
    var_p = exp_p2(NATURAL, spec) - exp_p(NATURAL, spec, ts) ** 2
    assert np.all(var_x > 0.0)
    assert np.all(var_p >= 0.0)
