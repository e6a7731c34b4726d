"""Smoke tests for the pybind11 surface of the C++ core."""

import math

import _hippolab as hl


def test_make_legs_entries():
    sys = hl.make_legs(2)
    assert sys.state_size == 2
    a = sys.a
    assert a[0][0] == -1.0
    assert abs(a[1][0] + math.sqrt(3.0)) < 1e-15
    assert a[1][1] == -2.0
    assert abs(sys.b[1] - math.sqrt(3.0)) < 1e-15


def test_mat_exp_scalar():
    e = hl.mat_exp([[-1.0]])
    assert abs(e[0][0] - math.exp(-1.0)) < 1e-12


def test_gauss_legendre_midpoint():
    nodes, weights = hl.gauss_legendre(1)
    assert abs(nodes[0] - 0.5) < 1e-15
    assert abs(weights[0] - 1.0) < 1e-15


def test_pade_low_orders():
    pades = hl.pade_exp_continuants(2)
    num, den = pades[0]
    assert [round(v, 12) for v in num] == [1.0]
    assert [round(v, 12) for v in den] == [1.0, 1.0]
    num2, den2 = pades[1]
    assert abs(num2[1] + 1.0 / 3.0) < 1e-12
    assert abs(den2[2] - 1.0 / 6.0) < 1e-12


def test_kernel_sampling_scalar_exponential():
    table = hl.sample_kernels(hl.make_legs(1), 0.5, 3)
    assert abs(table.values[0][1] - math.exp(-0.5)) < 1e-12


def test_transfer_function_matches_pade():
    sys = hl.delay_readout(hl.make_legt(2))
    h = hl.transfer_function(sys, complex(1.0, 0.0))
    assert abs(h - 4.0 / 11.0) < 1e-12


def test_gram_orthonormal():
    report = hl.gram_matrix(hl.Method.LegT, 4, False, 32)
    assert report.max_off_diagonal < 1e-12
    assert report.max_diagonal_deviation < 1e-12


def test_delay_experiment_small():
    res = hl.delay_experiment(hl.Method.FouT, 128, 0.01, 300, 7)
    assert res.lag_target == 100
    assert abs(res.argmax_index - 100) <= 1
    assert res.rmse_vs_lagged < res.rmse_chance


def test_rng_reproducible():
    assert hl.rng_gaussian(5, 8) == hl.rng_gaussian(5, 8)


def test_normalization_limit():
    _, limit = hl.normalization_experiment(hl.make_legs(8), 2.0, 1e-3, 20000)
    assert abs(limit - 4.0) < 0.1
