import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from aqwalk import (
    CoinFamily,
    FitDomainError,
    ParameterError,
    SequenceKind,
    SequenceSpec,
    SigmaSeries,
    build_coin,
    distribution,
    ensemble_average,
    evolve,
    fit_exponent,
    fit_or_confined,
    init_state,
    sigma,
    sigma_from_state,
    step,
)

PI = math.pi


def power_law(c, prefactor=3.0, t_max=4000):
    t = np.arange(1, t_max + 1, dtype=np.int64)
    return SigmaSeries(t=t, sigma=prefactor * t.astype(float) ** c)


# -- distribution and sigma ---------------------------------------------------

def test_distribution_initial():
    d = distribution(init_state(10))
    assert d.t == 0
    assert d.k.tolist() == [0]
    assert abs(d.p[0] - 1.0) < 1e-12


def test_distribution_one_hadamard_step():
    s = step(init_state(4), build_coin(CoinFamily.GENERALIZED_HADAMARD, PI / 4))
    d = distribution(s)
    assert d.k.tolist() == [-1, 0, 1]
    assert np.allclose(d.p, [0.5, 0.0, 0.5], atol=1e-15)


def test_distribution_confined_support():
    res = evolve(SequenceSpec(SequenceKind.CONSTANT, alpha_a=PI / 2), 100, snapshot_times=(100,))
    d = distribution(res.snapshots[100])
    assert d.k[d.p > 0].tolist() == [0]


def test_distribution_parity_zeros_and_normalization():
    res = evolve(SequenceSpec(SequenceKind.FIBONACCI, alpha_a=PI / 3, alpha_b=PI / 6), 101, snapshot_times=(101,))
    d = distribution(res.snapshots[101])
    assert abs(d.p.sum() - 1.0) < 1e-10
    assert np.all(d.p[(d.k + d.t) % 2 != 0] == 0)
    assert np.all(d.p >= 0)


def test_sigma_point_values():
    assert sigma(distribution(init_state(5))) == 0.0
    one = step(init_state(4), build_coin(CoinFamily.GENERALIZED_HADAMARD, PI / 4))
    assert abs(sigma(distribution(one)) - 1.0) < 1e-12
    s = init_state(30)
    z = build_coin(CoinFamily.GENERALIZED_HADAMARD, 0.0)
    for _ in range(30):
        s = step(s, z)
    assert abs(sigma(distribution(s)) - 30.0) < 1e-12


def test_sigma_two_routes_agree():
    res = evolve(SequenceSpec(SequenceKind.FIBONACCI, alpha_a=PI / 3, alpha_b=PI / 6), 300)
    st_ = res.state
    assert abs(sigma(distribution(st_)) - sigma_from_state(st_)) < 1e-10


# -- exponent fitting ---------------------------------------------------------

@pytest.mark.parametrize("c", [0.25, 0.5, 0.7, 1.0])
def test_fit_exact_power_laws(c):
    fit = fit_exponent(power_law(c), (1000, 4000))
    assert abs(fit.exponent - c) < 1e-6
    assert abs(fit.prefactor - 3.0) < 1e-6
    assert fit.residual < 1e-12
    assert fit.n_points >= 10


def test_fit_noisy_power_law():
    rng = np.random.Generator(np.random.PCG64(42))
    t = np.arange(1, 4001, dtype=np.int64)
    noisy = 3.0 * t.astype(float) ** 0.7 * (1.0 + 0.01 * rng.standard_normal(t.size))
    fit = fit_exponent(SigmaSeries(t=t, sigma=noisy), (1000, 4000))
    assert 0.68 <= fit.exponent <= 0.72


@given(st.floats(min_value=1e-6, max_value=1e6))
def test_fit_scale_equivariance(scale):
    base = fit_exponent(power_law(0.7), (1000, 4000))
    scaled_series = power_law(0.7)
    scaled = fit_exponent(SigmaSeries(t=scaled_series.t, sigma=scale * scaled_series.sigma), (1000, 4000))
    assert abs(scaled.exponent - base.exponent) < 1e-12
    assert abs(scaled.prefactor - scale * base.prefactor) < 1e-6 * scale * base.prefactor


def test_fit_subsampling_density_invariance():
    dense = fit_exponent(power_law(0.5), (1000, 4000), max_points=200)
    sparse = fit_exponent(power_law(0.5), (1000, 4000), max_points=50)
    assert abs(dense.exponent - sparse.exponent) < 1e-3


def test_fit_window_errors():
    series = power_law(1.0, t_max=100)
    with pytest.raises(FitDomainError):
        fit_exponent(series, (50, 200))  # beyond the series
    with pytest.raises(FitDomainError):
        fit_exponent(series, (10, 12))  # too few points
    with pytest.raises(FitDomainError):
        fit_exponent(series, (40, 20))


def test_fit_rejects_zero_sigma():
    res = evolve(SequenceSpec(SequenceKind.CONSTANT, alpha_a=PI / 2), 400)
    with pytest.raises(FitDomainError, match="confined"):
        fit_exponent(res.sigma, (100, 400))


def test_fit_or_confined_flags_bounded_walk():
    res = evolve(SequenceSpec(SequenceKind.CONSTANT, alpha_a=PI / 2), 400)
    fit = fit_or_confined(res.sigma, (100, 400))
    assert fit.confined
    assert fit.exponent == 0.0
    assert fit.flag == "confined"


def test_fit_or_confined_passes_through_growing_walk():
    res = evolve(SequenceSpec(SequenceKind.CONSTANT, alpha_a=PI / 4), 400)
    fit = fit_or_confined(res.sigma, (100, 400))
    assert not fit.confined
    assert 0.9 < fit.exponent < 1.05


# -- ensemble averaging -------------------------------------------------------

def binary_spec(seed=1234):
    return SequenceSpec(SequenceKind.RANDOM_BINARY, alpha_a=PI / 3, seed=seed)


def test_ensemble_identical_seeds_zero_stderr():
    ens = ensemble_average(binary_spec(), realizations=5, steps=100, seeds=[77] * 5)
    assert np.all(ens.stderr == 0.0)
    assert np.array_equal(ens.mean_sigma.sigma, ens.member_sigmas[0])


def test_ensemble_single_realization_equals_single_run():
    from aqwalk.sequences import derive_seed
    from dataclasses import replace

    master = 999
    ens = ensemble_average(binary_spec(master), realizations=1, steps=150)
    direct = evolve(replace(binary_spec(master), seed=derive_seed(master, 0)), 150)
    assert np.array_equal(ens.mean_sigma.sigma, direct.sigma.sigma)
    assert np.all(ens.stderr == 0.0)


def test_ensemble_mean_and_stderr_match_manual():
    ens = ensemble_average(binary_spec(5), realizations=4, steps=80)
    manual_mean = ens.member_sigmas.mean(axis=0)
    manual_err = ens.member_sigmas.std(axis=0, ddof=1) / 2.0
    assert np.allclose(ens.mean_sigma.sigma, manual_mean, atol=1e-13)
    assert np.allclose(ens.stderr, manual_err, atol=1e-13)
    assert abs(ens.mean_distribution.p.sum() - 1.0) < 1e-9


def test_ensemble_workers_do_not_change_results():
    serial = ensemble_average(binary_spec(31), realizations=4, steps=120)
    parallel = ensemble_average(binary_spec(31), realizations=4, steps=120, workers=2)
    assert np.array_equal(serial.mean_sigma.sigma, parallel.mean_sigma.sigma)
    assert np.array_equal(serial.mean_distribution.p, parallel.mean_distribution.p)


def test_ensemble_rejects_deterministic_kind():
    with pytest.raises(ParameterError, match="random"):
        ensemble_average(SequenceSpec(SequenceKind.CONSTANT, alpha_a=0.3), realizations=3, steps=50)


def test_ensemble_rejects_bad_realizations():
    with pytest.raises(ParameterError):
        ensemble_average(binary_spec(), realizations=0, steps=50)
    with pytest.raises(ParameterError, match="seeds"):
        ensemble_average(binary_spec(), realizations=3, steps=50, seeds=[1, 2])
