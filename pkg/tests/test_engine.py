import math

import numpy as np
import pytest

from aqwalk import (
    CoinFamily,
    InitialState,
    ParameterError,
    ResourceLimitError,
    SequenceKind,
    SequenceSpec,
    apply_coin,
    apply_shift,
    build_coin,
    distribution,
    evolve,
    init_state,
    schedule_angles,
    sigma,
    step,
)
from aqwalk.kernels import available_kernels

from helpers import dense_evolve

PI = math.pi
SQ2 = math.sqrt(0.5)

HADAMARD = build_coin(CoinFamily.GENERALIZED_HADAMARD, PI / 4)
SIGMA_Z = build_coin(CoinFamily.GENERALIZED_HADAMARD, 0.0)
SIGMA_X = build_coin(CoinFamily.GENERALIZED_HADAMARD, PI / 2)


def fib_spec(**kw):
    return SequenceSpec(SequenceKind.FIBONACCI, alpha_a=PI / 3, alpha_b=PI / 6, **kw)


# -- initial state ----------------------------------------------------------

def test_init_state_all_mass_at_origin():
    s = init_state(100)
    d = distribution(s)
    assert d.p.shape == (1,)
    assert abs(d.p[0] - 1.0) < 1e-12
    assert sigma(d) == 0.0
    assert s.t == 0


def test_init_state_pure_up():
    s = init_state(100, InitialState(1.0, 0.0))
    assert s.amps[0, s.origin] == 1.0
    assert s.amps[1, s.origin] == 0.0


def test_init_state_accepts_any_unit_spinor():
    init_state(10, InitialState(0.6, 0.8j))


def test_init_state_rejects_unnormalized_spinor():
    with pytest.raises(ParameterError, match="normalized"):
        InitialState(0.6, 0.7)


def test_init_state_rejects_bad_t_max():
    with pytest.raises(ParameterError):
        init_state(0)


# -- single operations ------------------------------------------------------

def test_apply_coin_sigma_z_on_default():
    s = apply_coin(init_state(4), SIGMA_Z)
    assert s.amps[0, s.origin] == complex(SQ2, 0.0)
    assert s.amps[1, s.origin] == complex(0.0, -SQ2)


def test_apply_coin_hadamard_on_default():
    s = apply_coin(init_state(4), HADAMARD)
    assert abs(s.amps[0, s.origin] - (1 + 1j) / 2) < 1e-15
    assert abs(s.amps[1, s.origin] - (1 - 1j) / 2) < 1e-15


def test_apply_coin_preserves_norm():
    s = init_state(4, InitialState(0.6, 0.8j))
    for angle in (0.0, 0.3, PI / 4, 1.1, PI / 2):
        coin = build_coin(CoinFamily.GENERALIZED_HADAMARD, angle)
        assert abs(apply_coin(s, coin).norm() - 1.0) < 1e-12


def test_apply_shift_moves_components():
    s = init_state(4, InitialState(1.0, 0.0))
    shifted = apply_shift(s)
    assert shifted.amps[0, shifted.origin + 1] == 1.0
    assert shifted.t == 1

    s = init_state(4, InitialState(0.0, 1.0))
    shifted = apply_shift(s)
    assert shifted.amps[1, shifted.origin - 1] == 1.0


def test_apply_shift_overflow():
    s = init_state(3)
    for _ in range(3):
        s = apply_shift(s)
    with pytest.raises(ResourceLimitError, match="t_max"):
        apply_shift(s)


def test_step_hadamard_one_step():
    s = step(init_state(4), HADAMARD)
    d = distribution(s)
    assert abs(s.amps[0, s.origin + 1] - (1 + 1j) / 2) < 1e-15
    assert abs(s.amps[1, s.origin - 1] - (1 - 1j) / 2) < 1e-15
    assert np.allclose(d.p, [0.5, 0.0, 0.5], atol=1e-15)
    assert abs(sigma(d) - 1.0) < 1e-12


def test_sigma_z_walk_is_two_ballistic_branches():
    s = init_state(50)
    for t in range(1, 51):
        s = step(s, SIGMA_Z)
        d = distribution(s)
        assert abs(sigma(d) - t) < 1e-12
    # all mass sits at the light-cone edges
    assert abs(d.p[0] - 0.5) < 1e-12 and abs(d.p[-1] - 0.5) < 1e-12


def test_sigma_x_walk_confined():
    s = init_state(50)
    init = s.amps.copy()
    for t in range(1, 51):
        s = step(s, SIGMA_X)
        assert sigma(distribution(s)) <= 1.0
        if t % 2 == 0:
            # exact two-step revival at the origin
            nz = np.flatnonzero(np.abs(s.amps).sum(axis=0))
            assert nz.tolist() == [s.origin]
    assert np.array_equal(np.abs(s.amps), np.abs(init))


def test_lightcone_and_parity_exact():
    spec = fib_spec()
    angles = schedule_angles(spec, 60)
    s = init_state(60)
    k = s.k_values()
    for t in range(1, 61):
        coin = build_coin(CoinFamily.GENERALIZED_HADAMARD, float(angles[t - 1]))
        s = step(s, coin)
        outside = np.abs(k) > t
        odd = (k + t) % 2 != 0
        assert np.all(s.amps[:, outside] == 0)
        assert np.all(s.amps[:, odd] == 0)


def test_mirror_symmetry_constant_coin():
    for alpha in (0.0, 0.3, PI / 4, 1.2, PI / 2):
        spec = SequenceSpec(SequenceKind.CONSTANT, alpha_a=alpha)
        res = evolve(spec, 100, snapshot_times=range(0, 101, 10))
        for st in res.snapshots.values():
            p = distribution(st).p
            assert np.max(np.abs(p - p[::-1])) <= 1e-10


# -- evolve vs composed reference -------------------------------------------

@pytest.mark.parametrize("kind,kw", [
    (SequenceKind.CONSTANT, dict(alpha_a=PI / 4)),
    (SequenceKind.FIBONACCI, dict(alpha_a=PI / 3, alpha_b=PI / 6)),
    (SequenceKind.RANDOM_BINARY, dict(alpha_a=1.1, seed=3)),
])
def test_evolve_matches_stepwise_composition(kind, kw):
    spec = SequenceSpec(kind, **kw)
    steps = 40
    res = evolve(spec, steps)
    angles = schedule_angles(spec, steps)
    s = init_state(steps)
    for a in angles:
        s = step(s, build_coin(spec.family, float(a)))
    assert np.array_equal(res.state.amps, s.amps)
    assert abs(res.sigma.sigma[-1] - sigma(distribution(s))) < 1e-12


def test_evolve_deterministic_bitwise():
    spec = SequenceSpec(SequenceKind.RANDOM_CONTINUOUS, width=PI / 8, seed=11)
    a = evolve(spec, 200)
    b = evolve(spec, 200)
    assert np.array_equal(a.sigma.sigma, b.sigma.sigma)
    assert np.array_equal(a.state.amps, b.state.amps)


def test_kernels_agree():
    kernels = available_kernels()
    if len(kernels) < 2:
        pytest.skip("compiled kernel not built")
    spec = fib_spec()
    res = {name: evolve(spec, 300, kernel=name) for name in kernels}
    py = res["python"]
    cy = res["cython"]
    assert np.array_equal(py.state.amps, cy.state.amps)
    assert np.max(np.abs(py.sigma.sigma - cy.sigma.sigma)) < 1e-12
    assert np.max(np.abs(py.norms - cy.norms)) < 1e-12


def test_evolve_norm_conservation():
    for kind, kw in [
        (SequenceKind.SILVER_MEAN, dict(alpha_a=PI / 3, alpha_b=PI / 6)),
        (SequenceKind.RANDOM_CONTINUOUS, dict(width=PI / 8, seed=9)),
    ]:
        res = evolve(SequenceSpec(kind, **kw), 1000)
        assert np.max(np.abs(res.norms - 1.0)) < 1e-10


def test_evolve_record_cadence():
    spec = fib_spec()
    full = evolve(spec, 120)
    coarse = evolve(spec, 120, record_every=10)
    assert coarse.sigma.t.tolist() == list(range(10, 121, 10))
    assert np.array_equal(coarse.sigma.sigma, full.sigma.sigma[9::10])
    with pytest.raises(ParameterError, match="record_every"):
        evolve(spec, 100, record_every=7)


def test_evolve_snapshot_validation():
    with pytest.raises(ParameterError, match="snapshot"):
        evolve(fib_spec(), 10, snapshot_times=(11,))


def test_evolve_snapshots_are_consistent():
    spec = fib_spec()
    res = evolve(spec, 50, snapshot_times=(0, 25, 50))
    assert set(res.snapshots) == {0, 25, 50}
    assert res.snapshots[0].t == 0
    assert abs(distribution(res.snapshots[0]).p[0] - 1.0) < 1e-12
    assert np.array_equal(res.snapshots[50].amps, res.state.amps)
    # a fresh evolution to t=25 reproduces the mid-run snapshot exactly
    direct = evolve(spec, 25)
    mid = res.snapshots[25]
    lo, hi = mid.origin - 25, mid.origin + 25
    o = direct.state.origin
    assert np.array_equal(mid.amps[:, lo : hi + 1], direct.state.amps[:, o - 25 : o + 26])


# -- dense global-unitary oracle --------------------------------------------

@pytest.mark.parametrize("spec,family", [
    (SequenceSpec(SequenceKind.CONSTANT, alpha_a=PI / 4), "hadamard"),
    (SequenceSpec(SequenceKind.PERIODIC_APPROXIMANT, PI / 3, PI / 6, approximant_order=2), "hadamard"),
    (SequenceSpec(SequenceKind.FIBONACCI, alpha_a=PI / 3, alpha_b=PI / 6), "hadamard"),
    (SequenceSpec(SequenceKind.SILVER_MEAN, alpha_a=1.2, alpha_b=0.4), "hadamard"),
    (SequenceSpec(SequenceKind.RANDOM_BINARY, alpha_a=1.0, seed=21), "hadamard"),
    (SequenceSpec(SequenceKind.RANDOM_CONTINUOUS, width=PI / 8, seed=22), "hadamard"),
    (SequenceSpec(SequenceKind.FIBONACCI, alpha_a=2.2, alpha_b=-0.7, family=CoinFamily.ROTATION), "rotation"),
])
def test_dense_matrix_oracle(spec, family):
    t_steps = 12
    res = evolve(spec, t_steps)
    angles = schedule_angles(spec, t_steps)
    expected = dense_evolve(angles, family, (complex(SQ2, 0), complex(0, SQ2)))
    assert np.max(np.abs(res.state.amps - expected)) < 1e-10
