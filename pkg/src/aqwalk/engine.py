"""Exact unitary evolution of the spin (x) position wavefunction.

The state lives on a fixed lattice of ``2*t_max + 1`` sites; a walk spreads
at most one site per step, so boundaries are never reached and no boundary
condition is ever applied.  One step is a coin acting on every site's
spinor followed by the spin-conditioned shift (up moves right, down moves
left).  ``evolve`` runs the schedule through the selected kernel and
records sigma(t) and the total probability at every recorded step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import kernels
from .coins import Coin, CoinFamily
from .errors import ParameterError, ResourceLimitError
from .observables import SigmaSeries
from .sequences import SequenceSpec, schedule_angles

__all__ = ["InitialState", "WalkState", "EvolveResult", "init_state", "apply_coin", "apply_shift", "step", "evolve"]

_SQRT_HALF = math.sqrt(0.5)

#: Spinor giving a left-right symmetric walk for any real coin.
DEFAULT_SPINOR = (complex(_SQRT_HALF, 0.0), complex(0.0, _SQRT_HALF))


@dataclass(frozen=True)
class InitialState:
    """Spinor placed at the origin at t = 0; must have unit norm."""

    up: complex = DEFAULT_SPINOR[0]
    down: complex = DEFAULT_SPINOR[1]

    def __post_init__(self) -> None:
        norm = abs(self.up) ** 2 + abs(self.down) ** 2
        if not math.isfinite(norm) or abs(norm - 1.0) > 1e-12:
            raise ParameterError(f"initial spinor must be normalized, got |up|^2+|down|^2 = {norm!r}")


@dataclass(frozen=True)
class WalkState:
    """Wavefunction at step ``t``: ``amps[0]`` is spin-up, ``amps[1]`` spin-down.

    ``origin`` is the array index of lattice site ``k = 0``; amplitude
    support stays within ``|k| <= t`` with ``k + t`` even.
    """

    amps: np.ndarray
    t: int
    origin: int

    @property
    def radius(self) -> int:
        """Largest step count the lattice can hold."""
        return min(self.origin, self.amps.shape[1] - 1 - self.origin)

    def k_values(self) -> np.ndarray:
        return np.arange(self.amps.shape[1], dtype=np.int64) - self.origin

    def norm(self) -> float:
        a = self.amps
        return float((a.real**2 + a.imag**2).sum())


@dataclass(frozen=True)
class EvolveResult:
    state: WalkState
    sigma: SigmaSeries
    norms: np.ndarray
    snapshots: dict[int, WalkState] = field(default_factory=dict)


def init_state(t_max: int, init: InitialState | None = None) -> WalkState:
    """All amplitude at the origin with the given spinor, on a lattice sized for ``t_max`` steps."""
    if t_max < 1:
        raise ParameterError(f"t_max must be >= 1, got {t_max}")
    if init is None:
        init = InitialState()
    amps = np.zeros((2, 2 * t_max + 1), dtype=np.complex128)
    amps[0, t_max] = init.up
    amps[1, t_max] = init.down
    return WalkState(amps=amps, t=0, origin=t_max)


def apply_coin(state: WalkState, coin: Coin) -> WalkState:
    """Left-multiply every site's spinor by the coin matrix."""
    m = coin.matrix
    u, d = state.amps[0], state.amps[1]
    amps = np.empty_like(state.amps)
    amps[0] = m[0, 0] * u + m[0, 1] * d
    amps[1] = m[1, 0] * u + m[1, 1] * d
    return WalkState(amps=amps, t=state.t, origin=state.origin)


def apply_shift(state: WalkState) -> WalkState:
    """Move spin-up amplitude one site right and spin-down one site left."""
    if state.t + 1 > state.radius:
        raise ResourceLimitError(
            f"step {state.t + 1} would leave the lattice; rebuild the state with a larger t_max"
        )
    u, d = state.amps[0], state.amps[1]
    amps = np.zeros_like(state.amps)
    amps[0, 1:] = u[:-1]
    amps[1, :-1] = d[1:]
    return WalkState(amps=amps, t=state.t + 1, origin=state.origin)


def step(state: WalkState, coin: Coin) -> WalkState:
    """One walk step: coin first, then shift."""
    return apply_shift(apply_coin(state, coin))


def _coin_coefficients(family: CoinFamily, angles: np.ndarray):
    c = np.cos(angles)
    s = np.sin(angles)
    c[angles == math.pi / 2] = 0.0  # exact confining coin; see coins._coin_matrix
    if family is CoinFamily.GENERALIZED_HADAMARD:
        return c, s, s, -c
    return c, -s, s, c


def evolve(
    spec: SequenceSpec,
    steps: int,
    init: InitialState | None = None,
    record_every: int = 1,
    snapshot_times: Iterable[int] = (),
    letter_order: str = "word",
    kernel: str | None = None,
) -> EvolveResult:
    """Run ``steps`` walk steps under the schedule described by ``spec``.

    sigma(t) and the total probability are recorded at every multiple of
    ``record_every`` (which must divide ``steps``); full state snapshots are
    kept at the requested times.  The run is deterministic given
    ``(spec, init, steps, letter_order)``.
    """
    if steps < 1:
        raise ParameterError(f"steps must be >= 1, got {steps}")
    if record_every < 1 or steps % record_every != 0:
        raise ParameterError(
            f"record_every must be >= 1 and divide steps, got {record_every} for {steps} steps"
        )
    snap_times = sorted(set(int(t) for t in snapshot_times))
    if snap_times and (snap_times[0] < 0 or snap_times[-1] > steps):
        raise ParameterError(f"snapshot times must lie in [0, {steps}], got {snap_times}")

    evolve_window = kernels.evolve_window if kernel is None else kernels.available_kernels()[kernel].evolve_window

    angles = schedule_angles(spec, steps, letter_order)
    c00, c01, c10, c11 = _coin_coefficients(spec.family, angles)

    state0 = init_state(steps, init)
    up = state0.amps[0]
    down = state0.amps[1]
    origin = state0.origin
    sigma_all = np.empty(steps, dtype=np.float64)
    norm_all = np.empty(steps, dtype=np.float64)

    snapshots: dict[int, WalkState] = {}

    def grab(t: int) -> None:
        amps = np.stack([up, down]).copy()
        amps.setflags(write=False)
        snapshots[t] = WalkState(amps=amps, t=t, origin=origin)

    t = 0
    for t_snap in snap_times:
        if t_snap > t:
            sl = slice(t, t_snap)
            evolve_window(up, down, origin, t, c00[sl], c01[sl], c10[sl], c11[sl], sigma_all[sl], norm_all[sl])
            t = t_snap
        grab(t_snap)
    if t < steps:
        sl = slice(t, steps)
        evolve_window(up, down, origin, t, c00[sl], c01[sl], c10[sl], c11[sl], sigma_all[sl], norm_all[sl])

    final = np.stack([up, down])
    final.setflags(write=False)
    state = WalkState(amps=final, t=steps, origin=origin)

    recorded = np.arange(record_every, steps + 1, record_every, dtype=np.int64)
    series = SigmaSeries(t=recorded, sigma=sigma_all[recorded - 1].copy())
    norms = norm_all[recorded - 1].copy()
    return EvolveResult(state=state, sigma=series, norms=norms, snapshots=snapshots)
