"""Distributions, sigma(t), power-law exponent fits, disorder averages.

The spreading exponent is the slope of a least-squares line through
``(log t, log sigma)`` over a log-uniformly decimated window.  Walks whose
sigma never reaches ``CONFINEMENT_THRESHOLD`` inside the window are
reported as confined (exponent 0) instead of producing a degenerate fit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace as dc_replace
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import FitDomainError, ParameterError
from .sequences import SequenceSpec, derive_seed

if TYPE_CHECKING:
    from .engine import WalkState

__all__ = [
    "Distribution",
    "SigmaSeries",
    "FitResult",
    "EnsembleResult",
    "distribution",
    "sigma",
    "sigma_from_state",
    "fit_exponent",
    "fit_or_confined",
    "ensemble_average",
]

#: Below this window maximum of sigma a walk is reported as confined.
CONFINEMENT_THRESHOLD = 2.0

#: Fits use at most this many log-uniformly spaced points.
MAX_FIT_POINTS = 200


@dataclass(frozen=True)
class Distribution:
    """Position distribution P(k) over the light cone ``k in [-t, t]``."""

    k: np.ndarray
    p: np.ndarray
    t: int


@dataclass(frozen=True)
class SigmaSeries:
    """Pairs ``(t, sigma(t))`` with strictly ascending times."""

    t: np.ndarray
    sigma: np.ndarray

    def window(self, t_min: int, t_max: int) -> "SigmaSeries":
        mask = (self.t >= t_min) & (self.t <= t_max)
        return SigmaSeries(t=self.t[mask], sigma=self.sigma[mask])


@dataclass(frozen=True)
class FitResult:
    """Power-law fit ``sigma ~ prefactor * t**exponent`` over a window."""

    exponent: float
    prefactor: float
    window: tuple[int, int]
    residual: float
    n_points: int
    confined: bool = False

    @property
    def flag(self) -> str:
        return "confined" if self.confined else "ok"


def distribution(state: "WalkState") -> Distribution:
    """Marginalize the spin: P(k) = |a_up(k)|^2 + |a_down(k)|^2 over |k| <= t."""
    lo = state.origin - state.t
    hi = state.origin + state.t
    a = state.amps[:, lo : hi + 1]
    p = (a.real**2 + a.imag**2).sum(axis=0)
    k = np.arange(-state.t, state.t + 1, dtype=np.int64)
    return Distribution(k=k, p=p, t=state.t)


def sigma(dist: Distribution) -> float:
    """Standard deviation sqrt(<k^2> - <k>^2) of a normalized distribution."""
    k = dist.k.astype(np.float64)
    m1 = (dist.p * k).sum()
    m2 = (dist.p * k * k).sum()
    var = m2 - m1 * m1
    return math.sqrt(var) if var > 0.0 else 0.0


def sigma_from_state(state: "WalkState") -> float:
    """sigma computed directly from the amplitudes, bypassing Distribution."""
    p = (state.amps.real**2 + state.amps.imag**2).sum(axis=0)
    k = np.arange(state.amps.shape[1], dtype=np.float64) - state.origin
    m1 = (p * k).sum()
    m2 = (p * k * k).sum()
    var = m2 - m1 * m1
    return math.sqrt(var) if var > 0.0 else 0.0


def _decimate_log_uniform(t: np.ndarray, max_points: int) -> np.ndarray:
    targets = np.geomspace(t[0], t[-1], num=min(max_points, t.size))
    pos = np.searchsorted(t, targets)
    return np.unique(np.clip(pos, 0, t.size - 1))


def fit_exponent(
    series: SigmaSeries,
    window: tuple[int, int],
    max_points: int = MAX_FIT_POINTS,
) -> FitResult:
    """Fit the spreading exponent on ``window = (t_min, t_max)``.

    Raises
    ------
    FitDomainError
        If the window lies outside the series, keeps fewer than 10 points
        after log-uniform decimation, or contains sigma = 0.
    """
    t_min, t_max = int(window[0]), int(window[1])
    if t_min < 1 or t_max <= t_min:
        raise FitDomainError(f"bad fit window [{t_min}, {t_max}]")
    if series.t.size == 0 or t_min < series.t[0] or t_max > series.t[-1]:
        raise FitDomainError(
            f"fit window [{t_min}, {t_max}] is not covered by the series "
            f"[{series.t[0] if series.t.size else None}, {series.t[-1] if series.t.size else None}]"
        )
    sel = series.window(t_min, t_max)
    pos = _decimate_log_uniform(sel.t, max_points)
    t = sel.t[pos].astype(np.float64)
    s = sel.sigma[pos]
    if t.size < 10:
        raise FitDomainError(f"only {t.size} points after log-decimation; need at least 10")
    if np.any(s <= 0.0):
        raise FitDomainError(
            "sigma vanishes inside the fit window; exclude zeros or report the walk as confined"
        )
    log_t = np.log(t)
    log_s = np.log(s)
    slope, intercept = np.polyfit(log_t, log_s, 1)
    resid = log_s - (slope * log_t + intercept)
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult(
        exponent=float(slope),
        prefactor=float(np.exp(intercept)),
        window=(t_min, t_max),
        residual=rms,
        n_points=int(t.size),
    )


def fit_or_confined(
    series: SigmaSeries,
    window: tuple[int, int],
    max_points: int = MAX_FIT_POINTS,
    threshold: float = CONFINEMENT_THRESHOLD,
) -> FitResult:
    """Like :func:`fit_exponent`, but report bounded walks as confined."""
    sel = series.window(int(window[0]), int(window[1]))
    if sel.sigma.size and sel.sigma.max() < threshold:
        return FitResult(
            exponent=0.0,
            prefactor=0.0,
            window=(int(window[0]), int(window[1])),
            residual=0.0,
            n_points=int(sel.sigma.size),
            confined=True,
        )
    return fit_exponent(series, window, max_points)


@dataclass(frozen=True)
class EnsembleResult:
    """Disorder average over independently seeded realizations."""

    mean_sigma: SigmaSeries
    stderr: np.ndarray
    mean_distribution: Distribution
    member_seeds: tuple[int, ...]
    member_sigmas: np.ndarray  # shape (R, len(t))


def _member_task(args) -> tuple[int, np.ndarray, np.ndarray]:
    index, spec, steps, record_every, letter_order = args
    from .engine import evolve  # runtime import keeps module import acyclic

    res = evolve(spec, steps, record_every=record_every, letter_order=letter_order, snapshot_times=(steps,))
    dist = distribution(res.snapshots[steps])
    return index, res.sigma.sigma, dist.p


def ensemble_average(
    spec: SequenceSpec,
    realizations: int,
    steps: int,
    seeds: Sequence[int] | None = None,
    workers: int = 1,
    record_every: int = 1,
    letter_order: str = "word",
) -> EnsembleResult:
    """Average sigma(t) pointwise over ``realizations`` seeded runs.

    Member ``i`` uses ``derive_seed(spec.seed, i)`` unless explicit seeds
    are given.  Aggregation is in member-index order, so results do not
    depend on the worker count.
    """
    if realizations < 1:
        raise ParameterError(f"realizations must be >= 1, got {realizations}")
    if not spec.is_random:
        raise ParameterError(f"ensemble averaging needs a random sequence kind, got {spec.kind.value!r}")
    if seeds is None:
        seeds = [derive_seed(spec.seed, i) for i in range(realizations)]
    elif len(seeds) != realizations:
        raise ParameterError(f"got {len(seeds)} seeds for {realizations} realizations")

    tasks = [
        (i, dc_replace(spec, seed=int(seeds[i])), steps, record_every, letter_order)
        for i in range(realizations)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_member_task, tasks))
    else:
        results = [_member_task(t) for t in tasks]
    results.sort(key=lambda r: r[0])

    sigmas = np.stack([r[1] for r in results])
    dists = np.stack([r[2] for r in results])
    t = np.arange(record_every, steps + 1, record_every, dtype=np.int64)
    # centered statistics: a degenerate ensemble (all members equal) then
    # yields an exactly zero standard error
    base = sigmas[0]
    mean = base + (sigmas - base).mean(axis=0)
    mean_sigma = SigmaSeries(t=t, sigma=mean)
    if realizations >= 2:
        dev = sigmas - mean
        stderr = np.sqrt((dev**2).sum(axis=0) / (realizations - 1)) / math.sqrt(realizations)
    else:
        stderr = np.zeros_like(mean_sigma.sigma)
    k = np.arange(-steps, steps + 1, dtype=np.int64)
    mean_dist = Distribution(k=k, p=dists.mean(axis=0), t=steps)
    return EnsembleResult(
        mean_sigma=mean_sigma,
        stderr=stderr,
        mean_distribution=mean_dist,
        member_seeds=tuple(int(s) for s in seeds),
        member_sigmas=sigmas,
    )
