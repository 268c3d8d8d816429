"""Slope-surface sweep over the (alpha, beta) coin-angle plane.

Each grid cell runs one evolution and one exponent fit; cells are fully
independent, so they can run on a process pool.  A journal file records
finished cells, letting an interrupted sweep resume without recomputing;
the final surface CSV is written in fixed row order with fixed float
formatting, so its bytes do not depend on the worker count or on whether
the run was resumed.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .coins import CoinFamily
from .errors import ParameterError
from .iofmt import write_surface_csv
from .kernels import KERNEL_NAME
from .observables import fit_or_confined
from .sequences import SequenceKind, SequenceSpec, derive_seed

__all__ = ["SweepConfig", "SlopeSurface", "run_sweep"]

JOURNAL_NAME = "journal.jsonl"
SURFACE_NAME = "surface.csv"


@dataclass(frozen=True)
class SweepConfig:
    """Grid resolution, evolution length and fit window for one sweep."""

    grid: int
    steps: int
    kind: SequenceKind
    fit_min: int
    fit_max: int
    master_seed: int = 0
    workers: int = 1
    family: CoinFamily = CoinFamily.GENERALIZED_HADAMARD
    letter_order: str = "word"
    approximant_order: int | None = None
    width: float | None = None

    def __post_init__(self) -> None:
        if self.grid < 2:
            raise ParameterError(f"grid resolution must be >= 2, got {self.grid}")
        if self.steps < 100:
            raise ParameterError(f"sweep runs need steps >= 100, got {self.steps}")
        if not (1 <= self.fit_min < self.fit_max <= self.steps):
            raise ParameterError(
                f"fit window [{self.fit_min}, {self.fit_max}] must lie within [1, {self.steps}]"
            )
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")

    def axis_values(self) -> np.ndarray:
        return np.linspace(0.0, math.pi / 2, self.grid)

    def fingerprint(self) -> str:
        payload = {
            "grid": self.grid,
            "steps": self.steps,
            "kind": self.kind.value,
            "fit_min": self.fit_min,
            "fit_max": self.fit_max,
            "master_seed": self.master_seed,
            "family": self.family.value,
            "letter_order": self.letter_order,
            "approximant_order": self.approximant_order,
            "width": self.width,
            "version": __version__,
            "kernel": KERNEL_NAME,
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


@dataclass(frozen=True)
class SlopeSurface:
    """Fitted exponent per grid cell; ``c[i, j]`` belongs to (alphas[i], betas[j])."""

    alphas: np.ndarray
    betas: np.ndarray
    c: np.ndarray
    flags: np.ndarray  # str array, same shape as c

    def rows(self):
        for i, a in enumerate(self.alphas):
            for j, b in enumerate(self.betas):
                yield float(a), float(b), float(self.c[i, j]), str(self.flags[i, j])


def _cell_spec(config: SweepConfig, i: int, j: int, alpha: float, beta: float) -> SequenceSpec:
    seed = None
    if config.kind in (SequenceKind.RANDOM_BINARY, SequenceKind.RANDOM_CONTINUOUS):
        seed = derive_seed(config.master_seed, i * config.grid + j)
    return SequenceSpec(
        kind=config.kind,
        alpha_a=alpha,
        alpha_b=beta,
        width=config.width,
        seed=seed,
        approximant_order=config.approximant_order,
        family=config.family,
    )


def _cell_task(args) -> tuple[int, int, float, str]:
    config, i, j, alpha, beta = args
    from .engine import evolve  # runtime import keeps module import acyclic

    try:
        spec = _cell_spec(config, i, j, alpha, beta)
        res = evolve(spec, config.steps, letter_order=config.letter_order)
        fit = fit_or_confined(res.sigma, (config.fit_min, config.fit_max))
        flag = fit.flag
        if not fit.confined and not (-0.05 <= fit.exponent <= 1.05):
            # bounded-but-unconfined boundary cells (a degenerate coin mixed
            # into the schedule) can fit far outside the physical band
            flag = "irregular"
        return i, j, fit.exponent, flag
    except Exception as exc:  # cell failures must not kill the sweep
        return i, j, float("nan"), f"error:{type(exc).__name__}"


def _load_journal(path: Path, fingerprint: str) -> dict[tuple[int, int], tuple[float, str]]:
    done: dict[tuple[int, int], tuple[float, str]] = {}
    if not path.exists():
        return done
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        return done
    try:
        head = json.loads(lines[0])
    except json.JSONDecodeError:
        return done
    if head.get("fingerprint") != fingerprint:
        return done
    for line in lines[1:]:
        try:
            rec = json.loads(line)
            done[(int(rec["i"]), int(rec["j"]))] = (float(rec["c"]), str(rec["flag"]))
        except (json.JSONDecodeError, KeyError, ValueError):
            continue  # torn write from an interrupt; recompute that cell
    return done


def run_sweep(config: SweepConfig, out_dir: str | Path, resume: bool = True) -> SlopeSurface:
    """Fit one exponent per grid cell and write ``surface.csv`` plus a journal.

    Failed cells are recorded as NaN with an ``error:<type>`` flag and the
    sweep continues.  With ``resume=True`` (default) cells already present
    in a journal matching this config are not recomputed.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    journal_path = out / JOURNAL_NAME
    fingerprint = config.fingerprint()

    done = _load_journal(journal_path, fingerprint) if resume else {}
    axis = config.axis_values()
    pending = [
        (config, i, j, float(axis[i]), float(axis[j]))
        for i in range(config.grid)
        for j in range(config.grid)
        if (i, j) not in done
    ]

    mode = "a" if done else "w"
    with open(journal_path, mode, encoding="utf-8") as journal:
        if not done:
            journal.write(json.dumps({"fingerprint": fingerprint}) + "\n")
            journal.flush()
        if config.workers > 1 and pending:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                for i, j, c, flag in pool.map(_cell_task, pending):
                    done[(i, j)] = (c, flag)
                    journal.write(json.dumps({"i": i, "j": j, "c": c, "flag": flag}) + "\n")
                    journal.flush()
        else:
            for task in pending:
                i, j, c, flag = _cell_task(task)
                done[(i, j)] = (c, flag)
                journal.write(json.dumps({"i": i, "j": j, "c": c, "flag": flag}) + "\n")
                journal.flush()

    c = np.full((config.grid, config.grid), np.nan)
    flags = np.full((config.grid, config.grid), "", dtype=object)
    for (i, j), (ci, flag) in done.items():
        c[i, j] = ci
        flags[i, j] = flag
    surface = SlopeSurface(alphas=axis, betas=axis.copy(), c=c, flags=flags)
    write_surface_csv(out / SURFACE_NAME, surface.rows())
    return surface
