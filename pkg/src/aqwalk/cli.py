"""Command-line interface: ``walk``, ``sweep``, ``ensemble`` and ``spincycle``.

Every command resolves its flags into a plain config dict, runs it through
:func:`run_from_config`, and writes CSV outputs plus a ``metadata.json``
that embeds the resolved config.  Feeding that config back into
:func:`run_from_config` reproduces the run byte for byte.

Exit codes: 0 success, 2 usage/parameter error, 3 resource limit,
4 fit-domain error in single-run mode.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .coins import CoinFamily, build_coin
from .engine import evolve
from .errors import FitDomainError, ParameterError, ResourceLimitError
from .iofmt import (
    write_csv,
    write_distribution_csv,
    write_metadata,
    write_sigma_csv,
    write_spincycle_csv,
)
from .observables import distribution, ensemble_average, fit_or_confined
from .sequences import SequenceKind, SequenceSpec
from .spin import detect_period, fibonacci_spin_products
from .sweep import SweepConfig, run_sweep

_FAMILIES = {f.value: f for f in CoinFamily}
_KINDS = {k.value: k for k in SequenceKind}


def _parse_snapshots(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return sorted({int(tok) for tok in text.split(",") if tok.strip()})
    except ValueError as exc:
        raise ParameterError(f"--snapshot expects a comma-separated list of integers, got {text!r}") from exc


def _resolve_angle(name: str, value: float | None, frac: list[int] | None, default: float | None = None) -> float | None:
    if value is not None and frac is not None:
        raise ParameterError(f"give either --{name} or --{name}-frac, not both")
    if frac is not None:
        p, q = frac
        if q == 0:
            raise ParameterError(f"--{name}-frac denominator must be nonzero")
        return p * math.pi / q
    if value is not None:
        return float(value)
    return default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqwalk",
        description="Quantum walks on a line with periodic, quasiperiodic and random coin schedules.",
    )
    parser.add_argument("--version", action="version", version=f"aqwalk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_angles(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alpha", type=float, help="coin angle for letter A, radians")
        p.add_argument("--alpha-frac", nargs=2, type=int, metavar=("P", "Q"), help="angle as P*pi/Q")
        p.add_argument("--beta", type=float, help="coin angle for letter B, radians")
        p.add_argument("--beta-frac", nargs=2, type=int, metavar=("P", "Q"), help="angle as P*pi/Q")

    def add_common(p: argparse.ArgumentParser, steps_default: int | None = None) -> None:
        p.add_argument("--steps", type=int, default=steps_default, required=steps_default is None)
        p.add_argument("--seed", type=int, default=0, help="master seed for random kinds")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument("--fit-min", type=int, default=None, help="fit window start (default steps/4)")
        p.add_argument("--fit-max", type=int, default=None, help="fit window end (default steps)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--letter-order", choices=("word", "operator"), default="word")

    def add_sequence(p: argparse.ArgumentParser) -> None:
        p.add_argument("--sequence", choices=sorted(_KINDS), required=True)
        p.add_argument("--approximant", type=int, default=None, help="order n for --sequence periodic")
        p.add_argument("--width", type=float, default=None, help="half-width for --sequence random-continuous")
        p.add_argument("--family", choices=sorted(_FAMILIES), default=CoinFamily.GENERALIZED_HADAMARD.value)

    p_walk = sub.add_parser("walk", help="single evolution; writes sigma series and snapshots")
    add_sequence(p_walk)
    add_angles(p_walk)
    add_common(p_walk)
    p_walk.add_argument("--snapshot", type=str, default=None, help="comma-separated times to dump P(k)")
    p_walk.add_argument("--record-every", type=int, default=1)
    p_walk.add_argument("--no-fit", action="store_true", help="skip the exponent fit")

    p_sweep = sub.add_parser("sweep", help="exponent surface over the (alpha, beta) grid")
    add_sequence(p_sweep)
    add_common(p_sweep, steps_default=4000)
    p_sweep.add_argument("--grid", type=int, default=32, help="grid resolution per axis")
    p_sweep.add_argument("--no-resume", action="store_true", help="ignore any existing journal")

    p_ens = sub.add_parser("ensemble", help="disorder average over seeded realizations")
    add_sequence(p_ens)
    add_angles(p_ens)
    add_common(p_ens)
    p_ens.add_argument("--realizations", type=int, required=True)
    p_ens.add_argument("--record-every", type=int, default=1)

    p_spin = sub.add_parser("spincycle", help="coin-only product periods over the angle grid")
    p_spin.add_argument("--grid", type=int, default=8)
    p_spin.add_argument("--bound", type=int, default=64, help="largest period searched")
    p_spin.add_argument("--tolerance", type=float, default=1e-8)
    p_spin.add_argument(
        "--family",
        choices=sorted(_FAMILIES) + ["both"],
        default="both",
    )
    p_spin.add_argument("--out", type=Path, default=Path("."))
    return parser


def _config_from_args(args: argparse.Namespace) -> dict:
    if args.command == "spincycle":
        families = sorted(_FAMILIES) if args.family == "both" else [args.family]
        return {
            "command": "spincycle",
            "grid": args.grid,
            "bound": args.bound,
            "tolerance": args.tolerance,
            "families": families,
        }

    fit_min = args.fit_min if args.fit_min is not None else max(1, args.steps // 4)
    fit_max = args.fit_max if args.fit_max is not None else args.steps
    config = {
        "command": args.command,
        "sequence": args.sequence,
        "family": args.family,
        "steps": args.steps,
        "seed": args.seed,
        "fit_min": fit_min,
        "fit_max": fit_max,
        "letter_order": args.letter_order,
        "workers": args.workers,
        "approximant": args.approximant,
        "width": args.width,
    }
    if args.command == "sweep":
        config.update({"grid": args.grid, "resume": not args.no_resume})
        return config

    alpha = _resolve_angle("alpha", args.alpha, args.alpha_frac, default=math.pi / 4)
    beta = _resolve_angle("beta", args.beta, args.beta_frac, default=None)
    config.update({"alpha": alpha, "beta": beta, "record_every": args.record_every})
    if args.command == "walk":
        config.update({"snapshots": _parse_snapshots(args.snapshot), "fit": not args.no_fit})
    else:
        config.update({"realizations": args.realizations})
    return config


def _spec_from_config(config: dict) -> SequenceSpec:
    return SequenceSpec(
        kind=_KINDS[config["sequence"]],
        alpha_a=config["alpha"],
        alpha_b=config["beta"],
        width=config["width"],
        seed=config["seed"],
        approximant_order=config["approximant"],
        family=_FAMILIES[config["family"]],
    )


def _fit_dict(fit) -> dict:
    return {
        "exponent": fit.exponent,
        "prefactor": fit.prefactor,
        "window": list(fit.window),
        "residual": fit.residual,
        "n_points": fit.n_points,
        "flag": fit.flag,
    }


def _run_walk(config: dict, out: Path) -> tuple[list[Path], dict]:
    spec = _spec_from_config(config)
    res = evolve(
        spec,
        config["steps"],
        record_every=config["record_every"],
        snapshot_times=config["snapshots"],
        letter_order=config["letter_order"],
    )
    files = [out / "sigma.csv"]
    write_sigma_csv(files[0], res.sigma.t, res.sigma.sigma)
    for t_snap in config["snapshots"]:
        dist = distribution(res.snapshots[t_snap])
        path = out / f"distribution_{t_snap:06d}.csv"
        write_distribution_csv(path, dist.k, dist.p)
        files.append(path)
    extra: dict = {}
    if config["fit"]:
        fit = fit_or_confined(res.sigma, (config["fit_min"], config["fit_max"]))
        extra["fit"] = _fit_dict(fit)
    return files, extra


def _run_ensemble(config: dict, out: Path) -> tuple[list[Path], dict]:
    spec = _spec_from_config(config)
    ens = ensemble_average(
        spec,
        realizations=config["realizations"],
        steps=config["steps"],
        workers=config["workers"],
        record_every=config["record_every"],
        letter_order=config["letter_order"],
    )
    window = (config["fit_min"], config["fit_max"])
    files = [
        out / "mean_sigma.csv",
        out / "stderr_sigma.csv",
        out / "mean_distribution.csv",
        out / "exponents.csv",
    ]
    write_sigma_csv(files[0], ens.mean_sigma.t, ens.mean_sigma.sigma)
    write_sigma_csv(files[1], ens.mean_sigma.t, ens.stderr, value_name="stderr")
    write_distribution_csv(files[2], ens.mean_distribution.k, ens.mean_distribution.p)

    member_fits = []
    from .observables import SigmaSeries

    for i, seed in enumerate(ens.member_seeds):
        series = SigmaSeries(t=ens.mean_sigma.t, sigma=ens.member_sigmas[i])
        member_fits.append(fit_or_confined(series, window))
    write_csv(
        files[3],
        ["realization", "seed", "c"],
        ((str(i), str(seed), repr(float(f.exponent))) for i, (seed, f) in enumerate(zip(ens.member_seeds, member_fits))),
    )

    fit_of_mean = fit_or_confined(ens.mean_sigma, window)
    exps = np.array([f.exponent for f in member_fits])
    extra = {
        "fit_of_mean": _fit_dict(fit_of_mean),
        "member_exponents": {"mean": float(exps.mean()), "std": float(exps.std(ddof=1)) if exps.size > 1 else 0.0},
    }
    return files, extra


def _run_sweep(config: dict, out: Path) -> tuple[list[Path], dict]:
    sweep_config = SweepConfig(
        grid=config["grid"],
        steps=config["steps"],
        kind=_KINDS[config["sequence"]],
        fit_min=config["fit_min"],
        fit_max=config["fit_max"],
        master_seed=config["seed"],
        workers=config["workers"],
        family=_FAMILIES[config["family"]],
        letter_order=config["letter_order"],
        approximant_order=config["approximant"],
        width=config["width"],
    )
    run_sweep(sweep_config, out, resume=config.get("resume", True))
    # journal.jsonl is an execution log (line order depends on scheduling), so
    # it stays out of the determinism hash
    return [out / "surface.csv"], {"fingerprint": sweep_config.fingerprint()}


def _run_spincycle(config: dict, out: Path) -> tuple[list[Path], dict]:
    grid = config["grid"]
    if grid < 2:
        raise ParameterError(f"grid resolution must be >= 2, got {grid}")
    bound = config["bound"]
    # a short tail past the bound is all detect_period samples; long tails
    # only accumulate roundoff (and can overflow for rotation coins)
    n_max = bound + 8
    angles = np.linspace(0.0, math.pi / 2, grid)
    rows = []
    for family_name in config["families"]:
        family = _FAMILIES[family_name]
        for a in angles:
            coin_a = build_coin(family, float(a))
            for b in angles:
                coin_b = build_coin(family, float(b))
                trace = fibonacci_spin_products(coin_a, coin_b, n_max)
                period = detect_period(trace, bound=bound, tolerance=config["tolerance"])
                rows.append((float(a), float(b), family_name, period))
    path = out / "spincycle.csv"
    write_spincycle_csv(path, rows)
    return [path], {"n_max": n_max}


_RUNNERS = {
    "walk": _run_walk,
    "ensemble": _run_ensemble,
    "sweep": _run_sweep,
    "spincycle": _run_spincycle,
}


def run_from_config(config: dict, out_dir: str | Path) -> dict:
    """Execute a resolved config dict; returns the metadata written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    files, extra = _RUNNERS[config["command"]](config, out)
    from .iofmt import read_metadata

    write_metadata(out, config["command"], config, files, time.perf_counter() - start, extra)
    return read_metadata(out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        meta = run_from_config(config, args.out)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except FitDomainError as exc:
        print(f"fit-domain error: {exc}", file=sys.stderr)
        return 4
    print(f"{config['command']}: wrote {len(meta['outputs'])} file(s) to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
