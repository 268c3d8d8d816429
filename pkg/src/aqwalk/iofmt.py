"""CSV and metadata writers shared by the CLI commands.

Column layouts (header row included, one record per line):

- sigma series:  ``t,sigma``
- distribution:  ``k,p``
- slope surface: ``alpha,beta,c,flag``
- spin cycles:   ``alpha,beta,family,period``

Floats are rendered with ``repr``, the shortest digit string that round
trips, so identical runs produce byte-identical files on any host.
Metadata JSON carries the fully resolved configuration, the RNG and seed
derivation identifiers, the active kernel and a determinism hash over all
output files.
"""

from __future__ import annotations

import hashlib
import json
import time
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .kernels import KERNEL_NAME
from .sequences import RNG_ALGORITHM, SEED_DERIVATION_RULE

METADATA_NAME = "metadata.json"


def format_float(x: float) -> str:
    return repr(float(x))


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def write_sigma_csv(path: Path, t, values, value_name: str = "sigma") -> None:
    write_csv(path, ["t", value_name], ((str(int(ti)), format_float(v)) for ti, v in zip(t, values)))


def write_distribution_csv(path: Path, k, p) -> None:
    write_csv(path, ["k", "p"], ((str(int(ki)), format_float(pi)) for ki, pi in zip(k, p)))


def write_surface_csv(path: Path, rows: Iterable[tuple[float, float, float, str]]) -> None:
    write_csv(
        path,
        ["alpha", "beta", "c", "flag"],
        ((format_float(a), format_float(b), format_float(c), flag) for a, b, c, flag in rows),
    )


def write_spincycle_csv(path: Path, rows: Iterable[tuple[float, float, str, int | None]]) -> None:
    write_csv(
        path,
        ["alpha", "beta", "family", "period"],
        (
            (format_float(a), format_float(b), fam, "none" if p is None else str(int(p)))
            for a, b, fam, p in rows
        ),
    )


def read_csv_columns(path: Path) -> tuple[list[str], list[list[str]]]:
    """Header names and per-column token lists (no numeric conversion)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    header = lines[0].split(",")
    cols: list[list[str]] = [[] for _ in header]
    for ln in lines[1:]:
        for i, tok in enumerate(ln.split(",")):
            cols[i].append(tok)
    return header, cols


def file_sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def determinism_hash(paths: Sequence[Path]) -> str:
    h = hashlib.sha256()
    for p in sorted(Path(p) for p in paths):
        h.update(p.name.encode())
        h.update(b"\0")
        h.update(file_sha256(p).encode())
        h.update(b"\n")
    return h.hexdigest()


def write_metadata(
    out_dir: Path,
    command: str,
    config: dict,
    output_files: Sequence[Path],
    wall_clock_s: float,
    extra: dict | None = None,
) -> Path:
    meta = {
        "tool": "aqwalk",
        "version": __version__,
        "command": command,
        "config": config,
        "rng": {"algorithm": RNG_ALGORITHM, "seed_derivation": SEED_DERIVATION_RULE},
        "kernel": KERNEL_NAME,
        "wall_clock_s": round(wall_clock_s, 3),
        "created_unix": time.time(),
        "outputs": {Path(p).name: file_sha256(p) for p in output_files},
        "determinism_hash": determinism_hash(output_files),
    }
    if extra:
        meta.update(extra)
    path = Path(out_dir) / METADATA_NAME
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=False)
        fh.write("\n")
    return path


def read_metadata(out_dir: Path) -> dict:
    with open(Path(out_dir) / METADATA_NAME, "r", encoding="utf-8") as fh:
        return json.load(fh)
