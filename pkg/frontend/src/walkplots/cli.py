"""Command line driver: ``walkplots --kind <kind> inputs... --out image``.

Kinds: ``distribution-overlay``, ``sigma-loglog``, ``surface``,
``ensemble-distribution``.  ``--dump`` skips rendering and re-emits the
parsed numeric columns byte-identically (a self-check that plotting never
alters data).  Exit codes: 0 success, 1 schema error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .csvio import SchemaError, dump_numeric_columns, read_table
from .figures import (
    plot_distribution_overlay,
    plot_ensemble_distribution,
    plot_sigma_loglog,
    plot_surface,
)

KIND_SCHEMAS = {
    "distribution-overlay": ("k", "p"),
    "sigma-loglog": ("t", "sigma"),
    "surface": ("alpha", "beta", "c", "flag"),
    "ensemble-distribution": ("k", "p"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walkplots", description=__doc__)
    parser.add_argument("inputs", nargs="+", type=Path, help="CSV files produced by the engine")
    parser.add_argument("--kind", choices=sorted(KIND_SCHEMAS), required=True)
    parser.add_argument("--out", type=Path, default=None, help="output image (or dump target)")
    parser.add_argument("--style", choices=("heatmap", "3d"), default="heatmap", help="surface style")
    parser.add_argument("--dump", action="store_true", help="re-emit numeric columns instead of plotting")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        tables = [read_table(p, expect=KIND_SCHEMAS[args.kind]) for p in args.inputs]
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.dump:
        if len(tables) != 1:
            parser.error("--dump expects exactly one input file")
        payload = dump_numeric_columns(tables[0])
        if args.out is not None:
            args.out.write_text(payload, encoding="utf-8")
        else:
            sys.stdout.write(payload)
        return 0

    if args.out is None:
        parser.error("--out is required when rendering")
    if args.kind == "surface":
        if len(tables) != 1:
            parser.error("surface rendering expects exactly one input file")
        plot_surface(tables[0], args.out, style=args.style)
    elif args.kind == "distribution-overlay":
        plot_distribution_overlay(tables, args.out)
    elif args.kind == "sigma-loglog":
        plot_sigma_loglog(tables, args.out)
    else:
        plot_ensemble_distribution(tables, args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
