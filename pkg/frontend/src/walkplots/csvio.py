"""Readers for the walk engine's CSV schemas.

Tokens are kept verbatim alongside their parsed float values so that
``--dump`` can re-emit numeric columns byte for byte.  Schemas:

- sigma series:  ``t,sigma``
- distribution:  ``k,p``
- slope surface: ``alpha,beta,c,flag`` (flag is the only non-numeric column)
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

__all__ = ["SchemaError", "Table", "read_table", "SCHEMAS", "sibling_metadata"]

#: header -> indices of numeric columns
SCHEMAS = {
    ("t", "sigma"): (0, 1),
    ("k", "p"): (0, 1),
    ("alpha", "beta", "c", "flag"): (0, 1, 2),
}


class SchemaError(ValueError):
    """An input file does not match any documented CSV schema."""


@dataclass(frozen=True)
class Table:
    path: Path
    header: tuple[str, ...]
    tokens: list[list[str]]  # per column, verbatim
    values: list[list[float] | None]  # parsed floats; None for text columns

    @property
    def numeric_columns(self) -> tuple[int, ...]:
        return SCHEMAS[self.header]

    def column(self, name: str) -> list[float]:
        values = self.values[self.header.index(name)]
        assert values is not None
        return values


def _parse_float(token: str) -> float:
    # accepts the engine's repr() floats, including 'nan'
    value = float(token)
    return value


def read_table(path: str | Path, expect: tuple[str, ...] | None = None) -> Table:
    """Read and validate one CSV file.

    Raises
    ------
    SchemaError
        Naming the offending file, if the header is unknown, does not match
        ``expect``, or a numeric cell fails to parse.
    """
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path}: no such file")
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln]
    if not lines:
        raise SchemaError(f"{path}: empty file")
    header = tuple(lines[0].split(","))
    if header not in SCHEMAS:
        raise SchemaError(f"{path}: unknown header {','.join(header)!r}")
    if expect is not None and header != expect:
        raise SchemaError(f"{path}: expected columns {','.join(expect)!r}, found {','.join(header)!r}")

    tokens: list[list[str]] = [[] for _ in header]
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(header):
            raise SchemaError(f"{path}: row with {len(cells)} cells, header has {len(header)}")
        for i, tok in enumerate(cells):
            tokens[i].append(tok)

    numeric = SCHEMAS[header]
    values: list[list[float] | None] = []
    for i in range(len(header)):
        if i not in numeric:
            values.append(None)
            continue
        try:
            values.append([_parse_float(tok) for tok in tokens[i]])
        except ValueError as exc:
            raise SchemaError(f"{path}: column {header[i]!r} holds a non-numeric cell") from exc
    return Table(path=path, header=header, tokens=tokens, values=values)


def dump_numeric_columns(table: Table) -> str:
    """Numeric columns re-emitted verbatim (the ``--dump`` payload)."""
    cols = table.numeric_columns
    out = [",".join(table.header[i] for i in cols)]
    for r in range(len(table.tokens[0])):
        out.append(",".join(table.tokens[i][r] for i in cols))
    return "\n".join(out) + "\n"


def sibling_metadata(path: str | Path) -> dict | None:
    """The run's ``metadata.json`` next to a CSV file, if present."""
    meta = Path(path).parent / "metadata.json"
    if not meta.exists():
        return None
    try:
        return json.loads(meta.read_text(encoding="utf-8"))
    except json.JSONDecodeError:
        return None


def is_finite(x: float) -> bool:
    return math.isfinite(x)
