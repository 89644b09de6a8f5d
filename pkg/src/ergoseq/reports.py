"""Deterministic CSV and JSON writers.

Every CSV starts with a provenance comment naming the config hash, then a
header row.  Numbers are written as decimal strings (repr for floats,
num/den for rationals) so outputs are byte-stable across runs; nothing
time- or path-dependent is ever emitted.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence


def fmt(value) -> str:
    """Canonical text for a cell: exact for ints/rationals, repr for floats."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, config_hash: str, header: Sequence[str],
              rows: Iterable[Sequence]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# config={config_hash}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(cell) for cell in row) + "\n")


def jsonable(value):
    """Recursively convert report values to JSON-safe types.

    Rationals and big integers become strings so no precision is lost in
    transit; floats stay native doubles.
    """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int) and abs(value) >= 2 ** 53:
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def write_json(path: Path, config_hash: str, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"config_hash": config_hash}
    doc.update(jsonable(payload))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
