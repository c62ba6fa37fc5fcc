"""Reading and validating the CLI's CSV output.

Files carry '#'-prefixed `key: value` metadata lines followed by a header
row and numeric rows. Each figure kind expects a specific producing
command and column set; anything else is a schema mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Table", "SchemaMismatchError", "read_table", "validate_schema", "SCHEMAS"]

# figure kind -> (producing command, exact column tuple)
SCHEMAS = {
    "ar1_curves": ("sweep-ar1", ("psi1", "rho", "b")),
    "ar2_contours": ("sweep-ar2", ("psi1", "psi2", "rho", "b")),
    "ar2_region": ("sweep-ar2", ("rho_lo", "rho_hi", "b_min", "b_max", "count")),
    "poles_scatter": ("scatter-poles", ("rho", "b", "probe")),
}


class SchemaMismatchError(ValueError):
    """CSV metadata or columns do not match the figure kind."""


@dataclass(frozen=True)
class Table:
    meta: dict
    columns: tuple
    data: np.ndarray  # shape (rows, columns); inf allowed

    def col(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def read_table(path) -> Table:
    meta = {}
    header = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("# "):
                key, _, value = line[2:].partition(": ")
                meta[key] = value
                continue
            if header is None:
                header = tuple(line.split(","))
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None:
        raise SchemaMismatchError(f"{path}: no header row found")
    data = np.asarray(rows, dtype=float).reshape(len(rows), len(header))
    return Table(meta=meta, columns=header, data=data)


def validate_schema(kind: str, table: Table) -> None:
    if kind not in SCHEMAS:
        raise ValueError(f"unknown figure kind {kind!r}")
    command, columns = SCHEMAS[kind]
    got = table.meta.get("command")
    if got != command:
        raise SchemaMismatchError(
            f"figure kind {kind!r} expects CSV from {command!r}, got {got!r}"
        )
    if table.columns != columns:
        raise SchemaMismatchError(
            f"figure kind {kind!r} expects columns {columns}, got {table.columns}"
        )
    if table.meta.get("units") not in ("nats", "bits"):
        raise SchemaMismatchError(f"missing or unknown units in metadata: {table.meta.get('units')!r}")
