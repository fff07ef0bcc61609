"""Reading and validating experiment result CSVs.

The only coupling to the producing package is the column schema below; rows
are plain dicts so the plotting layer stays independent of how the numbers
were computed.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

# Column layout of the result CSVs, in file order.
SCHEMA_COLUMNS = (
    "experiment",
    "d",
    "m",
    "n",
    "trial",
    "seed",
    "method",
    "err_inf",
    "err_spec",
    "err_inf_rescaled",
    "err_spec_rescaled",
    "subspace_err",
    "wall_ms",
)

_INT_COLUMNS = ("d", "m", "n", "trial", "seed")
_FLOAT_COLUMNS = (
    "err_inf",
    "err_spec",
    "err_inf_rescaled",
    "err_spec_rescaled",
    "subspace_err",
    "wall_ms",
)


class PlotsError(Exception):
    """Base class for input problems; the CLI maps these to exit code 2."""


class SchemaError(PlotsError):
    """CSV header is missing required columns."""

    def __init__(self, missing: list[str]):
        self.missing = tuple(missing)
        super().__init__("missing columns: " + ", ".join(missing))


class EmptyDataError(PlotsError):
    """CSV has a header but no data rows."""


def read_rows(csv_path: str | Path) -> list[dict]:
    """Load a result CSV into typed row dicts.

    Raises SchemaError naming every absent schema column, EmptyDataError for
    a header-only file, and PlotsError for unreadable input. Extra columns
    are tolerated and ignored. Empty numeric cells become NaN.
    """
    path = Path(csv_path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames
            if header is None:
                raise EmptyDataError(f"{path} is empty")
            missing = [c for c in SCHEMA_COLUMNS if c not in header]
            if missing:
                raise SchemaError(missing)
            raw = list(reader)
    except OSError as exc:
        raise PlotsError(f"cannot read {path}: {exc}") from exc
    if not raw:
        raise EmptyDataError(f"{path} has no data rows")

    rows = []
    for record in raw:
        row: dict = {"experiment": record["experiment"], "method": record["method"]}
        for name in _INT_COLUMNS:
            row[name] = int(record[name])
        for name in _FLOAT_COLUMNS:
            cell = record[name]
            row[name] = float(cell) if cell not in ("", None) else math.nan
        rows.append(row)
    return rows


def series_means(
    rows: list[dict], key_fields: tuple[str, ...], value_field: str
) -> dict[tuple, tuple[list[int], list[float], list[list[float]]]]:
    """Group rows and average the value over trials at each n.

    Returns, per sorted key tuple, the sorted n values, the trial mean at
    each n, and the raw per-trial values (for band shading). NaN values are
    dropped before averaging.
    """
    grouped: dict[tuple, dict[int, list[float]]] = {}
    for row in rows:
        key = tuple(row[f] for f in key_fields)
        value = row[value_field]
        if math.isnan(value):
            continue
        grouped.setdefault(key, {}).setdefault(row["n"], []).append(value)

    out: dict[tuple, tuple[list[int], list[float], list[list[float]]]] = {}
    for key in sorted(grouped):
        by_n = grouped[key]
        ns = sorted(by_n)
        means = [sum(by_n[n]) / len(by_n[n]) for n in ns]
        out[key] = (ns, means, [by_n[n] for n in ns])
    return out
