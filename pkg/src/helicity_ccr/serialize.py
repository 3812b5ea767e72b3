"""CSV/JSON tables with round-trip-exact floats.

Every number is written with repr(), the shortest decimal that reads back to
the identical double, so serialized results are bit-stable across runs.  CSV
files are UTF-8 with a header row and "\n" line endings; empty cells stand
for missing values.  JSON files hold one object with ``meta`` (configuration
echo and version), ``columns`` and ``rows``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import __version__
from .scattering import SCAN_COLUMNS, ScanResult


@dataclass
class Table:
    """A column-ordered result table with a metadata header."""

    columns: tuple
    rows: list
    meta: dict = field(default_factory=dict)


def _cell_to_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return "+".join(str(x) for x in value)
    return str(value)


def _cell_to_json(value):
    if isinstance(value, (tuple,)):
        return list(value)
    return value


def table_from_scan(result: ScanResult) -> Table:
    rows = [list(row.as_tuple()) for row in result.rows]
    return Table(columns=SCAN_COLUMNS, rows=rows, meta=dict(result.meta))


def write_csv(table: Table, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell_to_text(v) for v in row])


def write_json(table: Table, stream) -> None:
    payload = {
        "meta": {**table.meta, "version": __version__},
        "columns": list(table.columns),
        "rows": [[_cell_to_json(v) for v in row] for row in table.rows],
    }
    json.dump(payload, stream, indent=1)
    stream.write("\n")


def read_json(stream) -> Table:
    payload = json.load(stream)
    return Table(columns=tuple(payload["columns"]),
                 rows=payload["rows"],
                 meta=payload.get("meta", {}))


def dumps(table: Table, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        write_csv(table, buf)
    elif fmt == "json":
        write_json(table, buf)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return buf.getvalue()
