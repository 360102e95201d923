"""CSV/JSON emission with full double round-trip."""
from __future__ import annotations

import csv
import io
import json
from typing import IO, Iterable, Mapping, Sequence


def fmt(value) -> str:
    """17 significant digits for floats, plain text otherwise; ``None`` becomes empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if hasattr(value, "item"):  # numpy scalar
        return fmt(value.item())
    return str(value)


def write_csv(rows: Iterable[Mapping], columns: Sequence[str], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(col)) for col in columns])


def csv_text(rows: Iterable[Mapping], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()


def read_csv(stream: IO[str]) -> list[dict[str, str]]:
    return list(csv.DictReader(stream))


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def json_text(payload) -> str:
    # repr-based float output is the shortest string that round-trips
    return json.dumps(_plain(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"
