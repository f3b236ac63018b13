"""Tabular results container with deterministic text serialization.

Both formats round-trip losslessly: floats are written with ``repr`` (the
shortest digit string that parses back to the same double), and metadata is
serialized with sorted keys so identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

__all__ = ["Dataset"]

_METADATA_PREFIX = "# "


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_cell(text: str):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class Dataset:
    """Column-labelled rows plus a metadata dictionary."""

    columns: list[str]
    rows: list[list]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(
                    f"row {i} has {len(row)} cells, expected {width}"
                )

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        buf.write(
            _METADATA_PREFIX
            + json.dumps(self.metadata, sort_keys=True, separators=(",", ":"))
            + "\n"
        )
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_format_cell(v) for v in row])
        return buf.getvalue()

    def to_json_text(self) -> str:
        payload = {
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": [[_maybe_jsonable(v) for v in row] for row in self.rows],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_csv_text(cls, text: str) -> "Dataset":
        lines = text.splitlines()
        metadata: dict = {}
        start = 0
        if lines and lines[0].startswith(_METADATA_PREFIX.rstrip()):
            metadata = json.loads(lines[0].lstrip("#").strip())
            start = 1
        reader = csv.reader(lines[start:])
        table = [row for row in reader if row]
        if not table:
            raise ValueError("csv text contains no header row")
        columns = table[0]
        rows = [[_parse_cell(c) for c in row] for row in table[1:]]
        return cls(columns=columns, rows=rows, metadata=metadata)

    @classmethod
    def from_json_text(cls, text: str) -> "Dataset":
        payload = json.loads(text)
        return cls(
            columns=list(payload["columns"]),
            rows=[list(row) for row in payload["rows"]],
            metadata=dict(payload.get("metadata", {})),
        )

    def write(self, path, fmt: str = "csv") -> None:
        if fmt == "csv":
            text = self.to_csv_text()
        elif fmt == "json":
            text = self.to_json_text()
        else:
            raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'json'")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _maybe_jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value
