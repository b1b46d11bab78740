"""CSV persistence of trial records and cross-trial aggregation.

The CSV schema is normative: seconds carry nine fractional digits (whole
nanoseconds, the clock's resolution) and dims are x-joined, so a written
file parses back to equal records.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .engine import TrialRecord

CSV_HEADER = (
    "test_name",
    "trial",
    "format",
    "dataset_count",
    "dims",
    "create_avg_s",
    "write_avg_s",
    "open_avg_s",
    "read_avg_s",
    "verified",
)

OPERATIONS = ("create", "write", "open", "read")

_AVG_FIELDS = {
    "create": "create_avg_s",
    "write": "write_avg_s",
    "open": "open_avg_s",
    "read": "read_avg_s",
}


class ResultsError(ValueError):
    """Malformed results input: bad CSV, empty or mixed record sets."""


def format_dims(dims) -> str:
    return "x".join(str(d) for d in dims)


def parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split("x"))
    except ValueError as exc:
        raise ResultsError(f"bad dims field {text!r}") from exc
    if not dims or any(d < 1 for d in dims):
        raise ResultsError(f"bad dims field {text!r}")
    return dims


def to_csv(records) -> str:
    """Render records as CSV text, one row per record after the header."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.test_name,
                r.trial_index,
                r.format_name,
                r.dataset_count,
                format_dims(r.dims),
                f"{r.create_avg_s:.9f}",
                f"{r.write_avg_s:.9f}",
                f"{r.open_avg_s:.9f}",
                f"{r.read_avg_s:.9f}",
                "true" if r.verified else "false",
            ]
        )
    return out.getvalue()


def from_csv(text: str) -> list[TrialRecord]:
    """Parse CSV text produced by to_csv; inverse of it."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ResultsError(f"row 1: expected header {','.join(CSV_HEADER)}")
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ResultsError(f"row {lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        try:
            verified_text = row[9].lower()
            if verified_text not in ("true", "false"):
                raise ValueError(f"bad verified flag {row[9]!r}")
            records.append(
                TrialRecord(
                    test_name=row[0],
                    trial_index=int(row[1]),
                    format_name=row[2],
                    dataset_count=int(row[3]),
                    dims=parse_dims(row[4]),
                    create_avg_s=float(row[5]),
                    write_avg_s=float(row[6]),
                    open_avg_s=float(row[7]),
                    read_avg_s=float(row[8]),
                    verified=verified_text == "true",
                )
            )
        except (ValueError, ResultsError) as exc:
            raise ResultsError(f"row {lineno}: {exc}") from exc
    return records


@dataclass(frozen=True)
class SummaryRow:
    format_name: str
    operation: str
    mean_avg_s: float
    trial_count: int


@dataclass(frozen=True)
class SummaryTable:
    """Mean per-dataset seconds per (format, operation) across trials."""

    test_name: str
    rows: tuple[SummaryRow, ...]
    unverified_count: int

    def formats(self) -> tuple[str, ...]:
        seen = []
        for row in self.rows:
            if row.format_name not in seen:
                seen.append(row.format_name)
        return tuple(seen)

    def value(self, format_name: str, operation: str) -> float:
        for row in self.rows:
            if row.format_name == format_name and row.operation == operation:
                return row.mean_avg_s
        raise KeyError((format_name, operation))


def aggregate(records) -> SummaryTable:
    """Mean the per-trial averages per (format, operation).

    Means use exact summation, so the result is independent of record order.
    Unverified records still count toward the means but are tallied in
    ``unverified_count``.
    """
    records = list(records)
    if not records:
        raise ResultsError("cannot aggregate zero records")
    names = {r.test_name for r in records}
    if len(names) > 1:
        raise ResultsError(f"mixed test names: {', '.join(sorted(names))}")

    by_format: dict[str, list[TrialRecord]] = {}
    for r in records:
        by_format.setdefault(r.format_name, []).append(r)

    rows = []
    for format_name in sorted(by_format):
        group = by_format[format_name]
        for operation in OPERATIONS:
            values = [getattr(r, _AVG_FIELDS[operation]) for r in group]
            rows.append(
                SummaryRow(
                    format_name=format_name,
                    operation=operation,
                    mean_avg_s=math.fsum(values) / len(values),
                    trial_count=len(values),
                )
            )
    return SummaryTable(
        test_name=records[0].test_name,
        rows=tuple(rows),
        unverified_count=sum(1 for r in records if not r.verified),
    )
