"""Loading and validation of the raw course-evaluation table.

The expected file is the published student evaluation CSV: a header row
naming 33 columns (``instr,class,nb.repeat,attendance,difficulty,Q1..Q28``)
followed by comma-separated integer records.  Header names are matched
case-insensitively and the file's column order may differ from the
canonical one; cells are re-ordered, rows keep file order.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class DatasetError(Exception):
    """Raised when a file does not conform to the expected table schema."""


@dataclass(frozen=True)
class ColumnSpec:
    """Name, role and inclusive integer range of one column."""

    name: str
    role: str
    lo: int
    hi: int | None  # None = unbounded above (repeat count)

    def in_range(self, v: int) -> bool:
        if v < self.lo:
            return False
        return self.hi is None or v <= self.hi

    def range_text(self) -> str:
        return f"{self.lo}.." + ("" if self.hi is None else str(self.hi))


def _build_schema() -> tuple[ColumnSpec, ...]:
    specs = [
        ColumnSpec("instr", "instructor-id", 1, 3),
        ColumnSpec("class", "course-code", 1, 13),
        ColumnSpec("nb.repeat", "repeat-count", 0, None),
        ColumnSpec("attendance", "attendance", 0, 4),
        ColumnSpec("difficulty", "difficulty", 1, 5),
    ]
    for q in range(1, 29):
        role = "course-question" if q <= 12 else "instructor-question"
        specs.append(ColumnSpec(f"Q{q}", role, 1, 5))
    return tuple(specs)


SCHEMA: tuple[ColumnSpec, ...] = _build_schema()
COLUMN_NAMES: tuple[str, ...] = tuple(spec.name for spec in SCHEMA)
N_COLUMNS = len(SCHEMA)


@dataclass(frozen=True)
class RawTable:
    """Validated integer table: ordered schema plus an (n, 33) row matrix."""

    schema: tuple[ColumnSpec, ...]
    rows: np.ndarray

    def __post_init__(self):
        self.rows.setflags(write=False)

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        names = [spec.name for spec in self.schema]
        try:
            return self.rows[:, names.index(name)]
        except ValueError:
            raise KeyError(name) from None


@dataclass(frozen=True)
class ColumnSummary:
    name: str
    observed_min: int
    observed_max: int
    distinct: int
    in_range: bool


@dataclass(frozen=True)
class ValidationSummary:
    n_rows: int
    columns: tuple[ColumnSummary, ...]

    @property
    def all_in_range(self) -> bool:
        return all(c.in_range for c in self.columns)


def _normalize(name: str) -> str:
    return name.strip().casefold()


def load_csv(path: str | Path) -> RawTable:
    """Load and validate the evaluation CSV.

    Raises DatasetError on header mismatch, non-integer cells or cells
    outside their column's allowed range; FileNotFoundError when the
    file is missing.  Rows come back in file order, columns re-ordered
    to the canonical schema.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty file, expected a header row") from None
        order = _match_header(path, header)

        records: list[list[int]] = []
        for line_no, cells in enumerate(reader, start=1):
            if not cells or (len(cells) == 1 and not cells[0].strip()):
                continue  # trailing blank line
            if len(cells) != N_COLUMNS:
                raise DatasetError(
                    f"{path}: row {line_no} has {len(cells)} cells, expected {N_COLUMNS}"
                )
            record = [0] * N_COLUMNS
            for file_pos, cell in enumerate(cells):
                spec = SCHEMA[order[file_pos]]
                try:
                    value = int(cell.strip())
                except ValueError:
                    raise DatasetError(
                        f"{path}: row {line_no}, column {spec.name}: "
                        f"non-integer cell {cell.strip()!r}"
                    ) from None
                if not spec.in_range(value):
                    raise DatasetError(
                        f"{path}: row {line_no}, column {spec.name}: value {value} "
                        f"outside allowed range {spec.range_text()}"
                    )
                record[order[file_pos]] = value
            records.append(record)

    rows = np.array(records, dtype=np.int64).reshape(len(records), N_COLUMNS)
    return RawTable(schema=SCHEMA, rows=rows)


def _match_header(path: Path, header: list[str]) -> list[int]:
    """Map each file column position to its canonical schema index."""
    if len(header) != N_COLUMNS:
        raise DatasetError(
            f"{path}: header names {len(header)} columns, expected {N_COLUMNS}"
        )
    canonical = {_normalize(name): i for i, name in enumerate(COLUMN_NAMES)}
    order: list[int] = []
    seen: set[int] = set()
    for name in header:
        idx = canonical.get(_normalize(name))
        if idx is None:
            raise DatasetError(f"{path}: unknown column name {name.strip()!r} in header")
        if idx in seen:
            raise DatasetError(f"{path}: duplicate column name {name.strip()!r} in header")
        seen.add(idx)
        order.append(idx)
    return order


def validate_schema(table: RawTable) -> ValidationSummary:
    """Report observed min/max/distinct counts per column and range flags.

    Violations are flagged, never raised: the summary is a report, and
    tables built in memory may hold out-of-range values on purpose.
    """
    summaries = []
    for i, spec in enumerate(table.schema):
        col = table.rows[:, i]
        if col.size == 0:
            summaries.append(ColumnSummary(spec.name, 0, 0, 0, True))
            continue
        lo = int(col.min())
        hi = int(col.max())
        distinct = int(np.unique(col).size)
        ok = spec.in_range(lo) and spec.in_range(hi)
        summaries.append(ColumnSummary(spec.name, lo, hi, distinct, ok))
    return ValidationSummary(n_rows=table.n_rows, columns=tuple(summaries))


def file_sha256(path: str | Path) -> str:
    """Hex digest of the file bytes, echoed in reports as a provenance mark."""
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
