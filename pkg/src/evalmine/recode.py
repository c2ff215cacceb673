"""Value grouping that turns the raw integer table into nominal data.

Three rules: the repeat count becomes the binary target (Yes when the
course was taken at least twice), instructor/course identifiers become
letters A..M, and five-point responses collapse to Low/Middle/High with
a separate ``zero`` token for attendance level 0.  Rows keep their
order; every recoded column carries a closed token vocabulary, ordered
so that token code equals render/branch order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import COLUMN_NAMES, DatasetError, RawTable

TARGET_COLUMN = "nb.repeat"
TARGET_TOKENS: tuple[str, ...] = ("No", "Yes")
LETTER_TOKENS: tuple[str, ...] = tuple("ABCDEFGHIJKLM")
SCALE_TOKENS: tuple[str, ...] = ("Low", "Middle", "High")
ATTENDANCE_TOKENS: tuple[str, ...] = ("zero",) + SCALE_TOKENS

ANALYSES: tuple[str, ...] = (
    "course-instructor",
    "course-features",
    "instructor-features",
)

# column subsets of the three evaluations; target is appended last
_ANALYSIS_COLUMNS: dict[str, tuple[str, ...]] = {
    "course-instructor": ("instr", "class"),
    "course-features": ("attendance", "difficulty") + tuple(f"Q{i}" for i in range(1, 13)),
    "instructor-features": tuple(f"Q{i}" for i in range(13, 29)),
}


def recode_repeat_label(n: int) -> str:
    """Binary target: Yes when the course was taken more than once."""
    if n < 0:
        raise ValueError(f"repeat count must be >= 0, got {n}")
    return "Yes" if n >= 2 else "No"


def map_code_to_letter(code: int, cardinality: int) -> str:
    """Map identifier 1..cardinality to A..M (cardinality 3 or 13)."""
    if cardinality not in (3, 13):
        raise ValueError(f"cardinality must be 3 or 13, got {cardinality}")
    if not 1 <= code <= cardinality:
        raise ValueError(f"code {code} out of range 1..{cardinality}")
    return LETTER_TOKENS[code - 1]


def recode_scale(v: int, zero_allowed: bool = False) -> str:
    """Bin a five-point response: 1,2 -> Low, 3 -> Middle, 4,5 -> High.

    With zero_allowed (attendance) the value 0 maps to the ``zero`` token.
    """
    if v == 0:
        if not zero_allowed:
            raise ValueError("value 0 only allowed on the attendance column")
        return "zero"
    if not 1 <= v <= 5:
        raise ValueError(f"scale value {v} out of range")
    if v <= 2:
        return "Low"
    if v == 3:
        return "Middle"
    return "High"


@dataclass(frozen=True)
class RecodedTable:
    """All-nominal table: per-column token vocabularies plus a code matrix.

    ``codes[r, c]`` indexes ``vocab[c]``; token order inside each
    vocabulary is the branch/render order (zero < Low < Middle < High,
    A..M, No < Yes).
    """

    columns: tuple[str, ...]
    vocab: tuple[tuple[str, ...], ...]
    codes: np.ndarray
    target: str = TARGET_COLUMN

    def __post_init__(self):
        self.codes.setflags(write=False)

    @property
    def n_rows(self) -> int:
        return self.codes.shape[0]

    @property
    def n_columns(self) -> int:
        return self.codes.shape[1]

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise KeyError(name) from None

    @property
    def target_index(self) -> int:
        return self.column_index(self.target)

    @property
    def y(self) -> np.ndarray:
        """Target codes (0 = No, 1 = Yes)."""
        return self.codes[:, self.target_index]

    def token(self, col: int, code: int) -> str:
        return self.vocab[col][code]

    def row_tokens(self, row: int) -> tuple[str, ...]:
        return tuple(self.vocab[c][self.codes[row, c]] for c in range(self.n_columns))


# raw value -> token code lookups, indexed by raw value
_SCALE_LUT = np.array([255, 0, 0, 1, 2, 2], dtype=np.uint8)       # 1..5
_ATTENDANCE_LUT = np.array([0, 1, 1, 2, 3, 3], dtype=np.uint8)    # 0..5


def _check_domain(col: np.ndarray, lo: int, hi: int, name: str) -> None:
    bad = (col < lo) | (col > hi)
    if bad.any():
        r = int(np.argmax(bad))
        raise DatasetError(
            f"row {r + 1}, column {name}: value {int(col[r])} not recodable "
            f"(expected {lo}..{hi})"
        )


def recode_table(raw: RawTable) -> RecodedTable:
    """Apply all grouping rules to a validated table, column by column."""
    n = raw.n_rows
    codes = np.empty((n, len(COLUMN_NAMES)), dtype=np.uint8)
    vocab: list[tuple[str, ...]] = []
    for i, spec in enumerate(raw.schema):
        col = raw.rows[:, i]
        if spec.role == "instructor-id":
            _check_domain(col, 1, 3, spec.name)
            vocab.append(LETTER_TOKENS[:3])
            codes[:, i] = (col - 1).astype(np.uint8)
        elif spec.role == "course-code":
            _check_domain(col, 1, 13, spec.name)
            vocab.append(LETTER_TOKENS)
            codes[:, i] = (col - 1).astype(np.uint8)
        elif spec.role == "repeat-count":
            if (col < 0).any():
                r = int(np.argmax(col < 0))
                raise DatasetError(
                    f"row {r + 1}, column {spec.name}: negative repeat count"
                )
            vocab.append(TARGET_TOKENS)
            codes[:, i] = (col >= 2).astype(np.uint8)
        elif spec.role == "attendance":
            _check_domain(col, 0, 5, spec.name)
            vocab.append(ATTENDANCE_TOKENS)
            codes[:, i] = _ATTENDANCE_LUT[col]
        else:  # difficulty and Q1..Q28
            _check_domain(col, 1, 5, spec.name)
            vocab.append(SCALE_TOKENS)
            codes[:, i] = _SCALE_LUT[col]
    return RecodedTable(columns=COLUMN_NAMES, vocab=tuple(vocab), codes=codes)


def project_analysis(table: RecodedTable, which: str) -> RecodedTable:
    """Select the column subset of one of the three evaluations.

    The target column is always kept, appended after the features.
    """
    if which not in _ANALYSIS_COLUMNS:
        raise ValueError(f"unknown analysis {which!r}, expected one of {ANALYSES}")
    names = _ANALYSIS_COLUMNS[which] + (table.target,)
    indices = [table.column_index(name) for name in names]
    return RecodedTable(
        columns=names,
        vocab=tuple(table.vocab[i] for i in indices),
        codes=np.ascontiguousarray(table.codes[:, indices]),
        target=table.target,
    )
