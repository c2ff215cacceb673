#!/usr/bin/env python3
"""Generate a rehearsal CSV that mimics the published table's structure.

This is NOT the real evaluation data.  It is a synthetic 5820x33 table
whose class/instructor composition, target split and planted signals
(an attendance=0 pocket mirrored in Q14) are engineered so the full
acceptance suite has a dataset-shaped input to run against.  Use it to
rehearse the pipeline; results only mean something against the genuine
file (see data/README.md).

Construction is exact-count: per (instructor, course) cell the No/Yes
tallies are fixed integers chosen so that precisely three class
association rules clear support 0.05 and confidence 0.9:

    class=E          ==> nb.repeat=No   (438/470)
    instr=C class=E  ==> nb.repeat=No   (410/440)
    instr=A          ==> nb.repeat=No   (1770/1940)

A 100-row pocket (80 Yes / 20 No) gets attendance=0 and Q14=1 so both
tree analyses find their expected root attribute; every other feature
column is seeded uniform noise.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

HEADER = ["instr", "class", "nb.repeat", "attendance", "difficulty"] + [
    f"Q{i}" for i in range(1, 29)
]

POCKET_YES = 80
POCKET_NO = 20


def spread(total: int, parts: int) -> list[int]:
    """Split total into near-equal integer parts, remainder to the front."""
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def cell_plan() -> list[tuple[int, int, int, int]]:
    """(instr, class, n_no, n_yes) with exact rule-bearing counts."""
    plan = [
        (3, 5, 410, 30),   # instructor C teaching course E
        (1, 5, 19, 1),
        (2, 5, 9, 1),
    ]
    other_classes = [c for c in range(1, 14) if c != 5]
    # instructor A: 1940 rows total, 1770 No -> confidence 0.9124
    rows_a = spread(1920, 12)
    no_a = spread(1751, 12)
    # instructor B: 1940 rows, 1640 No -> confidence 0.845 (below threshold)
    rows_b = spread(1930, 12)
    no_b = spread(1631, 12)
    # instructor C outside E: low No share keeps instr=C unconfident
    rows_c = spread(1500, 12)
    no_c = spread(1083, 12)
    for i, cls in enumerate(other_classes):
        plan.append((1, cls, no_a[i], rows_a[i] - no_a[i]))
        plan.append((2, cls, no_b[i], rows_b[i] - no_b[i]))
        plan.append((3, cls, no_c[i], rows_c[i] - no_c[i]))
    return plan


def build_rows(seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))

    skeleton = []  # (instr, class, is_yes)
    for instr, cls, n_no, n_yes in cell_plan():
        skeleton += [(instr, cls, 0)] * n_no + [(instr, cls, 1)] * n_yes
    skeleton = np.array(skeleton, dtype=np.int64)
    skeleton = skeleton[rng.permutation(len(skeleton))]
    n = len(skeleton)

    is_yes = skeleton[:, 2] == 1
    in_e = skeleton[:, 1] == 5
    pocket = np.zeros(n, dtype=bool)
    pocket[np.flatnonzero(is_yes & ~in_e)[:POCKET_YES]] = True
    pocket[np.flatnonzero(~is_yes & ~in_e)[:POCKET_NO]] = True

    repeat = np.where(is_yes, np.where(rng.random(n) < 0.5, 2, 3), 1)
    repeat[~is_yes & (rng.random(n) < 0.02)] = 0  # a few first-timers coded 0

    attendance = rng.integers(1, 5, n)
    attendance[pocket] = 0
    q14 = rng.integers(3, 6, n)
    q14[pocket] = 1

    columns = [skeleton[:, 0], skeleton[:, 1], repeat, attendance,
               rng.integers(1, 6, n)]
    for q in range(1, 29):
        columns.append(q14 if q == 14 else rng.integers(1, 6, n))
    return np.column_stack(columns)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="destination CSV path")
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()

    rows = build_rows(args.seed)
    lines = [",".join(HEADER)]
    lines += [",".join(str(int(v)) for v in row) for row in rows]
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    yes = int((rows[:, 2] >= 2).sum())
    print(f"wrote {args.out}: {rows.shape[0]} rows, "
          f"{rows.shape[0] - yes} No / {yes} Yes")


if __name__ == "__main__":
    main()
