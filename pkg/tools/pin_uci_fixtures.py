#!/usr/bin/env python3
"""Compute and freeze the dataset-derived expectations used by the tests.

Everything here is counted directly off the CSV with the csv module --
deliberately none of the package's loading/mining code -- so the frozen
values are an independent cross-check, not an echo.  Output goes to
tests/fixtures/uci_expected.json; the acceptance suite compares library
results against these pins whenever the file exists.

    python3 tools/pin_uci_fixtures.py --dataset data/turkiye-student-evaluation_generic.csv
"""

from __future__ import annotations

import argparse
import csv
import json
from pathlib import Path

import numpy as np

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "uci_expected.json"


def read_columns(path: Path) -> dict[str, list[int]]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        names = {n.strip().casefold(): n for n in reader.fieldnames}
        cols: dict[str, list[int]] = {"instr": [], "class": [], "nb.repeat": []}
        for row in reader:
            for key in cols:
                cols[key].append(int(row[names[key]]))
    return cols


def rule_fixture(antecedent: list[list[str]], count_ante: int, count_rule: int,
                 count_no: int, total: int) -> dict:
    return {
        "antecedent": antecedent,
        "count_antecedent": count_ante,
        "count_rule": count_rule,
        "support": round(count_rule / total, 4),
        "confidence": round(count_rule / count_ante, 4),
        "lift": round((count_rule * total) / (count_ante * count_no), 4),
    }


def fold_class_table(labels: list[int], k: int, seed: int) -> list[list[int]]:
    """Per-fold (No, Yes) counts under the seeded per-class round-robin deal.

    Mirrors the documented procedure step by step: one PCG64(seed)
    generator, classes in (No, Yes) order, each class's indices shuffled
    then dealt to folds cyclically with the cursor carried over.
    """
    y = np.array(labels)
    rng = np.random.Generator(np.random.PCG64(seed))
    table = [[0, 0] for _ in range(k)]
    cursor = 0
    for cls in (0, 1):
        idx = np.flatnonzero(y == cls)
        idx = idx[rng.permutation(idx.size)]
        for _ in idx:
            table[cursor % k][cls] += 1
            cursor += 1
    return table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dataset", required=True)
    parser.add_argument("--out", default=str(DEFAULT_OUT))
    args = parser.parse_args()

    cols = read_columns(Path(args.dataset))
    total = len(cols["instr"])
    labels = [1 if v >= 2 else 0 for v in cols["nb.repeat"]]
    yes = sum(labels)
    no = total - yes

    repeat_counts: dict[str, int] = {}
    for v in cols["nb.repeat"]:
        repeat_counts[str(v)] = repeat_counts.get(str(v), 0) + 1

    # the three reference rules, counted straight off the raw codes:
    # course E is code 5, instructors A and C are codes 1 and 3
    class_e = [i for i in range(total) if cols["class"][i] == 5]
    ce = [i for i in class_e if cols["instr"][i] == 3]
    instr_a = [i for i in range(total) if cols["instr"][i] == 1]

    def no_count(idx):
        return sum(1 for i in idx if labels[i] == 0)

    fixtures = {
        "rows": total,
        "target": {"no": no, "yes": yes},
        "repeat_value_counts": repeat_counts,
        "rules": [
            rule_fixture([["class", "E"]], len(class_e), no_count(class_e), no, total),
            rule_fixture([["class", "E"], ["instr", "C"]], len(ce), no_count(ce), no, total),
            rule_fixture([["instr", "A"]], len(instr_a), no_count(instr_a), no, total),
        ],
        "fold_class_counts_k10_seed1": fold_class_table(labels, k=10, seed=1),
    }

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(fixtures, indent=2) + "\n", encoding="utf-8")
    print(f"pinned fixtures for {total} rows ({no} No / {yes} Yes) -> {out}")


if __name__ == "__main__":
    main()
