"""Acceptance suite: one test per criterion, each reported PASS/FAIL/SKIP.

Criteria 1-6 run against the published evaluation dataset and skip when
it is not present locally (fetch instructions in data/README.md, or set
$EVALMINE_DATASET).  Expected values marked as derived are recomputed
here from the CSV by independent oracles (plain csv-module counting)
and, when tests/fixtures/uci_expected.json exists, also compared against
the frozen pins.  Criterion 7's property suites always run.

Timed sections exclude one-off JIT compilation: kernels are warmed up
before the clock starts, and compiled code is disk-cached anyway.
"""

import csv
import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from time import perf_counter

import numpy as np
import pytest

from evalmine import (
    Item,
    TreeParams,
    brute_force_itemsets,
    cross_validate,
    entropy,
    frequent_itemsets,
    generate_rules,
    grow_tree,
    info_gain,
    itemize,
    load_csv,
    predict_codes,
    project_analysis,
    recode_table,
    rep_prune,
    stratified_folds,
    validate_schema,
)
from evalmine._backend import warmup
from evalmine.cli import run

from conftest import load_pins, require_dataset
from synth import write_csv
from test_reptree import _random_table

MIN_SUPPORT = 0.05
MIN_CONFIDENCE = 0.9

REF_ACCURACY_COURSE = 0.84244        # course-features reference figures
REF_WEIGHTED_F_COURSE = 0.774
REF_ACCURACY_INSTRUCTOR = 0.842612   # instructor-features reference figures
REF_WEIGHTED_F_INSTRUCTOR = 0.772
ACCURACY_TOL = 0.02                  # +/- 2 percentage points
WEIGHTED_F_TOL = 0.03


# --------------------------------------------------------------------------
# independent oracles: plain csv counting, no library code

def oracle_counts(path: Path) -> dict:
    """Tally the raw CSV directly: target split and the three rule counts."""
    n = yes = 0
    instr_a = instr_a_no = 0          # instr raw 1  -> letter A
    class_e = class_e_no = 0          # class raw 5  -> letter E
    both_ce = both_ce_no = 0          # instr raw 3 and class raw 5
    repeat_values: dict[int, int] = {}
    instr_values: set[int] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        cols = {name.strip().casefold(): name for name in reader.fieldnames}
        for row in reader:
            n += 1
            instr = int(row[cols["instr"]])
            course = int(row[cols["class"]])
            repeat = int(row[cols["nb.repeat"]])
            instr_values.add(instr)
            repeat_values[repeat] = repeat_values.get(repeat, 0) + 1
            is_yes = repeat >= 2
            yes += is_yes
            if instr == 1:
                instr_a += 1
                instr_a_no += not is_yes
            if course == 5:
                class_e += 1
                class_e_no += not is_yes
                if instr == 3:
                    both_ce += 1
                    both_ce_no += not is_yes
    return {
        "rows": n,
        "no": n - yes,
        "yes": yes,
        "repeat_values": repeat_values,
        "instr_values": instr_values,
        "class_e": class_e,
        "class_e_no": class_e_no,
        "instr_c_class_e": both_ce,
        "instr_c_class_e_no": both_ce_no,
        "instr_a": instr_a,
        "instr_a_no": instr_a_no,
    }


@pytest.fixture(scope="module")
def oracle(uci_raw):
    return oracle_counts(require_dataset())


@pytest.fixture(scope="module")
def cv_course_features(uci_recoded):
    warmup()
    table = project_analysis(uci_recoded, "course-features")
    t0 = perf_counter()
    report = cross_validate(table, TreeParams(), k=10, seed=1,
                            analysis="course-features")
    return report, perf_counter() - t0


@pytest.fixture(scope="module")
def cv_instructor_features(uci_recoded):
    warmup()
    table = project_analysis(uci_recoded, "instructor-features")
    report = cross_validate(table, TreeParams(), k=10, seed=1,
                            analysis="instructor-features")
    return report


# --------------------------------------------------------------------------
# criterion 1: dataset round-trip

@pytest.mark.acceptance("1")
def test_criterion_1_dataset_roundtrip(oracle):
    path = require_dataset()
    t0 = perf_counter()
    table = load_csv(path)
    summary = validate_schema(table)
    recoded = recode_table(table)
    elapsed = perf_counter() - t0

    assert table.n_rows == 5820
    assert table.rows.shape[1] == 33
    assert summary.all_in_range
    assert set(np.unique(table.column("instr"))) <= {1, 2, 3}

    no = int((recoded.y == 0).sum())
    yes = int((recoded.y == 1).sum())
    assert oracle["rows"] == 5820
    assert (no, yes) == (oracle["no"], oracle["yes"])

    observed_repeats = dict(zip(
        *map(list, np.unique(table.column("nb.repeat"), return_counts=True))
    ))
    assert {int(k): int(v) for k, v in observed_repeats.items()} == oracle["repeat_values"]

    pins = load_pins()
    if pins:
        assert no == pins["target"]["no"]
        assert yes == pins["target"]["yes"]

    assert elapsed < 2.0, f"round-trip took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# criterion 2: rule recovery

RULE_1 = frozenset({Item("class", "E")})
RULE_2 = frozenset({Item("class", "E"), Item("instr", "C")})
RULE_3 = frozenset({Item("instr", "A")})


@pytest.mark.acceptance("2")
def test_criterion_2_rule_recovery(uci_recoded, oracle):
    warmup()
    table = project_analysis(uci_recoded, "course-instructor")
    transactions = itemize(table)
    assert len(transactions) == 5820
    assert all(len(t) == 3 for t in transactions)

    t0 = perf_counter()
    frequent = frequent_itemsets(transactions, MIN_SUPPORT)
    rules = generate_rules(frequent, MIN_CONFIDENCE, consequent_filter="nb.repeat")
    elapsed = perf_counter() - t0

    no_item = Item("nb.repeat", "No")
    no_rules = [r for r in rules if r.consequent == (no_item,)]
    assert [frozenset(r.antecedent) for r in no_rules] == [RULE_1, RULE_2, RULE_3]

    by_ante = {frozenset(r.antecedent): r for r in no_rules}
    expected = {
        RULE_1: (oracle["class_e"], oracle["class_e_no"]),
        RULE_2: (oracle["instr_c_class_e"], oracle["instr_c_class_e_no"]),
        RULE_3: (oracle["instr_a"], oracle["instr_a_no"]),
    }
    for ante, (count_ante, count_rule) in expected.items():
        rule = by_ante[ante]
        assert rule.count_antecedent == count_ante
        assert rule.count_rule == count_rule
        assert rule.total == oracle["rows"]
        assert Fraction(count_rule, count_ante) >= Fraction(9, 10)

    pins = load_pins()
    if pins:
        for pin in pins["rules"]:
            rule = by_ante[frozenset(Item(*i) for i in pin["antecedent"])]
            assert round(rule.support, 4) == pin["support"]
            assert round(rule.confidence, 4) == pin["confidence"]

    assert elapsed < 5.0, f"mining took {elapsed:.2f}s"


# --------------------------------------------------------------------------
# criteria 3 and 4: reference metric reproduction

@pytest.mark.acceptance("3")
def test_criterion_3_course_features_metrics(cv_course_features):
    report, elapsed = cv_course_features
    assert report.accuracy == pytest.approx(REF_ACCURACY_COURSE, abs=ACCURACY_TOL)
    assert report.weighted_f == pytest.approx(REF_WEIGHTED_F_COURSE, abs=WEIGHTED_F_TOL)
    assert elapsed < 30.0, f"cross-validation took {elapsed:.2f}s"


@pytest.mark.acceptance("4")
def test_criterion_4_instructor_features_metrics(cv_instructor_features):
    report = cv_instructor_features
    assert report.accuracy == pytest.approx(REF_ACCURACY_INSTRUCTOR, abs=ACCURACY_TOL)
    assert report.weighted_f == pytest.approx(REF_WEIGHTED_F_INSTRUCTOR, abs=WEIGHTED_F_TOL)


# --------------------------------------------------------------------------
# criterion 5: root-split identity

@pytest.mark.acceptance("5")
def test_criterion_5_root_attributes(uci_recoded):
    from evalmine import Split, fit, render_tree

    course = project_analysis(uci_recoded, "course-features")
    gains = {a: info_gain(course, a) for a in course.columns if a != "nb.repeat"}
    assert max(gains, key=gains.get) == "attendance"
    assert grow_tree(course, TreeParams()).attribute == "attendance"
    fitted = fit(course, TreeParams())
    assert isinstance(fitted, Split) and fitted.attribute == "attendance"
    assert render_tree(fitted).startswith("attendance = zero")

    instructor = project_analysis(uci_recoded, "instructor-features")
    gains = {a: info_gain(instructor, a) for a in instructor.columns if a != "nb.repeat"}
    assert max(gains, key=gains.get) == "Q14"
    assert grow_tree(instructor, TreeParams()).attribute == "Q14"
    fitted = fit(instructor, TreeParams())
    assert isinstance(fitted, Split) and fitted.attribute == "Q14"


# --------------------------------------------------------------------------
# criterion 6: baseline sanity

@pytest.mark.acceptance("6")
def test_criterion_6_baseline_sanity(oracle, cv_course_features,
                                     cv_instructor_features):
    baseline = oracle["no"] / oracle["rows"]
    report2, _ = cv_course_features
    report3 = cv_instructor_features
    assert report2.accuracy >= baseline - 0.005
    assert report3.accuracy >= baseline - 0.005


# --------------------------------------------------------------------------
# criterion 7: property suites (dataset-free)

def _random_baskets(rng: random.Random):
    n_items = rng.randint(1, 20)
    items = [f"i{k:02d}" for k in range(n_items)]
    baskets = []
    for _ in range(rng.randint(1, 64)):
        size = rng.randint(0, min(n_items, 10))
        baskets.append(tuple(rng.sample(items, size)))
    return baskets


@pytest.mark.acceptance("7a")
def test_criterion_7a_apriori_equals_oracle():
    rng = random.Random(70_001)
    for trial in range(200):
        baskets = _random_baskets(rng)
        min_support = rng.choice([0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0])
        fast = frequent_itemsets(baskets, min_support)
        slow = brute_force_itemsets(baskets, min_support)
        assert fast == slow, f"trial {trial}: level-wise and oracle disagree"


@pytest.mark.acceptance("7b")
def test_criterion_7b_anti_monotonicity():
    rng = random.Random(70_002)
    checked = 0
    for _ in range(60):
        baskets = _random_baskets(rng)
        found = frequent_itemsets(baskets, rng.choice([0.1, 0.2, 0.4]))
        support = {s.items: s.count for s in found}
        for s in found:
            for k in range(1, len(s.items)):
                for sub in combinations(s.items, k):
                    assert sub in support
                    assert support[sub] >= s.count
                    checked += 1
    assert checked > 100  # the runs actually produced multi-item sets


@pytest.mark.acceptance("7c")
def test_criterion_7c_pruning_never_hurts_prune_error():
    rng = np.random.Generator(np.random.PCG64(70_003))
    for trial in range(200):
        table = _random_table(rng, n_rows=int(rng.integers(8, 120)))
        idx = rng.permutation(table.n_rows)
        half = table.n_rows // 2
        grow_rows, prune_rows = idx[:half], idx[half:]
        if grow_rows.size == 0 or prune_rows.size == 0:
            continue
        tree = grow_tree(table, TreeParams(min_leaf=1), rows=grow_rows)
        pruned = rep_prune(tree, table, prune_rows)
        before = int((predict_codes(tree, table.codes[prune_rows])
                      != table.y[prune_rows]).sum())
        after = int((predict_codes(pruned, table.codes[prune_rows])
                     != table.y[prune_rows]).sum())
        assert after <= before, f"trial {trial}: pruning increased errors"


@pytest.mark.acceptance("7d")
def test_criterion_7d_entropy_and_gain_bounds():
    rng = np.random.Generator(np.random.PCG64(70_004))
    for _ in range(200):
        counts = rng.integers(0, 200, size=2)
        h = entropy(counts)
        assert 0.0 <= h <= 1.0
        table = _random_table(rng, n_rows=int(rng.integers(2, 60)))
        parent = entropy(np.bincount(table.y, minlength=2))
        for attr in table.columns[:-1]:
            g = info_gain(table, attr)
            assert -1e-12 <= g <= parent + 1e-12


@pytest.mark.acceptance("7e")
def test_criterion_7e_stratified_fold_partition():
    rng = np.random.Generator(np.random.PCG64(70_005))
    for _ in range(200):
        n = int(rng.integers(2, 300))
        y = rng.integers(0, 2, n)
        k = int(rng.integers(2, n + 1))
        folds = stratified_folds(y, k, seed=int(rng.integers(0, 10_000)))
        merged = np.sort(np.concatenate(folds))
        assert np.array_equal(merged, np.arange(n))
        sizes = [f.size for f in folds]
        assert max(sizes) - min(sizes) <= 1
        for cls in (0, 1):
            per_fold = [int((y[f] == cls).sum()) for f in folds]
            assert max(per_fold) - min(per_fold) <= 1


@pytest.mark.acceptance("7f")
def test_criterion_7f_reports_byte_identical(tmp_path):
    path = write_csv(tmp_path / "synthetic.csv", n=250, seed=12)
    for args in (
        ["eval", "--input", str(path), "--analysis", "course-features",
         "--folds", "5", "--seed", "4", "--format", "structured"],
        ["rules", "--input", str(path), "--min-confidence", "0.5",
         "--format", "structured"],
        ["tree", "--input", str(path), "--analysis", "instructor-features",
         "--seed", "2", "--format", "structured"],
    ):
        first = tmp_path / "first.out"
        second = tmp_path / "second.out"
        assert run(args + ["--out", str(first)]) == 0
        assert run(args + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes(), args[0]
