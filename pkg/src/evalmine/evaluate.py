"""Stratified k-fold cross-validation and pooled classification metrics.

Folds are built per class: each class's row indices are shuffled with a
seeded PCG64 generator and dealt round-robin, the dealing cursor carried
across classes so fold sizes and per-class counts both stay within one
of each other.  Fold confusion matrices are pooled by integer addition
and metrics computed once over the pooled matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .recode import RecodedTable, TARGET_TOKENS
from .reptree import TreeParams, fit, predict_codes

N_CLASSES = len(TARGET_TOKENS)


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: tuple[float, ...]   # per class, (No, Yes) order
    recall: tuple[float, ...]
    f1: tuple[float, ...]
    weighted_f: float


@dataclass(frozen=True)
class EvalReport:
    """Pooled cross-validation result plus the parameters that produced it."""

    analysis: str | None
    folds: int
    seed: int
    tree_params: TreeParams
    n_rows: int
    confusion: tuple[tuple[int, ...], ...]   # [actual][predicted]
    metrics: Metrics

    @property
    def accuracy(self) -> float:
        return self.metrics.accuracy

    @property
    def weighted_f(self) -> float:
        return self.metrics.weighted_f


def stratified_folds(y: np.ndarray, k: int, seed: int) -> list[np.ndarray]:
    """Partition row indices into k folds preserving class proportions."""
    y = np.asarray(y)
    n = y.size
    if not 2 <= k <= n:
        raise ValueError(f"fold count {k} out of range 2..{n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for cls in range(N_CLASSES):
        idx = np.flatnonzero(y == cls)
        idx = idx[rng.permutation(idx.size)]
        for row in idx:
            folds[cursor % k].append(int(row))
            cursor += 1
    return [np.array(sorted(f), dtype=np.int64) for f in folds]


def compute_metrics(confusion: np.ndarray) -> Metrics:
    """Accuracy, per-class precision/recall/F1 and support-weighted F.

    Zero denominators yield 0 so degenerate folds never crash a run.
    """
    cm = np.asarray(confusion, dtype=np.int64)
    total = int(cm.sum())
    if total == 0:
        raise ValueError("empty confusion matrix")
    accuracy = float(np.trace(cm)) / total

    precision, recall, f1 = [], [], []
    supports = cm.sum(axis=1)
    for c in range(cm.shape[0]):
        tp = int(cm[c, c])
        predicted = int(cm[:, c].sum())
        actual = int(supports[c])
        p = tp / predicted if predicted else 0.0
        r = tp / actual if actual else 0.0
        f = 2 * p * r / (p + r) if (p + r) else 0.0
        precision.append(p)
        recall.append(r)
        f1.append(f)
    weighted_f = float(sum(s * f for s, f in zip(supports, f1)) / total)
    return Metrics(
        accuracy=accuracy,
        precision=tuple(precision),
        recall=tuple(recall),
        f1=tuple(f1),
        weighted_f=weighted_f,
    )


def cross_validate(table: RecodedTable, params: TreeParams | None = None,
                   k: int = 10, seed: int = 1,
                   analysis: str | None = None) -> EvalReport:
    """Train on k-1 folds, test on the held-out fold, pool the confusion.

    The learner's internal grow/prune split for fold i is seeded with
    ``params.seed XOR i`` so folds are independent but reproducible.
    """
    params = params or TreeParams()
    folds = stratified_folds(table.y, k, seed)
    cm = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    mask = np.ones(table.n_rows, dtype=bool)
    for i, fold in enumerate(folds):
        mask[:] = True
        mask[fold] = False
        train = np.flatnonzero(mask)
        tree = fit(table, replace(params, seed=params.seed ^ i), rows=train)
        predicted = predict_codes(tree, table.codes[fold])
        actual = table.y[fold]
        np.add.at(cm, (actual, predicted), 1)
    metrics = compute_metrics(cm)
    return EvalReport(
        analysis=analysis,
        folds=k,
        seed=seed,
        tree_params=params,
        n_rows=table.n_rows,
        confusion=tuple(tuple(int(v) for v in row) for row in cm),
        metrics=metrics,
    )
