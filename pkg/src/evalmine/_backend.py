"""Hot counting kernels with a numba fast path and a pure-numpy fallback.

The two loops that dominate runtime are itemset support counting (one
subset test per candidate per transaction) and per-split class counting
during tree induction.  Both exist twice: an ``@njit`` version and a
vectorized numpy version.  ``EVALMINE_BACKEND`` picks one:

    auto   use numba when importable, else numpy (default)
    numba  require numba, fail loudly if missing
    numpy  force the pure-numpy path

Both paths count integers only, so results are bit-identical.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_VAR = "EVALMINE_BACKEND"
_CHOICES = ("auto", "numba", "numpy")


def _select_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in _CHOICES:
        raise ValueError(
            f"{_ENV_VAR} must be one of {_CHOICES}, got {choice!r}"
        )
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        return "numpy"
    return "numba"


BACKEND = _select_backend()


def count_candidates_numpy(presence: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Count transactions containing every item of each candidate.

    presence: (n_transactions, n_items) bool matrix.
    candidates: (n_candidates, k) item-index matrix.
    Returns int64 counts, one per candidate.
    """
    if candidates.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    # (n, c, k) broadcast stays small: candidate lists per level are short
    hits = presence[:, candidates].all(axis=2)
    return hits.sum(axis=0, dtype=np.int64)


def value_class_counts_numpy(codes: np.ndarray, y: np.ndarray,
                             max_values: int, n_classes: int) -> np.ndarray:
    """Per-attribute (value, class) contingency counts.

    codes: (n_rows, n_attrs) small-int value codes.
    y: (n_rows,) class codes.
    Returns int64 array of shape (n_attrs, max_values, n_classes).
    """
    n_attrs = codes.shape[1]
    cell = max_values * n_classes
    flat = (np.arange(n_attrs, dtype=np.int64) * cell)[None, :]
    flat = flat + codes.astype(np.int64) * n_classes + y.astype(np.int64)[:, None]
    counts = np.bincount(flat.ravel(), minlength=n_attrs * cell)
    return counts.reshape(n_attrs, max_values, n_classes)


if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def count_candidates_numba(presence, candidates):  # pragma: no cover - jitted
        n = presence.shape[0]
        c = candidates.shape[0]
        k = candidates.shape[1]
        out = np.zeros(c, dtype=np.int64)
        for ci in range(c):
            total = 0
            for r in range(n):
                ok = True
                for j in range(k):
                    if not presence[r, candidates[ci, j]]:
                        ok = False
                        break
                if ok:
                    total += 1
            out[ci] = total
        return out

    @njit(cache=True)
    def value_class_counts_numba(codes, y, max_values, n_classes):  # pragma: no cover - jitted
        n = codes.shape[0]
        n_attrs = codes.shape[1]
        out = np.zeros((n_attrs, max_values, n_classes), dtype=np.int64)
        for r in range(n):
            label = y[r]
            for a in range(n_attrs):
                out[a, codes[r, a], label] += 1
        return out

    def count_candidates(presence: np.ndarray, candidates: np.ndarray) -> np.ndarray:
        presence = np.ascontiguousarray(presence, dtype=np.bool_)
        candidates = np.ascontiguousarray(candidates, dtype=np.int64)
        return count_candidates_numba(presence, candidates)

    def value_class_counts(codes: np.ndarray, y: np.ndarray,
                           max_values: int, n_classes: int) -> np.ndarray:
        codes = np.ascontiguousarray(codes, dtype=np.uint8)
        y = np.ascontiguousarray(y, dtype=np.uint8)
        return value_class_counts_numba(codes, y, max_values, n_classes)

    def warmup() -> None:
        """Trigger JIT compilation so timed runs measure the algorithm only."""
        count_candidates(np.ones((2, 2), dtype=np.bool_),
                         np.zeros((1, 1), dtype=np.int64))
        value_class_counts(np.zeros((2, 1), dtype=np.uint8),
                           np.zeros(2, dtype=np.uint8), 1, 2)

else:
    count_candidates = count_candidates_numpy
    value_class_counts = value_class_counts_numpy

    def warmup() -> None:
        pass
