"""Decision-tree learner: information-gain growth, reduced-error pruning.

Trees split multiway on nominal attributes (one branch per vocabulary
value, zero-coverage branches included as majority leaves) and never
reuse an attribute on a path.  ``fit`` holds out one of ``prune_folds``
shuffled folds of the training rows and prunes bottom-up: a subtree is
replaced by its growing-set majority leaf whenever that leaf makes no
more errors on the held-out rows than the subtree does.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Union

import numpy as np

from ._backend import value_class_counts
from .recode import RecodedTable, TARGET_TOKENS

# gains this small are treated as zero (absorbs float cancellation noise)
_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class TreeParams:
    """Learner knobs; defaults follow the conventional settings."""

    min_leaf: int = 2
    prune_folds: int = 3
    seed: int = 1
    max_depth: int | None = None

    def __post_init__(self):
        if self.min_leaf < 1:
            raise ValueError(f"min_leaf must be >= 1, got {self.min_leaf}")
        if self.prune_folds < 2:
            raise ValueError(f"prune_folds must be >= 2, got {self.prune_folds}")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")


@dataclass(frozen=True)
class Leaf:
    label: int                 # majority class code, ties toward No
    counts: tuple[int, int]    # growing-set (No, Yes) counts

    @property
    def label_token(self) -> str:
        return TARGET_TOKENS[self.label]


@dataclass(frozen=True)
class Split:
    attribute: str
    col: int                   # column index in the source table
    values: tuple[str, ...]    # branch tokens, one child per value
    children: tuple["Node", ...]
    label: int                 # growing-set majority at this node
    counts: tuple[int, int]


Node = Union[Leaf, Split]


def _majority(counts: np.ndarray) -> int:
    return 1 if counts[1] > counts[0] else 0


def entropy(counts) -> float:
    """Shannon entropy in bits of a class-count vector; empty counts give 0."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _entropy_rows(count_matrix: np.ndarray) -> np.ndarray:
    """Entropy of each row of an (m, n_classes) count matrix."""
    totals = count_matrix.sum(axis=1, keepdims=True).astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = count_matrix / totals
        terms = np.where(count_matrix > 0, p * np.log2(p), 0.0)
    return -terms.sum(axis=1)


def _column_gains(table: RecodedTable, rows: np.ndarray, cols: list[int]) -> np.ndarray:
    """Information gain of each candidate column over the given rows."""
    y = table.y[rows]
    parent = entropy(np.bincount(y, minlength=2))
    max_values = max(len(table.vocab[c]) for c in cols)
    codes = np.ascontiguousarray(table.codes[rows][:, cols])
    counts = value_class_counts(codes, y, max_values, 2)
    child_h = _entropy_rows(counts.reshape(-1, 2)).reshape(len(cols), max_values)
    sizes = counts.sum(axis=2)
    weighted = (sizes * child_h).sum(axis=1) / rows.size
    return parent - weighted


def info_gain(table: RecodedTable, attribute: str, rows: np.ndarray | None = None) -> float:
    """Entropy reduction of splitting the given rows on one attribute."""
    col = table.column_index(attribute)
    if rows is None:
        rows = np.arange(table.n_rows)
    rows = np.asarray(rows)
    if rows.size == 0:
        raise ValueError("info_gain needs at least one row")
    return float(_column_gains(table, rows, [col])[0])


def grow_tree(table: RecodedTable, params: TreeParams,
              rows: np.ndarray | None = None) -> Node:
    """Grow an unpruned tree on the given rows (all rows by default)."""
    if rows is None:
        rows = np.arange(table.n_rows)
    rows = np.asarray(rows)
    if rows.size == 0:
        raise ValueError("cannot grow a tree from zero rows")
    avail = [c for c in range(table.n_columns) if c != table.target_index]
    return _grow(table, rows, avail, params, depth=0)


def _grow(table: RecodedTable, rows: np.ndarray, avail: list[int],
          params: TreeParams, depth: int) -> Node:
    counts = np.bincount(table.y[rows], minlength=2)
    label = _majority(counts)
    leaf = Leaf(label=label, counts=(int(counts[0]), int(counts[1])))

    if counts[0] == 0 or counts[1] == 0:
        return leaf
    if rows.size < 2 * params.min_leaf:
        return leaf
    if not avail:
        return leaf
    if params.max_depth is not None and depth >= params.max_depth:
        return leaf

    gains = _column_gains(table, rows, avail)
    best_pos = int(np.argmax(gains))  # first maximum = earliest column on ties
    if gains[best_pos] <= _GAIN_EPS:
        return leaf
    best = avail[best_pos]

    remaining = [c for c in avail if c != best]
    col_codes = table.codes[rows, best]
    children = []
    for v in range(len(table.vocab[best])):
        sub = rows[col_codes == v]
        if sub.size == 0:
            children.append(Leaf(label=label, counts=(0, 0)))
        else:
            children.append(_grow(table, sub, remaining, params, depth + 1))
    return Split(
        attribute=table.columns[best],
        col=best,
        values=table.vocab[best],
        children=tuple(children),
        label=label,
        counts=(int(counts[0]), int(counts[1])),
    )


def rep_prune(tree: Node, table: RecodedTable,
              rows: np.ndarray | None = None) -> Node:
    """Reduced-error pruning against a held-out row set.

    Bottom-up: each internal node is replaced by its growing-set
    majority leaf unless the subtree makes strictly fewer errors on the
    pruning rows routed to it.  Nodes no pruning row reaches collapse.
    """
    if rows is None:
        rows = np.arange(table.n_rows)
    rows = np.asarray(rows)
    pruned, _ = _prune(tree, table.codes, table.y, rows)
    return pruned


def _prune(node: Node, codes: np.ndarray, y: np.ndarray,
           rows: np.ndarray) -> tuple[Node, int]:
    labels = y[rows]
    leaf_err = int((labels != node.label).sum())
    if isinstance(node, Leaf):
        return node, leaf_err

    col_codes = codes[rows, node.col]
    children = []
    subtree_err = 0
    for v, child in enumerate(node.children):
        new_child, err = _prune(child, codes, y, rows[col_codes == v])
        children.append(new_child)
        subtree_err += err
    if leaf_err <= subtree_err:
        return Leaf(label=node.label, counts=node.counts), leaf_err
    return replace(node, children=tuple(children)), subtree_err


def fit(table: RecodedTable, params: TreeParams | None = None,
        rows: np.ndarray | None = None) -> Node:
    """Shuffle, split off the pruning fold, grow, then prune.

    The shuffle is a seeded NumPy PCG64 permutation; fold 0 of
    ``prune_folds`` near-equal folds (remainder rows land in earlier
    folds) is held out for pruning and the rest feed growth.
    """
    params = params or TreeParams()
    if rows is None:
        rows = np.arange(table.n_rows)
    rows = np.asarray(rows)
    if rows.size < params.prune_folds:
        raise ValueError(
            f"need at least {params.prune_folds} rows to fit, got {rows.size}"
        )
    rng = np.random.Generator(np.random.PCG64(params.seed))
    shuffled = rows[rng.permutation(rows.size)]
    folds = np.array_split(shuffled, params.prune_folds)
    prune_rows = folds[0]
    grow_rows = np.concatenate(folds[1:])
    tree = grow_tree(table, params, grow_rows)
    return rep_prune(tree, table, prune_rows)


def predict(tree: Node, row: Mapping[str, str]) -> str:
    """Route one attribute->token mapping to a leaf and return its label."""
    node = tree
    while isinstance(node, Split):
        try:
            token = row[node.attribute]
        except KeyError:
            raise KeyError(
                f"row is missing attribute {node.attribute!r} needed by the tree"
            ) from None
        if token not in node.values:
            return TARGET_TOKENS[node.label]  # defensive: unknown value
        node = node.children[node.values.index(token)]
    return node.label_token


def predict_codes(tree: Node, codes: np.ndarray) -> np.ndarray:
    """Predict class codes for a block of encoded rows."""
    out = np.empty(codes.shape[0], dtype=np.uint8)
    if codes.shape[0]:
        _route(tree, codes, np.arange(codes.shape[0]), out)
    return out


def _route(node: Node, codes: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
    if isinstance(node, Leaf):
        out[idx] = node.label
        return
    col_codes = codes[idx, node.col]
    for v, child in enumerate(node.children):
        sub = idx[col_codes == v]
        if sub.size:
            _route(child, codes, sub, out)


def render_tree(tree: Node) -> str:
    """Deterministic text listing, one branch per line.

    Internal branches print ``attr = value``; leaves append
    `` : LABEL (n/e)`` with growing-set instance and error counts.
    Depth d is prefixed by d copies of ``|   ``.
    """
    if isinstance(tree, Leaf):
        return _leaf_text("", tree)
    lines: list[str] = []
    _render(tree, 0, lines)
    return "\n".join(lines)


def _leaf_text(head: str, leaf: Leaf) -> str:
    n = leaf.counts[0] + leaf.counts[1]
    e = n - leaf.counts[leaf.label]
    tail = f": {leaf.label_token} ({n}/{e})"
    return f"{head} {tail}" if head else tail


def _render(node: Split, depth: int, lines: list[str]) -> None:
    prefix = "|   " * depth
    for token, child in zip(node.values, node.children):
        head = f"{prefix}{node.attribute} = {token}"
        if isinstance(child, Leaf):
            lines.append(_leaf_text(head, child))
        else:
            lines.append(head)
            _render(child, depth + 1, lines)
