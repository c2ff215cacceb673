"""Apriori frequent-itemset mining and association-rule generation.

Transactions are collections of hashable, mutually comparable items; a
recoded table row becomes one transaction holding one ``attribute=value``
item per column.  Support is counted level-wise: candidates of size k+1
join frequent k-sets sharing a (k-1)-prefix and are pruned when any
k-subset is infrequent.  All supports are exact integer counts; support
and confidence thresholds are compared as exact rationals.

``brute_force_itemsets`` is the test oracle: plain subset counting over
every non-empty item subset, deliberately sharing no code with the
level-wise path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from ._backend import count_candidates
from .recode import RecodedTable


class Item(NamedTuple):
    """One attribute=value token."""

    attribute: str
    value: str

    def __str__(self) -> str:
        return f"{self.attribute}={self.value}"


@dataclass(frozen=True)
class Itemset:
    """A sorted item tuple with its exact support count."""

    items: tuple
    count: int
    total: int

    @property
    def support(self) -> float:
        return self.count / self.total

    def __str__(self) -> str:
        body = " ".join(str(i) for i in self.items)
        return f"{{{body}}} ({self.count}/{self.total})"


@dataclass(frozen=True)
class AssociationRule:
    """antecedent ==> consequent with exact counts behind all metrics."""

    antecedent: tuple
    consequent: tuple
    count_rule: int          # rows containing antecedent and consequent
    count_antecedent: int
    count_consequent: int
    total: int

    @property
    def support(self) -> float:
        return self.count_rule / self.total

    @property
    def confidence(self) -> float:
        return self.count_rule / self.count_antecedent

    @property
    def lift(self) -> float:
        return (self.count_rule * self.total) / (self.count_antecedent * self.count_consequent)

    def __str__(self) -> str:
        lhs = " ".join(str(i) for i in self.antecedent)
        rhs = " ".join(str(i) for i in self.consequent)
        return (f"{lhs} ==> {rhs}  (supp={self.support:.4f}, "
                f"conf={self.confidence:.4f}, lift={self.lift:.4f})")


def itemize(table: RecodedTable) -> list[tuple[Item, ...]]:
    """One transaction per row, one Item per column."""
    if table.n_rows == 0:
        raise ValueError("cannot itemize an empty table")
    items_by_col = [
        tuple(Item(name, tok) for tok in table.vocab[c])
        for c, name in enumerate(table.columns)
    ]
    out = []
    for row in table.codes:
        out.append(tuple(items_by_col[c][code] for c, code in enumerate(row)))
    return out


def _threshold(value: float) -> Fraction:
    # parse through the decimal string so 0.05 means exactly 1/20
    return Fraction(str(float(value)))


def _min_count(min_support: float, total: int) -> int:
    if not 0 < min_support <= 1:
        raise ValueError(f"min_support must be in (0, 1], got {min_support}")
    return math.ceil(_threshold(min_support) * total)


def _encode(transactions: Sequence[Iterable[Hashable]]):
    baskets = [frozenset(t) for t in transactions]
    if not baskets:
        raise ValueError("no transactions")
    universe: set = set()
    for b in baskets:
        universe.update(b)
    items = sorted(universe)
    index = {item: i for i, item in enumerate(items)}
    presence = np.zeros((len(baskets), max(len(items), 1)), dtype=np.bool_)
    for r, basket in enumerate(baskets):
        for item in basket:
            presence[r, index[item]] = True
    return items, presence


def frequent_itemsets(transactions: Sequence[Iterable[Hashable]],
                      min_support: float) -> list[Itemset]:
    """All itemsets with support >= min_support, mined level-wise.

    Output order: size ascending, then support descending, then
    lexicographic item order, so listings are stable.
    """
    total = len(transactions)
    min_count = _min_count(min_support, total)
    items, presence = _encode(transactions)

    # L1 straight from column sums
    col_counts = presence.sum(axis=0, dtype=np.int64)
    level = [(i,) for i in range(len(items)) if col_counts[i] >= min_count]
    counts = {ids: int(col_counts[ids[0]]) for ids in level}
    result: list[Itemset] = _collect(level, counts, items, total)

    while level:
        candidates = _join_and_prune(level)
        if not candidates:
            break
        cand_arr = np.array(candidates, dtype=np.int64)
        cand_counts = count_candidates(presence, cand_arr)
        level = []
        for ids, c in zip(candidates, cand_counts):
            if c >= min_count:
                level.append(ids)
                counts[ids] = int(c)
        result.extend(_collect(level, counts, items, total))
    return result


def _join_and_prune(level: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Prefix-join sorted k-tuples, drop candidates with an infrequent subset."""
    known = set(level)
    k = len(level[0])
    candidates = []
    for a_pos in range(len(level)):
        a = level[a_pos]
        for b_pos in range(a_pos + 1, len(level)):
            b = level[b_pos]
            if a[: k - 1] != b[: k - 1]:
                break  # level is sorted, prefix group ended
            cand = a + (b[-1],)
            if all(sub in known for sub in combinations(cand, k)):
                candidates.append(cand)
    return candidates


def _collect(level, counts, items, total) -> list[Itemset]:
    sets = [
        Itemset(items=tuple(items[i] for i in ids), count=counts[ids], total=total)
        for ids in level
    ]
    sets.sort(key=lambda s: (-s.count, s.items))
    return sets


def brute_force_itemsets(transactions: Sequence[Iterable[Hashable]],
                         min_support: float) -> list[Itemset]:
    """Oracle miner: enumerate every non-empty subset, count directly.

    Exponential by design; refuses more than 20 distinct items.
    """
    total = len(transactions)
    min_count = _min_count(min_support, total)
    baskets = [frozenset(t) for t in transactions]
    if not baskets:
        raise ValueError("no transactions")
    universe: set = set()
    for b in baskets:
        universe.update(b)
    if len(universe) > 20:
        raise ValueError(f"{len(universe)} distinct items exceed the brute-force limit of 20")
    items = sorted(universe)

    result: list[Itemset] = []
    for size in range(1, len(items) + 1):
        found = []
        for combo in combinations(items, size):
            needed = frozenset(combo)
            count = sum(1 for b in baskets if needed <= b)
            if count >= min_count:
                found.append(Itemset(items=combo, count=count, total=total))
        found.sort(key=lambda s: (-s.count, s.items))
        result.extend(found)
        if not found:
            break  # no frequent set of this size, none larger can exist
    return result


def generate_rules(frequent: Sequence[Itemset], min_confidence: float,
                   consequent_filter: str | None = None) -> list[AssociationRule]:
    """All confident rules from frequent itemsets of size >= 2.

    Every split into non-empty antecedent/consequent is considered.  With
    consequent_filter set, only rules whose consequent is a single item
    on that attribute survive (class-association mode).  Ordered by
    confidence, then support, descending.
    """
    if not 0 < min_confidence <= 1:
        raise ValueError(f"min_confidence must be in (0, 1], got {min_confidence}")
    counts = {s.items: s.count for s in frequent}
    min_conf = _threshold(min_confidence)

    rules = []
    for itemset in frequent:
        k = len(itemset.items)
        if k < 2:
            continue
        sizes = (1,) if consequent_filter is not None else range(1, k)
        for size in sizes:
            for consequent in combinations(itemset.items, size):
                if consequent_filter is not None:
                    if getattr(consequent[0], "attribute", None) != consequent_filter:
                        continue
                antecedent = tuple(i for i in itemset.items if i not in consequent)
                count_ante = _lookup(counts, antecedent)
                if Fraction(itemset.count, count_ante) < min_conf:
                    continue
                rules.append(AssociationRule(
                    antecedent=antecedent,
                    consequent=consequent,
                    count_rule=itemset.count,
                    count_antecedent=count_ante,
                    count_consequent=_lookup(counts, consequent),
                    total=itemset.total,
                ))
    rules.sort(key=lambda r: (
        -Fraction(r.count_rule, r.count_antecedent),
        -r.count_rule,
        len(r.antecedent),
        r.antecedent,
        r.consequent,
    ))
    return rules


def _lookup(counts: dict, items: tuple) -> int:
    try:
        return counts[items]
    except KeyError:
        raise ValueError(
            f"frequent itemset list is not closed under subsets: {items!r} missing"
        ) from None
