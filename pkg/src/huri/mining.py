"""High-utility rare itemset mining.

Rare itemsets are found level-wise, starting from the items whose support
lies strictly below the maximum-support threshold and growing them with the
usual Apriori join. Every subset of a rare itemset's member set is rare as
well, so the search space is exactly the lattice spanned by the rare single
items. Each rare itemset is then scored with a utility and those strictly
above ``min_utility`` are reported as high-utility rare itemsets.

Two support measures are available. ``quantity`` (the default) counts total
units sold; this is the measure under which the bundled worked example comes
out right. ``count`` is the textbook number of containing transactions. For
itemsets of two or more items, quantity support is the sum, over
transactions holding all members, of the smallest member quantity.

Two utility measures are available. ``additive`` (the default) sums the
members' dataset-wide total utilities. ``cooccurrence`` is the conventional
high-utility-mining measure restricted to transactions that hold the whole
itemset.
"""

from __future__ import annotations

import gc
import math
from dataclasses import dataclass, replace
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .dataset import Number, TransactionDataset, UtilityTable, internal_utility

SUPPORT_MODES = ("quantity", "count")
UTILITY_MODES = ("additive", "cooccurrence")


class Itemset(tuple):
    """Canonically sorted, duplicate-free tuple of item ids."""

    def __new__(cls, items: Iterable[str] = ()):
        members = sorted(set(items))
        if not members:
            raise ValueError("an itemset needs at least one item")
        return super().__new__(cls, members)

    def __repr__(self):
        return "{" + ",".join(self) + "}"


def exact(value) -> Fraction:
    """Convert an int, Decimal, float or numeric string to an exact Fraction.

    Floats go through their shortest repr so that ``0.4`` means 2/5.
    """
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    return Fraction(str(value))


@dataclass(frozen=True)
class MiningConfig:
    max_support_fraction: float = 0.40
    min_utility: Number | float = 45
    support_mode: str = "quantity"
    utility_mode: str = "additive"
    max_support_abs: Number | float | None = None

    def __post_init__(self):
        if self.support_mode not in SUPPORT_MODES:
            raise ValueError(f"support_mode must be one of {SUPPORT_MODES}")
        if self.utility_mode not in UTILITY_MODES:
            raise ValueError(f"utility_mode must be one of {UTILITY_MODES}")
        if not 0 < exact(self.max_support_fraction) <= 1:
            raise ValueError("max_support_fraction must lie in (0, 1]")
        if exact(self.min_utility) < 0:
            raise ValueError("min_utility must be non-negative")
        if self.max_support_abs is not None and exact(self.max_support_abs) < 0:
            raise ValueError("max_support_abs must be non-negative")

    def support_threshold(self, n_transactions: int) -> Fraction:
        """Absolute cutoff; an itemset is rare iff its support is strictly below it."""
        if self.max_support_abs is not None:
            return exact(self.max_support_abs)
        return exact(self.max_support_fraction) * n_transactions

    def as_dict(self) -> dict:
        return {
            "max_support_fraction": self.max_support_fraction,
            "max_support_abs": self.max_support_abs,
            "min_utility": self.min_utility,
            "support_mode": self.support_mode,
            "utility_mode": self.utility_mode,
        }


@dataclass(frozen=True)
class RareItemsetEntry:
    itemset: Itemset
    support: int
    utility: Number


@dataclass(frozen=True)
class MiningResult:
    rare: tuple[RareItemsetEntry, ...]
    config: MiningConfig
    dataset_stats: dict
    support_threshold: Fraction
    high_utility: tuple[RareItemsetEntry, ...] | None = None
    min_utility: Number | float | None = None

    def by_size(self, entries: Sequence[RareItemsetEntry] | None = None) -> dict[int, list[RareItemsetEntry]]:
        groups: dict[int, list[RareItemsetEntry]] = {}
        for entry in self.rare if entries is None else entries:
            groups.setdefault(len(entry.itemset), []).append(entry)
        return groups

    def lookup(self, *items: str) -> RareItemsetEntry:
        key = Itemset(items)
        for entry in self.rare:
            if entry.itemset == key:
                return entry
        raise KeyError(key)


def _sort_key(itemset: Sequence[str]):
    return (len(itemset), tuple(itemset))


def _check_mode(mode: str, modes: tuple[str, ...]) -> None:
    if mode not in modes:
        raise ValueError(f"mode must be one of {modes}, got {mode!r}")


def item_support(dataset: TransactionDataset, item: str, mode: str = "quantity") -> int:
    _check_mode(mode, SUPPORT_MODES)
    if mode == "quantity":
        return internal_utility(dataset, item)
    if item not in dataset.universe:
        raise KeyError(f"unknown item {item!r}")
    return sum(1 for t in dataset.transactions if item in t.items)


def itemset_support(dataset: TransactionDataset, itemset: Iterable[str], mode: str = "quantity") -> int:
    _check_mode(mode, SUPPORT_MODES)
    members = Itemset(itemset)
    for item in members:
        if item not in dataset.universe:
            raise KeyError(f"unknown item {item!r}")
    total = 0
    for t in dataset.transactions:
        if all(item in t.items for item in members):
            total += 1 if mode == "count" else min(t.items[item] for item in members)
    return total


def item_total_utility(dataset: TransactionDataset, utilities: UtilityTable, item: str) -> Number:
    """External utility times total units sold."""
    return utilities[item] * internal_utility(dataset, item)


def itemset_utility(dataset: TransactionDataset, utilities: UtilityTable,
                    itemset: Iterable[str], mode: str = "additive") -> Number:
    _check_mode(mode, UTILITY_MODES)
    members = Itemset(itemset)
    if mode == "additive":
        return sum(item_total_utility(dataset, utilities, i) for i in members)
    total = 0
    for t in dataset.transactions:
        if all(item in t.items for item in members):
            total += sum(t.items[i] * utilities[i] for i in members)
    return total


def rare_singletons(dataset: TransactionDataset, config: MiningConfig,
                    utilities: UtilityTable | None = None) -> list[RareItemsetEntry]:
    """Single items with support strictly below the threshold, sorted by id.

    Utilities are filled in when a utility table is given, otherwise left at 0.
    """
    threshold = config.support_threshold(len(dataset))
    entries = []
    for item in sorted(dataset.universe):
        support = item_support(dataset, item, config.support_mode)
        if support < threshold:
            utility = 0 if utilities is None else item_total_utility(dataset, utilities, item)
            entries.append(RareItemsetEntry(Itemset([item]), support, utility))
    return entries


def generate_candidates(level: Iterable[Sequence[str]]) -> list[Itemset]:
    """Apriori join of size-k itemsets sharing a (k-1)-prefix, then subset prune."""
    level = sorted({Itemset(s) for s in level}, key=_sort_key)
    if not level:
        return []
    k = len(level[0])
    if any(len(s) != k for s in level):
        raise ValueError("all itemsets in a level must have the same size")
    return [cand for cand, _, _ in _join(level)]


def _join(level: list[Itemset]) -> list[tuple[Itemset, int, int]]:
    """Candidates with the positions of the two level members they were joined from.

    ``level`` must be canonical, same-size and sorted; output keeps that order.
    """
    k = len(level[0])
    # when the level holds every k-subset of its items no candidate can be pruned
    members = {i for s in level for i in s}
    present = set(level) if k > 1 and len(level) < math.comb(len(members), k) else None
    out = []
    n = len(level)
    start = 0
    while start < n:
        prefix = level[start][:-1]
        end = start + 1
        while end < n and level[end][:-1] == prefix:
            end += 1
        for i in range(start, end):
            a = level[i]
            for j in range(i + 1, end):
                cand = a + level[j][-1:]
                if present is None or all(sub in present for sub in combinations(cand, k)):
                    out.append((tuple.__new__(Itemset, cand), i, j))
        start = end
    return out


def _covers(dataset: TransactionDataset) -> dict[str, dict[int, int]]:
    """Vertical layout: item -> {transaction position: quantity}."""
    out: dict[str, dict[int, int]] = {item: {} for item in dataset.universe}
    for pos, t in enumerate(dataset.transactions):
        for item, qty in t.items.items():
            out[item][pos] = qty
    return out


def mine_rare_itemsets(dataset: TransactionDataset, utilities: UtilityTable,
                       config: MiningConfig = MiningConfig()) -> MiningResult:
    """Level-wise search over the lattice spanned by the rare single items.

    Supports are counted on a vertical layout: each itemset carries the
    transactions it occurs in, mapped to its smallest member quantity there.
    A joined candidate intersects the maps of its two parents.
    """
    if not dataset.transactions:
        raise ValueError("cannot mine an empty dataset")
    # the search allocates one entry per itemset and none of them form cycles;
    # pausing the cyclic collector avoids repeated full-heap scans
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _mine(dataset, utilities, config)
    finally:
        if was_enabled:
            gc.enable()


_EMPTY: dict[int, int] = {}


def _mine(dataset: TransactionDataset, utilities: UtilityTable, config: MiningConfig) -> MiningResult:
    threshold = config.support_threshold(len(dataset))
    # supports are integers, so "< threshold" is "< ceil(threshold)"
    limit = math.ceil(threshold)
    by_count = config.support_mode == "count"
    additive = config.utility_mode == "additive"
    item_utility = {}
    entries: list[RareItemsetEntry] = []

    level, covers, scores = [], [], []
    for item, cover in sorted(_covers(dataset).items()):
        item_utility[item] = utilities[item] * sum(cover.values())
        support = len(cover) if by_count else sum(cover.values())
        if support < limit:
            single = tuple.__new__(Itemset, (item,))
            score = item_utility[item] if additive else _cooccurrence(dataset, utilities, single, cover)
            level.append(single)
            covers.append(cover)
            scores.append(score)
            entries.append(RareItemsetEntry(single, support, score))

    while level:
        next_level, next_covers, next_scores = [], [], []
        for cand, i, j in _join(level):
            left, right = covers[i], covers[j]
            if not left or not right:
                cover = _EMPTY
            else:
                if len(left) > len(right):
                    left, right = right, left
                cover = {pos: min(q, right[pos]) for pos, q in left.items() if pos in right} or _EMPTY
            support = len(cover) if by_count else sum(cover.values())
            # Always holds by anti-monotonicity; kept as the level-wise support check.
            if not support < limit:
                raise AssertionError(f"candidate {cand!r} is not rare (support {support}); support counting is broken")
            if additive:
                score = scores[i] + item_utility[cand[-1]]
            else:
                score = _cooccurrence(dataset, utilities, cand, cover)
            next_level.append(cand)
            next_covers.append(cover)
            next_scores.append(score)
            entries.append(RareItemsetEntry(cand, support, score))
        level, covers, scores = next_level, next_covers, next_scores

    # levels are emitted in size order and the join preserves lexicographic
    # order within a level, so entries are already canonically sorted
    stats = {"n_transactions": len(dataset), "n_items": len(dataset.universe)}
    return MiningResult(tuple(entries), config, stats, threshold)


def _cooccurrence(dataset, utilities, itemset, cover) -> Number:
    txs = dataset.transactions
    return sum(sum(txs[pos].items[i] * utilities[i] for i in itemset) for pos in cover)


def filter_high_utility(result: MiningResult, min_utility: Number | float | None = None) -> MiningResult:
    """Keep rare itemsets whose utility is strictly greater than ``min_utility``."""
    if min_utility is None:
        min_utility = result.config.min_utility
    bound = exact(min_utility)
    if bound < 0:
        raise ValueError("min_utility must be non-negative")
    if bound.denominator == 1:
        # int and Decimal compare exactly against an int
        bound = int(bound)
        high = tuple(e for e in result.rare if e.utility > bound)
    else:
        high = tuple(e for e in result.rare if exact(e.utility) > bound)
    return replace(result, high_utility=high, min_utility=min_utility)


def mine(dataset: TransactionDataset, utilities: UtilityTable,
         config: MiningConfig = MiningConfig()) -> MiningResult:
    """Rare itemsets plus the high-utility filter in one call."""
    return filter_high_utility(mine_rare_itemsets(dataset, utilities, config), config.min_utility)
