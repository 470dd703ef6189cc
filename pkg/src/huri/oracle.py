"""Brute-force reference for the miner and the segmenter.

Nothing here reuses the mining module's candidate generation or support
counting: the rare single items are found by a direct column scan, every
non-empty subset of them is enumerated with a bitmask, and each subset's
support and utility are recomputed from scratch against every transaction.
It is exponential in the number of rare items and meant for small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dataset import TransactionDataset, UtilityTable

MAX_RARE_ITEMS = 24


class OracleBoundError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    rare_entries: dict[tuple[str, ...], tuple[int, object]]
    premium_tids: frozenset[int]
    profits: dict[int, object] = field(default_factory=dict)


def _as_fraction(value) -> Fraction:
    return Fraction(str(value)) if isinstance(value, float) else Fraction(value)


def _support(rows, members, mode):
    total = 0
    for basket in rows:
        quantities = [basket.get(i, 0) for i in members]
        if 0 in quantities:
            continue
        total += 1 if mode == "count" else min(quantities)
    return total


def _utility(rows, members, prices, mode):
    total = 0
    for basket in rows:
        if mode == "cooccurrence" and any(i not in basket for i in members):
            continue
        for i in members:
            total += basket.get(i, 0) * prices[i]
    return total


def enumerate_rare_itemsets(dataset: TransactionDataset, utilities: UtilityTable, config,
                            customer_threshold=45, full_lattice: bool = False) -> OracleResult:
    """Exhaustive rare itemsets plus the set of premium transaction ids.

    ``config`` is any object with the ``MiningConfig`` attributes. With
    ``full_lattice`` every itemset over the whole universe is tried, not just
    subsets of the rare items; that mode exists only to show what the
    level-wise search leaves out.
    """
    rows = [dict(t.items) for t in dataset.transactions]
    prices = dict(utilities.entries)
    n = len(rows)
    if config.max_support_abs is not None:
        limit = _as_fraction(config.max_support_abs)
    else:
        limit = _as_fraction(config.max_support_fraction) * n

    if full_lattice:
        pool = sorted(dataset.universe)
    else:
        pool = []
        for item in sorted(dataset.universe):
            col = [basket.get(item, 0) for basket in rows]
            s = sum(col) if config.support_mode == "quantity" else sum(1 for q in col if q > 0)
            if s < limit:
                pool.append(item)
    if len(pool) > MAX_RARE_ITEMS:
        raise OracleBoundError(f"{len(pool)} items to enumerate exceeds the bound of {MAX_RARE_ITEMS}")

    entries = {}
    for mask in range(1, 1 << len(pool)):
        members = tuple(pool[b] for b in range(len(pool)) if mask >> b & 1)
        support = _support(rows, members, config.support_mode)
        if support < limit:
            entries[members] = (support, _utility(rows, members, prices, config.utility_mode))

    profits = {}
    premium = set()
    for t, basket in zip(dataset.transactions, rows):
        profit = sum(q * prices[i] for i, q in basket.items())
        profits[t.tid] = profit
        if _as_fraction(profit) > _as_fraction(customer_threshold):
            premium.add(t.tid)
    return OracleResult(entries, frozenset(premium), profits)


@dataclass
class Diff:
    missing: list = field(default_factory=list)      # in oracle only
    extra: list = field(default_factory=list)        # in result only
    mismatched: list = field(default_factory=list)   # (itemset, result value, oracle value)
    premium_missing: list = field(default_factory=list)
    premium_extra: list = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.missing or self.extra or self.mismatched
                    or self.premium_missing or self.premium_extra)

    def __bool__(self):
        return not self.empty

    def as_dict(self) -> dict:
        def label(s):
            return "{" + ",".join(s) + "}"
        return {
            "missing": [label(s) for s in self.missing],
            "extra": [label(s) for s in self.extra],
            "mismatched": [
                {"itemset": label(s), "result": [str(v) for v in got], "oracle": [str(v) for v in want]}
                for s, got, want in self.mismatched
            ],
            "premium_missing": sorted(self.premium_missing),
            "premium_extra": sorted(self.premium_extra),
        }


def diff(result, report, oracle: OracleResult) -> Diff:
    """Compare a ``MiningResult`` (and optionally a ``SegmentationReport``) with the oracle."""
    found = {tuple(e.itemset): (e.support, e.utility) for e in result.rare}
    out = Diff()
    for key in sorted(oracle.rare_entries.keys() - found.keys()):
        out.missing.append(key)
    for key in sorted(found.keys() - oracle.rare_entries.keys()):
        out.extra.append(key)
    for key in sorted(found.keys() & oracle.rare_entries.keys()):
        if found[key] != oracle.rare_entries[key]:
            out.mismatched.append((key, found[key], oracle.rare_entries[key]))
    if report is not None:
        premium = report.premium_tids
        out.premium_missing = sorted(oracle.premium_tids - premium)
        out.premium_extra = sorted(premium - oracle.premium_tids)
    return out
