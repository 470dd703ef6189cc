"""Seeded synthetic transaction data.

The random stream is SplitMix64, chosen because it is a few lines in any
language, so other implementations can reproduce the files byte for byte:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    return z ^ (z >> 31)

Derived draws:

* ``uniform()``   = (next() >> 11) / 2**53, in [0, 1)
* ``integer(lo, hi)`` = lo + next() mod (hi - lo + 1)

Generation order, all from a single stream seeded with ``seed mod 2**64``:

1. Items are ``I01 .. I<n>`` (zero padded to the width of ``n_items``).
   The last ``floor(rare_item_fraction * n_items + 1/2)`` of them form the
   rare pool, the rest the common pool.
2. One external utility per item, in item order: ``integer(low, high)``.
3. For each tid 1..n_transactions, each item in order is included when
   ``uniform() < p`` with ``p = 1/2`` for common items and
   ``p = 1/5 / mean_q`` for rare ones (``mean_q = (1 + max_quantity) / 2``,
   so a rare item's expected quantity support is a fifth of the
   transaction count, well under a 40% cutoff). An included item gets
   quantity ``integer(1, max_quantity)``. An empty basket is redrawn.
   Then the customer is ``integer(1, n_customers)`` with
   ``n_customers = max(1, n_transactions // 3)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dataset import (Customer, Transaction, TransactionDataset, UtilityTable,
                      emit_customers, emit_transactions, emit_utilities)

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def integer(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)


@dataclass(frozen=True)
class GenParams:
    n_transactions: int = 35
    n_items: int = 20
    rare_item_fraction: float = 0.2
    max_quantity: int = 5
    utility_range: tuple[int, int] = (0, 10)
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n_transactions, int) or self.n_transactions < 1:
            raise ValueError("n_transactions must be a positive integer")
        if not isinstance(self.n_items, int) or self.n_items < 1:
            raise ValueError("n_items must be a positive integer")
        if not 0 <= self.rare_item_fraction <= 1:
            raise ValueError("rare_item_fraction must lie in [0, 1]")
        if not isinstance(self.max_quantity, int) or self.max_quantity < 1:
            raise ValueError("max_quantity must be a positive integer")
        low, high = self.utility_range
        if not (isinstance(low, int) and isinstance(high, int)) or low < 0 or high < low:
            raise ValueError("utility_range must be integers with 0 <= low <= high")

    @property
    def item_ids(self) -> list[str]:
        width = max(2, len(str(self.n_items)))
        return [f"I{k:0{width}d}" for k in range(1, self.n_items + 1)]

    @property
    def rare_pool(self) -> list[str]:
        n_rare = int(Fraction(str(self.rare_item_fraction)) * self.n_items + Fraction(1, 2))
        items = self.item_ids
        return items[len(items) - n_rare:] if n_rare else []


def generate(params: GenParams) -> tuple[TransactionDataset, UtilityTable, dict[int, Customer]]:
    rng = SplitMix64(params.seed)
    items = params.item_ids
    rare = set(params.rare_pool)
    low, high = params.utility_range
    utilities = UtilityTable({item: rng.integer(low, high) for item in items})

    mean_q = (1 + params.max_quantity) / 2
    p_rare = 0.2 / mean_q
    n_customers = max(1, params.n_transactions // 3)
    txs = []
    customers = {}
    for tid in range(1, params.n_transactions + 1):
        basket = {}
        while not basket:
            for item in items:
                if rng.uniform() < (p_rare if item in rare else 0.5):
                    basket[item] = rng.integer(1, params.max_quantity)
        k = rng.integer(1, n_customers)
        customers[tid] = Customer(f"c{k}", f"customer {k}")
        txs.append(Transaction(tid, basket))
    dataset = TransactionDataset(tuple(txs), tuple(items)).with_customers(customers)
    return dataset, utilities, customers


def write(params: GenParams, out_dir: str | Path) -> dict[str, Path]:
    """Write ``transactions.csv`` (long layout), ``utilities.csv`` and ``customers.csv``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataset, utilities, _ = generate(params)
    paths = {
        "transactions": out / "transactions.csv",
        "utilities": out / "utilities.csv",
        "customers": out / "customers.csv",
    }
    paths["transactions"].write_text(emit_transactions(dataset, "long"), encoding="utf-8")
    paths["utilities"].write_text(emit_utilities(utilities), encoding="utf-8")
    paths["customers"].write_text(emit_customers(dataset), encoding="utf-8")
    return paths
