"""
Checking the miner against brute force
======================================

The generator writes reproducible synthetic data from a seed. The oracle
enumerates every subset of the rare items and rescans all transactions for
each one, which is slow but hard to get wrong. The two must agree exactly.
"""

import time

from huri import MiningConfig, classify_transactions, mine_rare_itemsets
from huri.generator import GenParams, generate
from huri.oracle import diff, enumerate_rare_itemsets

config = MiningConfig()
mismatches = 0
for seed in range(25):
    dataset, utilities, customers = generate(GenParams(n_transactions=40, n_items=10,
                                                       rare_item_fraction=0.3, seed=seed))
    result = mine_rare_itemsets(dataset, utilities, config)
    report = classify_transactions(dataset, utilities, threshold=45)
    delta = diff(result, report, enumerate_rare_itemsets(dataset, utilities, config, 45))
    mismatches += bool(delta)
print(f"25 seeds, {mismatches} mismatches")

# The oracle's optional full-lattice mode also tries itemsets built from
# frequent items; those are outside the level-wise search.
dataset, utilities, _ = generate(GenParams(n_transactions=40, n_items=10, seed=3))
rare_view = enumerate_rare_itemsets(dataset, utilities, config)
full = enumerate_rare_itemsets(dataset, utilities, config, full_lattice=True)
print(f"rare-item lattice: {len(rare_view.rare_entries)} itemsets, whole lattice: {len(full.rare_entries)}")

# A larger run
dataset, utilities, _ = generate(GenParams(n_transactions=10_000, n_items=100,
                                           rare_item_fraction=0.1, seed=1))
start = time.perf_counter()
result = mine_rare_itemsets(dataset, utilities, config)
print(f"{len(result.rare)} rare itemsets from 10,000 transactions in {time.perf_counter() - start:.2f}s")
