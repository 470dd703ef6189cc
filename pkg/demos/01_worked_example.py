"""
Rare and high-utility rare itemsets on the bundled example
===========================================================

A 35-transaction, 20-item store dataset ships with the package. This
walk-through computes every item's units sold and total profit, mines the
itemsets built only from rarely sold items, and keeps those whose combined
profit is above a threshold.
"""

from huri import (MiningConfig, filter_high_utility, internal_utility, item_total_utility,
                  load_example, mine_rare_itemsets)
from huri.report import build, render

dataset, utilities = load_example()
print(f"{len(dataset)} transactions over {len(dataset.universe)} items")

# Units sold (internal utility) and total profit per item
print("\nitem  unit profit  units sold  total profit")
for item in dataset.universe:
    print(f"{item:4}  {utilities[item]:11}  {internal_utility(dataset, item):10}  "
          f"{item_total_utility(dataset, utilities, item):12}")

# An item is rare when fewer than 40% x 35 = 14 units were sold. L and O sold
# exactly 14 and so are not rare.
config = MiningConfig(max_support_fraction=0.40, min_utility=45)
result = mine_rare_itemsets(dataset, utilities, config)
print(f"\nsupport cutoff: {result.support_threshold}")

# Every non-empty combination of the four rare items is itself rare.
result = filter_high_utility(result, 45)
print(render(build(result), "table"))
