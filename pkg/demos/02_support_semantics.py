"""
Counting support by units or by transactions
=============================================

Support can be measured as units sold (the default) or as the number of
transactions that contain an item. On the bundled data the two measures
disagree: item F shows up in only 11 baskets but sells 27 units.
"""

from huri import MiningConfig, item_support, load_example, rare_singletons

dataset, utilities = load_example()
cutoff = 14

print("item  units  baskets")
for item in sorted(dataset.universe):
    q = item_support(dataset, item, "quantity")
    c = item_support(dataset, item, "count")
    flag = "  <- rare by baskets only" if c < cutoff <= q else ""
    print(f"{item:4}  {q:5}  {c:7}{flag}")

for mode in ("quantity", "count"):
    rare = rare_singletons(dataset, MiningConfig(max_support_abs=cutoff, support_mode=mode))
    print(f"{mode:8}: rare items {[e.itemset[0] for e in rare]}")
