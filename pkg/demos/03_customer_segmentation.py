"""
Premium and general customers
=============================

Each transaction's profit is the sum of quantity times unit profit over
its items. Transactions with profit above 45 are premium. Customer-level
labels need an aggregation rule, because one customer can have several
transactions with different classes.
"""

from collections import Counter

from huri import aggregate_customers, classify_transactions, load_example, mine, validate

dataset, utilities = load_example()

# Several ids share a display name; that is reported as a warning only.
for issue in validate(dataset, utilities):
    print(issue)

report = classify_transactions(dataset, utilities, threshold=45)
print("\npremium transactions:")
for row in report.per_transaction:
    if row.premium:
        print(f"  T{row.tid:<3} {row.profit.customer_id}  {row.profit.customer_name}  profit {row.profit.profit}")
print(Counter(row.customer_class for row in report.per_transaction))

# Transaction 2 has profit 44; the comparison is strict so it stays general.
print("T2 profit", report.profits()[2])

# Customer roll-ups
by_total = aggregate_customers(report, "total_profit", total_threshold=45)
print("\npremium by total profit:", [c for c, agg in by_total.items() if agg.customer_class == "premium"])

# Restricting profit to items that occur in high-utility rare itemsets
huri_items = {i for e in mine(dataset, utilities).high_utility for i in e.itemset}
narrow = classify_transactions(dataset, utilities, threshold=7, profit_items=huri_items)
print(f"\nprofit from {sorted(huri_items)} only, threshold 7:", sorted(narrow.premium_tids))
