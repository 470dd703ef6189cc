"""Transaction profit and premium/general customer classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Mapping

from .dataset import Customer, Number, Transaction, TransactionDataset, UtilityTable
from .mining import exact

PREMIUM = "premium"
GENERAL = "general"
POLICIES = ("any_premium", "total_profit")


@dataclass(frozen=True)
class TransactionProfit:
    tid: int
    profit: Number
    customer_id: str | None = None
    customer_name: str | None = None


@dataclass(frozen=True)
class TransactionRow:
    profit: TransactionProfit
    customer_class: str

    @property
    def tid(self) -> int:
        return self.profit.tid

    @property
    def premium(self) -> bool:
        return self.customer_class == PREMIUM


@dataclass(frozen=True)
class CustomerAggregate:
    customer_id: str
    customer_name: str | None
    total_profit: Number
    transaction_count: int
    customer_class: str


@dataclass(frozen=True)
class SegmentationReport:
    per_transaction: tuple[TransactionRow, ...]
    per_customer: dict[str, CustomerAggregate] | None
    threshold: Number | float
    aggregation_policy: str | None = None
    profit_scope: str = "all"

    @property
    def premium_tids(self) -> set[int]:
        return {row.tid for row in self.per_transaction if row.premium}

    def profits(self) -> dict[int, Number]:
        return {row.tid: row.profit.profit for row in self.per_transaction}


def transaction_utility(transaction: Transaction, utilities: UtilityTable,
                        items: Collection[str] | None = None) -> Number:
    """Sum of quantity times external utility over the transaction's items.

    ``items`` restricts the sum to a subset of the catalogue.
    """
    total = 0
    for item, qty in transaction.items.items():
        if item not in utilities:
            raise KeyError(f"transaction {transaction.tid}: no external utility for item {item!r}")
        if items is None or item in items:
            total += qty * utilities[item]
    return total


def classify(profit: Number, threshold: Number | float) -> str:
    return PREMIUM if exact(profit) > exact(threshold) else GENERAL


def classify_transactions(dataset: TransactionDataset, utilities: UtilityTable,
                          customers: Mapping[int, Customer] | None = None,
                          threshold: Number | float = 45,
                          policy: str = "any_premium",
                          total_threshold: Number | float | None = None,
                          profit_items: Collection[str] | None = None) -> SegmentationReport:
    """Profit and class for each transaction, in dataset order.

    Customer identities come from ``customers`` when given, else from the
    transactions themselves. Per-customer aggregates are only computed when
    at least one transaction has a known customer.
    ``profit_items`` restricts profit to those items (the ``huri`` scope).
    """
    if exact(threshold) < 0:
        raise ValueError("customer utility threshold must be non-negative")
    rows = []
    for t in dataset.transactions:
        cid, cname = t.customer_id, t.customer_name
        if customers is not None and t.tid in customers:
            cid, cname = customers[t.tid].customer_id, customers[t.tid].customer_name
        profit = transaction_utility(t, utilities, profit_items)
        rows.append(TransactionRow(TransactionProfit(t.tid, profit, cid, cname), classify(profit, threshold)))
    report = SegmentationReport(tuple(rows), None, threshold, None,
                                "all" if profit_items is None else "huri")
    if any(row.profit.customer_id is not None for row in rows):
        per_customer = aggregate_customers(report, policy, total_threshold)
        report = SegmentationReport(report.per_transaction, per_customer, threshold, policy, report.profit_scope)
    return report


def aggregate_customers(report: SegmentationReport, policy: str = "any_premium",
                        total_threshold: Number | float | None = None) -> dict[str, CustomerAggregate]:
    """Roll transaction rows up to customers, keyed (and sorted) by customer id.

    Transactions without a customer id are left out.
    """
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    if policy == "total_profit" and total_threshold is None:
        raise ValueError("total_profit policy needs total_threshold")
    totals: dict[str, list] = {}
    for row in report.per_transaction:
        cid = row.profit.customer_id
        if cid is None:
            continue
        acc = totals.setdefault(cid, [row.profit.customer_name, 0, 0, False])
        acc[1] += row.profit.profit
        acc[2] += 1
        acc[3] = acc[3] or row.premium
    out = {}
    for cid in sorted(totals):
        name, total, count, any_premium = totals[cid]
        if policy == "any_premium":
            cls = PREMIUM if any_premium else GENERAL
        else:
            cls = classify(total, total_threshold)
        out[cid] = CustomerAggregate(cid, name, total, count, cls)
    return out
