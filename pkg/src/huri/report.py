"""Report assembly and rendering (json, csv, table)."""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal
from fractions import Fraction

from .mining import Itemset, MiningResult
from .segmentation import SegmentationReport

SCHEMA_VERSION = "1.0"
FORMATS = ("json", "csv", "table")

# The worked example's published tables, used only to annotate deviations.
EXAMPLE_RARE = {
    ("D",): 24, ("G",): 60, ("H",): 13, ("S",): 11,
    ("D", "G"): 84, ("D", "H"): 37, ("D", "S"): 35, ("G", "H"): 73, ("G", "S"): 71, ("H", "S"): 24,
    ("D", "G", "H"): 97, ("D", "G", "S"): 95, ("G", "H", "S"): 84, ("D", "H", "S"): 48,
    ("D", "G", "H", "S"): 108,
}
EXAMPLE_HIGH_UTILITY = {
    ("G",), ("D", "G"), ("G", "H"), ("G", "S"),
    ("D", "G", "H"), ("D", "G", "S"), ("G", "H", "S"), ("D", "G", "H", "S"),
}


def _num(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Decimal, Fraction)):
        return int(value) if value == int(value) else float(value)
    return value


def errata(result: MiningResult) -> list[dict]:
    """Notes for high-utility itemsets the published worked example leaves out.

    Only emitted when the rare itemsets are exactly the published ones, i.e.
    when mining the bundled example with its own settings.
    """
    found = {tuple(e.itemset): e.utility for e in result.rare}
    if found != EXAMPLE_RARE or result.high_utility is None:
        return []
    notes = []
    for entry in result.high_utility:
        if tuple(entry.itemset) not in EXAMPLE_HIGH_UTILITY:
            notes.append({
                "itemset": list(entry.itemset),
                "utility": _num(entry.utility),
                "note": (f"utility {entry.utility} exceeds min_utility {result.min_utility} "
                         "but the published high-utility table omits this itemset; "
                         "reported here because the stated threshold admits it"),
            })
    return notes


def _entries(entries):
    return [
        {"itemset": list(e.itemset), "size": len(e.itemset),
         "support": _num(e.support), "utility": _num(e.utility)}
        for e in entries
    ]


def build(result: MiningResult | None = None, segmentation: SegmentationReport | None = None,
          config: dict | None = None) -> dict:
    """Assemble the versioned report dictionary. Sections not computed are ``null``."""
    cfg = dict(config or {})
    stats = None
    if result is not None:
        cfg.update(result.config.as_dict())
        cfg["support_threshold_abs"] = _num(result.support_threshold)
        stats = dict(result.dataset_stats)
    if segmentation is not None:
        cfg["customer_utility_threshold"] = segmentation.threshold
        cfg["profit_scope"] = segmentation.profit_scope
        cfg["aggregation_policy"] = segmentation.aggregation_policy
    cfg = {k: _num(v) for k, v in cfg.items()}

    transactions = customers = None
    if segmentation is not None:
        transactions = [
            {"tid": row.tid, "customer_id": row.profit.customer_id,
             "customer_name": row.profit.customer_name,
             "profit": _num(row.profit.profit), "class": row.customer_class}
            for row in segmentation.per_transaction
        ]
        if segmentation.per_customer is not None:
            customers = [
                {"customer_id": c.customer_id, "customer_name": c.customer_name,
                 "total_profit": _num(c.total_profit), "transaction_count": c.transaction_count,
                 "class": c.customer_class}
                for c in segmentation.per_customer.values()
            ]
    return {
        "schema_version": SCHEMA_VERSION,
        "config": cfg,
        "dataset_stats": stats,
        "rare_itemsets": None if result is None else _entries(result.rare),
        "high_utility_rare_itemsets": (
            None if result is None or result.high_utility is None else _entries(result.high_utility)),
        "transactions": transactions,
        "customers": customers,
        "errata": [] if result is None else errata(result),
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def to_csv(report: dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if report["rare_itemsets"] is not None:
        high = {tuple(e["itemset"]) for e in report["high_utility_rare_itemsets"] or []}
        writer.writerow(["size", "itemset", "support", "utility", "high_utility"])
        for e in report["rare_itemsets"]:
            writer.writerow([e["size"], " ".join(e["itemset"]), e["support"], e["utility"],
                             int(tuple(e["itemset"]) in high)])
    if report["transactions"] is not None:
        if report["rare_itemsets"] is not None:
            writer.writerow([])
        writer.writerow(["tid", "customer_id", "customer_name", "customer_type", "transaction_profit"])
        for row in report["transactions"]:
            writer.writerow([row["tid"], row["customer_id"] or "", row["customer_name"] or "",
                             row["class"].capitalize(), row["profit"]])
    return out.getvalue()


def _grid(headers, rows) -> list[str]:
    widths = [max(len(str(x)) for x in col) for col in zip(headers, *rows)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())
    return lines


def _itemset_rows(entries):
    rows = []
    previous = None
    for e in entries:
        size = e["size"]
        label = f"{size}-itemset" if size != previous else ""
        previous = size
        rows.append([label, repr(Itemset(e["itemset"])), e["utility"]])
    return rows


def to_table(report: dict) -> str:
    lines = []
    if report["rare_itemsets"] is not None:
        lines.append(f"Rare itemsets ({len(report['rare_itemsets'])})")
        lines += _grid(["Rare itemsets", "List of rare itemsets", "Itemset Utility"],
                       _itemset_rows(report["rare_itemsets"]))
        lines.append("")
        high = report["high_utility_rare_itemsets"] or []
        lines.append(f"High utility rare itemsets ({len(high)})")
        lines += _grid(["Rare itemsets", "List of high utility rare itemsets", "Utility"],
                       _itemset_rows(high))
        for note in report["errata"]:
            lines.append(f"* {repr(Itemset(note['itemset']))}: {note['note']}")
        lines.append("")
    if report["transactions"] is not None:
        lines.append("Customer transactions")
        lines += _grid(
            ["Trans id", "Customer_id", "Customer_name", "Customer_type", "Transaction_Profit"],
            [[r["tid"], r["customer_id"] or "", r["customer_name"] or "",
              r["class"].capitalize(), r["profit"]] for r in report["transactions"]])
        lines.append("")
    if report["customers"]:
        lines.append("Customers")
        lines += _grid(["Customer_id", "Customer_name", "Transactions", "Total_Profit", "Customer_type"],
                       [[c["customer_id"], c["customer_name"] or "", c["transaction_count"],
                         c["total_profit"], c["class"].capitalize()] for c in report["customers"]])
        lines.append("")
    return "\n".join(lines)


def render(report: dict, format: str = "json") -> str:
    if format == "json":
        return to_json(report)
    if format == "csv":
        return to_csv(report)
    if format == "table":
        return to_table(report)
    raise ValueError(f"unknown report format {format!r}")
