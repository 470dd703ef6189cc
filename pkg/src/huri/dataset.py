"""Transaction data, external utilities and customer identities.

Two transaction layouts are understood:

* ``long``: header ``tid,item,quantity``, one row per (transaction, item) pair.
* ``wide``: header ``tid,<item1>,<item2>,...``, one row per transaction, a
  zero cell meaning the item was not bought.

Quantities are exact integers. External utilities are parsed as decimals and
kept as ``int`` whenever they are integral, so every downstream sum is exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, TextIO, Union

Number = Union[int, Decimal]

FORMATS = ("long", "wide")
FIXTURE_DIR = Path(__file__).resolve().parents[2] / "fixtures" / "paper"


class DataError(ValueError):
    """Raised when an input file violates its format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Transaction:
    tid: int
    items: Mapping[str, int]
    customer_id: str | None = None
    customer_name: str | None = None

    def __post_init__(self):
        if self.tid < 1:
            raise DataError(f"tid must be positive, got {self.tid}")
        if not self.items:
            raise DataError(f"transaction {self.tid} is empty")
        for item, qty in self.items.items():
            if not isinstance(qty, int) or qty < 1:
                raise DataError(f"transaction {self.tid}: quantity of {item!r} must be a positive integer")
        object.__setattr__(self, "items", MappingProxyType(dict(self.items)))

    def quantity(self, item: str) -> int:
        return self.items.get(item, 0)

    def __eq__(self, other):
        if not isinstance(other, Transaction):
            return NotImplemented
        return (self.tid, dict(self.items), self.customer_id, self.customer_name) == (
            other.tid, dict(other.items), other.customer_id, other.customer_name)

    def __hash__(self):
        return hash((self.tid, frozenset(self.items.items())))


@dataclass(frozen=True)
class Customer:
    customer_id: str
    customer_name: str | None = None


@dataclass(frozen=True)
class TransactionDataset:
    """Ordered, immutable collection of transactions plus the item universe."""

    transactions: tuple[Transaction, ...]
    universe: tuple[str, ...] = ()

    def __post_init__(self):
        txs = tuple(self.transactions)
        seen_tids = set()
        universe = list(dict.fromkeys(self.universe))
        known = set(universe)
        for t in txs:
            if t.tid in seen_tids:
                raise DataError(f"duplicate tid {t.tid}")
            seen_tids.add(t.tid)
            for item in t.items:
                if item not in known:
                    known.add(item)
                    universe.append(item)
        for item in universe:
            _check_item_id(item)
        object.__setattr__(self, "transactions", txs)
        object.__setattr__(self, "universe", tuple(universe))

    def __len__(self):
        return len(self.transactions)

    def __iter__(self):
        return iter(self.transactions)

    def with_items(self, items: Iterable[str]) -> "TransactionDataset":
        """Return a copy whose universe also declares ``items``."""
        return TransactionDataset(self.transactions, self.universe + tuple(items))

    def with_customers(self, customers: Mapping[int, Customer]) -> "TransactionDataset":
        txs = []
        for t in self.transactions:
            c = customers.get(t.tid)
            if c is None:
                txs.append(t)
            else:
                txs.append(Transaction(t.tid, t.items, c.customer_id, c.customer_name))
        return TransactionDataset(tuple(txs), self.universe)

    @property
    def has_customers(self) -> bool:
        return any(t.customer_id is not None for t in self.transactions)


@dataclass(frozen=True)
class UtilityTable:
    """Per-unit profit (external utility) of each item."""

    entries: Mapping[str, Number] = field(default_factory=dict)

    def __post_init__(self):
        for item, value in self.entries.items():
            _check_item_id(item)
            if value < 0:
                raise DataError(f"external utility of {item!r} is negative")
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __getitem__(self, item: str) -> Number:
        try:
            return self.entries[item]
        except KeyError:
            raise KeyError(f"no external utility for item {item!r}") from None

    def __contains__(self, item) -> bool:
        return item in self.entries

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, UtilityTable):
            return NotImplemented
        return dict(self.entries) == dict(other.entries)

    def scaled(self, factor: Number) -> "UtilityTable":
        return UtilityTable({k: v * factor for k, v in self.entries.items()})


@dataclass(frozen=True)
class Issue:
    severity: str  # "error" | "warning"
    message: str

    def __str__(self):
        return f"{self.severity}: {self.message}"


def _check_item_id(item) -> None:
    if not isinstance(item, str) or not item.strip() or item != item.strip():
        raise DataError(f"invalid item id {item!r}")
    if any(ch in item for ch in ",\r\n"):
        raise DataError(f"item id {item!r} contains a delimiter")


def _read(source: str | TextIO) -> str:
    return source if isinstance(source, str) else source.read()


def _rows(text: str):
    """Yield (line_number, fields) for each non-blank CSV row."""
    reader = csv.reader(io.StringIO(text.replace("\r\n", "\n")))
    for fields in reader:
        if not fields or all(not f.strip() for f in fields):
            continue
        yield reader.line_num, [f.strip() for f in fields]


def _parse_int(text: str, what: str, line: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise DataError(f"{what} {text!r} is not an integer", line) from None
    return value


def _parse_tid(text: str, line: int) -> int:
    tid = _parse_int(text, "tid", line)
    if tid < 1:
        raise DataError(f"tid must be positive, got {tid}", line)
    return tid


def _parse_quantity(text: str, line: int) -> int:
    qty = _parse_int(text, "quantity", line)
    if qty < 0:
        raise DataError(f"negative quantity {qty}", line)
    return qty


def parse_number(text: str) -> Number:
    """Parse an exact non-negative decimal; integral values come back as ``int``."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise DataError(f"{text!r} is not a number") from None
    if not value.is_finite():
        raise DataError(f"{text!r} is not a finite number")
    if value == value.to_integral_value():
        return int(value)
    return value


def parse_transactions(source: str | TextIO, format: str = "wide") -> TransactionDataset:
    """Parse transactions in ``long`` or ``wide`` layout, preserving row order."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    rows = _rows(_read(source))
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise DataError("empty input") from None
    if format == "wide":
        return _parse_wide(header, header_line, rows)
    return _parse_long(header, header_line, rows)


def _parse_wide(header, header_line, rows) -> TransactionDataset:
    if len(header) < 2 or header[0] != "tid":
        raise DataError("wide header must be 'tid,<item1>,<item2>,...'", header_line)
    items = header[1:]
    seen = set()
    for item in items:
        if item in seen:
            raise DataError(f"duplicate item column {item!r}", header_line)
        try:
            _check_item_id(item)
        except DataError as exc:
            raise DataError(str(exc), header_line) from None
        seen.add(item)
    txs = []
    tids = set()
    for line, fields in rows:
        if len(fields) != len(header):
            raise DataError(f"expected {len(header)} columns, got {len(fields)}", line)
        tid = _parse_tid(fields[0], line)
        if tid in tids:
            raise DataError(f"duplicate tid {tid}", line)
        tids.add(tid)
        basket = {}
        for item, cell in zip(items, fields[1:]):
            qty = _parse_quantity(cell, line)
            if qty:
                basket[item] = qty
        if not basket:
            raise DataError(f"transaction {tid} is empty", line)
        txs.append(Transaction(tid, basket))
    return TransactionDataset(tuple(txs), tuple(items))


def _parse_long(header, header_line, rows) -> TransactionDataset:
    if header != ["tid", "item", "quantity"]:
        raise DataError("long header must be 'tid,item,quantity'", header_line)
    baskets: dict[int, dict[str, int]] = {}
    first_line: dict[int, int] = {}
    for line, fields in rows:
        if len(fields) != 3:
            raise DataError(f"expected 3 columns, got {len(fields)}", line)
        tid = _parse_tid(fields[0], line)
        item = fields[1]
        try:
            _check_item_id(item)
        except DataError as exc:
            raise DataError(str(exc), line) from None
        qty = _parse_quantity(fields[2], line)
        basket = baskets.setdefault(tid, {})
        first_line.setdefault(tid, line)
        if item in basket:
            raise DataError(f"item {item!r} repeated in transaction {tid}", line)
        if qty:
            basket[item] = qty
    txs = []
    for tid, basket in baskets.items():
        if not basket:
            raise DataError(f"transaction {tid} is empty", first_line[tid])
        txs.append(Transaction(tid, basket))
    return TransactionDataset(tuple(txs))


def parse_utilities(source: str | TextIO) -> UtilityTable:
    rows = _rows(_read(source))
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise DataError("empty input") from None
    if header != ["item", "external_utility"]:
        raise DataError("utilities header must be 'item,external_utility'", header_line)
    entries: dict[str, Number] = {}
    for line, fields in rows:
        if len(fields) != 2:
            raise DataError(f"expected 2 columns, got {len(fields)}", line)
        item, raw = fields
        try:
            _check_item_id(item)
            value = parse_number(raw)
        except DataError as exc:
            raise DataError(str(exc), line) from None
        if value < 0:
            raise DataError(f"negative utility {raw} for item {item!r}", line)
        if item in entries:
            raise DataError(f"duplicate item {item!r}", line)
        entries[item] = value
    return UtilityTable(entries)


def parse_customers(source: str | TextIO) -> dict[int, Customer]:
    """Parse a ``tid,customer_id,customer_name`` directory keyed by tid."""
    rows = _rows(_read(source))
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise DataError("empty input") from None
    if header[:2] != ["tid", "customer_id"] or len(header) > 3 or (
            len(header) == 3 and header[2] != "customer_name"):
        raise DataError("customers header must be 'tid,customer_id,customer_name'", header_line)
    directory: dict[int, Customer] = {}
    for line, fields in rows:
        if len(fields) != len(header):
            raise DataError(f"expected {len(header)} columns, got {len(fields)}", line)
        tid = _parse_tid(fields[0], line)
        if tid in directory:
            raise DataError(f"duplicate tid {tid}", line)
        if not fields[1]:
            raise DataError("empty customer_id", line)
        name = fields[2] if len(fields) == 3 and fields[2] else None
        directory[tid] = Customer(fields[1], name)
    return directory


def validate(dataset: TransactionDataset, utilities: UtilityTable) -> list[Issue]:
    """Check a dataset against its utility table. Issues are returned, never raised."""
    issues = []
    if not dataset.transactions:
        issues.append(Issue("error", "dataset has no transactions"))
    missing = [item for item in dataset.universe if item not in utilities]
    for item in missing:
        issues.append(Issue("error", f"item {item!r} has no external utility"))
    for item, value in utilities.entries.items():
        if value < 0:
            issues.append(Issue("error", f"external utility of {item!r} is negative"))

    ids_by_name: dict[str, list[str]] = {}
    for t in dataset.transactions:
        if t.customer_id is not None and t.customer_name:
            ids = ids_by_name.setdefault(t.customer_name, [])
            if t.customer_id not in ids:
                ids.append(t.customer_id)
    for name, ids in ids_by_name.items():
        if len(ids) > 1:
            issues.append(Issue(
                "warning", f"customer name {name!r} is shared by ids {', '.join(ids)}"))
    return issues


def internal_utility(dataset: TransactionDataset, item: str) -> int:
    """Total units of ``item`` sold over the whole dataset."""
    if item not in dataset.universe:
        raise KeyError(f"unknown item {item!r}")
    return sum(t.quantity(item) for t in dataset.transactions)


def emit_transactions(dataset: TransactionDataset, format: str = "wide") -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if format == "wide":
        writer.writerow(["tid", *dataset.universe])
        for t in dataset.transactions:
            writer.writerow([t.tid, *(t.quantity(i) for i in dataset.universe)])
    elif format == "long":
        writer.writerow(["tid", "item", "quantity"])
        for t in dataset.transactions:
            for item, qty in t.items.items():
                writer.writerow([t.tid, item, qty])
    else:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    return out.getvalue()


def emit_utilities(utilities: UtilityTable) -> str:
    lines = ["item,external_utility"]
    lines += [f"{item},{value}" for item, value in utilities.entries.items()]
    return "\n".join(lines) + "\n"


def emit_customers(dataset: TransactionDataset) -> str:
    lines = ["tid,customer_id,customer_name"]
    for t in dataset.transactions:
        if t.customer_id is not None:
            lines.append(f"{t.tid},{t.customer_id},{t.customer_name or ''}")
    return "\n".join(lines) + "\n"


def load(transactions: str | Path, utilities: str | Path,
         customers: str | Path | None = None,
         format: str | None = None) -> tuple[TransactionDataset, UtilityTable]:
    """Read files from disk; the layout is sniffed from the header when ``format`` is None."""
    text = Path(transactions).read_text(encoding="utf-8")
    if format is None:
        first = text.lstrip().split("\n", 1)[0].strip()
        format = "long" if first.replace(" ", "") == "tid,item,quantity" else "wide"
    dataset = parse_transactions(text, format)
    table = parse_utilities(Path(utilities).read_text(encoding="utf-8"))
    dataset = dataset.with_items(table)
    if customers is not None:
        dataset = dataset.with_customers(parse_customers(Path(customers).read_text(encoding="utf-8")))
    return dataset, table


def load_example(with_customers: bool = True) -> tuple[TransactionDataset, UtilityTable]:
    """The 35-transaction, 20-item worked example bundled under ``fixtures/paper``."""
    return load(
        FIXTURE_DIR / "transactions_wide.csv",
        FIXTURE_DIR / "utilities.csv",
        FIXTURE_DIR / "customers.csv" if with_customers else None,
        format="wide",
    )
