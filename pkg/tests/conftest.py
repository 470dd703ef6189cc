import pytest
from hypothesis import strategies as st

from huri import Transaction, TransactionDataset, UtilityTable, load_example

# Worked example items: item -> (external utility, units sold, total utility)
ITEM_TOTALS = {
    "A": (4, 21, 84), "B": (1, 28, 28), "C": (3, 21, 63), "D": (2, 12, 24),
    "E": (7, 23, 161), "F": (5, 27, 135), "G": (6, 10, 60), "H": (1, 13, 13),
    "I": (1, 34, 34), "J": (4, 27, 108), "K": (3, 15, 45), "L": (1, 14, 14),
    "M": (1, 50, 50), "N": (2, 40, 80), "O": (3, 14, 42), "P": (1, 18, 18),
    "Q": (1, 42, 42), "R": (1, 44, 44), "S": (1, 11, 11), "T": (0, 17, 0),
}

# Worked example rare itemsets at maxsup 40% with their utilities
RARE_ITEMSETS = {
    ("D",): 24, ("G",): 60, ("H",): 13, ("S",): 11,
    ("D", "G"): 84, ("D", "H"): 37, ("D", "S"): 35, ("G", "H"): 73, ("G", "S"): 71, ("H", "S"): 24,
    ("D", "G", "H"): 97, ("D", "G", "S"): 95, ("G", "H", "S"): 84, ("D", "H", "S"): 48,
    ("D", "G", "H", "S"): 108,
}

# Worked example high-utility listing as published (omits {D,H,S})
PUBLISHED_HIGH_UTILITY = {
    ("G",): 60, ("D", "G"): 84, ("G", "H"): 73, ("G", "S"): 71,
    ("D", "G", "H"): 97, ("D", "G", "S"): 95, ("G", "H", "S"): 84, ("D", "G", "H", "S"): 108,
}

# Worked example transactions: tid -> (customer_id, customer_type, transaction_profit)
TRANSACTION_PROFITS = [39, 44, 30, 47, 21, 10, 13, 35, 49, 49, 31, 40, 23, 71, 31, 2, 21, 41,
                  25, 17, 42, 13, 32, 17, 48, 19, 29, 30, 50, 13, 32, 13, 38, 9, 32]
PREMIUM_TIDS = {4, 9, 10, 14, 25, 29}


@pytest.fixture(scope="session")
def example():
    return load_example()


@pytest.fixture(scope="session")
def example_dataset(example):
    return example[0]


@pytest.fixture(scope="session")
def example_utilities(example):
    return example[1]


ITEMS = [chr(ord("a") + k) for k in range(8)]


@st.composite
def datasets(draw, items=ITEMS, max_transactions=12, max_quantity=4):
    """Small random dataset plus a full utility table."""
    n = draw(st.integers(1, max_transactions))
    txs = []
    for tid in range(1, n + 1):
        basket = draw(st.dictionaries(st.sampled_from(items), st.integers(1, max_quantity),
                                      min_size=1, max_size=len(items)))
        txs.append(Transaction(tid, basket))
    prices = draw(st.lists(st.integers(0, 9), min_size=len(items), max_size=len(items)))
    dataset = TransactionDataset(tuple(txs), tuple(items))
    return dataset, UtilityTable(dict(zip(items, prices)))


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        marker = _CRITERIA.get(report.nodeid)
        if marker is not None:
            marker["outcome"] = report.outcome


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            title = mark.args[1]
            callspec = getattr(item, "callspec", None)
            if callspec is not None:
                title += f" [{callspec.id}]"
            _CRITERIA[item.nodeid] = {"n": mark.args[0], "title": title, "outcome": "not run"}


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for entry in sorted(_CRITERIA.values(), key=lambda e: e["n"]):
        status = {"passed": "PASS", "failed": "FAIL"}.get(entry["outcome"], entry["outcome"].upper())
        terminalreporter.write_line(f"{status}  [{entry['n']}] {entry['title']}")
