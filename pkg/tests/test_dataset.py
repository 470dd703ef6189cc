from decimal import Decimal

import pytest
from hypothesis import given, settings

from huri import (DataError, Transaction, TransactionDataset, UtilityTable, emit_customers,
                  emit_transactions, emit_utilities, internal_utility, parse_customers,
                  parse_transactions, parse_utilities, validate)
from huri.dataset import FIXTURE_DIR

from conftest import ITEM_TOTALS, datasets


def test_wide_row_keeps_only_nonzero_cells(example_dataset):
    t16 = next(t for t in example_dataset if t.tid == 16)
    assert dict(t16.items) == {"M": 2}


def test_wide_all_zero_row_rejected():
    with pytest.raises(DataError, match="line 3: transaction 2 is empty"):
        parse_transactions("tid,A,B\n1,1,0\n2,0,0\n", "wide")


def test_long_rows_group_by_tid():
    ds = parse_transactions("tid,item,quantity\n1,A,1\n1,B,2\n", "long")
    assert len(ds) == 1
    assert ds.transactions[0].tid == 1
    assert dict(ds.transactions[0].items) == {"A": 1, "B": 2}


def test_crlf_accepted():
    ds = parse_transactions("tid,item,quantity\r\n1,A,1\r\n2,B,3\r\n", "long")
    assert [dict(t.items) for t in ds] == [{"A": 1}, {"B": 3}]


@pytest.mark.parametrize("text, fmt, message", [
    ("tid,A,B\n1,1\n", "wide", "line 2: expected 3 columns"),
    ("tid,A,B\n1,1,x\n", "wide", "line 2: quantity 'x' is not an integer"),
    ("tid,A,B\n1,1,-2\n", "wide", "line 2: negative quantity"),
    ("tid,A,B\n1,1,0\n1,0,1\n", "wide", "line 3: duplicate tid 1"),
    ("tid,A,A\n1,1,0\n", "wide", "line 1: duplicate item column 'A'"),
    ("tid,item,quantity\n1,A,1.5\n", "long", "line 2: quantity"),
    ("tid,item,quantity\n1,A\n", "long", "line 2: expected 3 columns"),
    ("tid,item,quantity\n1,A,1\n1,A,2\n", "long", "line 3: item 'A' repeated"),
    ("tid,item,quantity\n0,A,1\n", "long", "line 2: tid must be positive"),
    ("tid,item,quantity\n1,A,0\n", "long", "line 2: transaction 1 is empty"),
])
def test_parse_errors_carry_line_numbers(text, fmt, message):
    with pytest.raises(DataError, match=message):
        parse_transactions(text, fmt)


def test_parse_utilities_example_values(example_utilities):
    assert example_utilities["E"] == 7
    assert example_utilities["T"] == 0
    assert {k: v[0] for k, v in ITEM_TOTALS.items()} == dict(example_utilities.entries)


def test_parse_utilities_decimal_is_exact():
    table = parse_utilities("item,external_utility\nA,0.1\nB,2.50\n")
    assert table["A"] == Decimal("0.1")
    assert table["B"] == Decimal("2.5")
    assert 3 * table["A"] == Decimal("0.3")


@pytest.mark.parametrize("row, message", [
    ("E,-1", "negative utility"),
    ("E,abc", "not a number"),
    ("E,nan", "not a finite number"),
])
def test_parse_utilities_rejects_bad_values(row, message):
    with pytest.raises(DataError, match=message):
        parse_utilities(f"item,external_utility\n{row}\n")


def test_parse_utilities_rejects_duplicates():
    with pytest.raises(DataError, match="line 3: duplicate item 'E'"):
        parse_utilities("item,external_utility\nE,7\nE,8\n")


def test_utility_table_rejects_negative():
    with pytest.raises(DataError):
        UtilityTable({"A": -1})


def test_fixture_without_customers_has_no_issues():
    text = (FIXTURE_DIR / "transactions_wide.csv").read_text()
    utilities = parse_utilities((FIXTURE_DIR / "utilities.csv").read_text())
    assert validate(parse_transactions(text, "wide"), utilities) == []


def test_missing_utility_is_one_error():
    ds = TransactionDataset((Transaction(1, {"A": 1, "Z": 2}),))
    issues = validate(ds, UtilityTable({"A": 1}))
    assert len(issues) == 1
    assert issues[0].severity == "error"
    assert "'Z'" in issues[0].message


def test_shared_customer_names_are_warnings(example_dataset, example_utilities):
    issues = validate(example_dataset, example_utilities)
    assert issues
    assert {i.severity for i in issues} == {"warning"}
    cj = [i for i in issues if "'CJ'" in i.message]
    assert len(cj) == 1 and "c10, c16, c28" in cj[0].message


def test_internal_utility_matches_table_2(example_dataset):
    assert internal_utility(example_dataset, "A") == 21
    assert internal_utility(example_dataset, "D") == 12
    for item, (_, units, _) in ITEM_TOTALS.items():
        assert internal_utility(example_dataset, item) == units


def test_internal_utility_declared_but_unsold_item_is_zero(example_dataset):
    assert internal_utility(example_dataset.with_items(["X"]), "X") == 0


def test_internal_utility_unknown_item(example_dataset):
    with pytest.raises(KeyError):
        internal_utility(example_dataset, "X")


def test_customers_directory():
    directory = parse_customers("tid,customer_id,customer_name\n1,c01,CA\n2,c02,\n")
    assert directory[1].customer_id == "c01" and directory[1].customer_name == "CA"
    assert directory[2].customer_name is None
    with pytest.raises(DataError, match="duplicate tid"):
        parse_customers("tid,customer_id,customer_name\n1,c01,CA\n1,c02,CB\n")


def test_long_and_wide_fixture_agree():
    wide = parse_transactions((FIXTURE_DIR / "transactions_wide.csv").read_text(), "wide")
    long = parse_transactions((FIXTURE_DIR / "transactions.csv").read_text(), "long")
    assert wide.transactions == long.transactions


def test_transaction_is_immutable():
    t = Transaction(1, {"A": 1})
    with pytest.raises(TypeError):
        t.items["A"] = 5


@settings(max_examples=200, deadline=None)
@given(datasets())
def test_round_trip_both_formats(data):
    dataset, utilities = data
    assert parse_transactions(emit_transactions(dataset, "wide"), "wide") == dataset
    long = parse_transactions(emit_transactions(dataset, "long"), "long")
    assert long.transactions == dataset.transactions
    assert parse_utilities(emit_utilities(utilities)) == utilities


def test_customer_round_trip(example_dataset):
    directory = parse_customers(emit_customers(example_dataset))
    assert example_dataset.with_customers(directory) == example_dataset


@settings(max_examples=200, deadline=None)
@given(datasets())
def test_double_counting_identity(data):
    dataset, _ = data
    by_item = sum(internal_utility(dataset, i) for i in dataset.universe)
    by_transaction = sum(sum(t.items.values()) for t in dataset)
    assert by_item == by_transaction
