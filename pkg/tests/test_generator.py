import pytest

from huri import MiningConfig, Transaction, rare_singletons, validate
from huri.dataset import emit_transactions, parse_transactions
from huri.generator import GenParams, SplitMix64, generate, write


def test_splitmix_reference_values():
    # reference outputs of SplitMix64 seeded with 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_deterministic():
    a = generate(GenParams(n_transactions=35, n_items=20, seed=7))
    b = generate(GenParams(n_transactions=35, n_items=20, seed=7))
    assert a == b
    c = generate(GenParams(n_transactions=35, n_items=20, seed=8))
    assert a[0] != c[0]


def test_write_is_byte_identical(tmp_path):
    params = GenParams(n_transactions=35, n_items=20, seed=7)
    first = write(params, tmp_path / "a")
    second = write(params, tmp_path / "b")
    for key in first:
        assert first[key].read_bytes() == second[key].read_bytes()


def test_rare_pool_assignment():
    assert GenParams(n_items=20, rare_item_fraction=0).rare_pool == []
    assert GenParams(n_items=20, rare_item_fraction=0.25).rare_pool == ["I16", "I17", "I18", "I19", "I20"]
    assert len(GenParams(n_items=100, rare_item_fraction=0.1).rare_pool) == 10


def test_ranges():
    params = GenParams(n_transactions=200, n_items=15, max_quantity=3, utility_range=(2, 4), seed=3)
    dataset, utilities, customers = generate(params)
    assert all(1 <= q <= 3 for t in dataset for q in t.items.values())
    assert all(2 <= v <= 4 for v in utilities.entries.values())
    assert all(t.items for t in dataset)
    assert set(customers) == {t.tid for t in dataset}


def test_rare_pool_is_rare_in_expectation():
    params = GenParams(n_transactions=2000, n_items=20, rare_item_fraction=0.2, seed=11)
    dataset, _, _ = generate(params)
    rare = {tuple(e.itemset)[0] for e in rare_singletons(dataset, MiningConfig(0.4))}
    assert rare == set(params.rare_pool)


def test_large_dataset_validates():
    params = GenParams(n_transactions=10_000, n_items=100, rare_item_fraction=0.1, seed=1)
    dataset, utilities, _ = generate(params)
    assert [i for i in validate(dataset, utilities) if i.severity == "error"] == []


def test_generated_round_trip():
    dataset, _, _ = generate(GenParams(seed=5))
    again = parse_transactions(emit_transactions(dataset, "long"), "long")
    # customer fields live in customers.csv, not the transactions file
    assert again.transactions == tuple(Transaction(t.tid, t.items) for t in dataset)


@pytest.mark.parametrize("kwargs", [
    {"n_items": 0}, {"n_transactions": 0}, {"rare_item_fraction": 1.5},
    {"max_quantity": 0}, {"utility_range": (5, 2)}, {"utility_range": (-1, 2)},
])
def test_invalid_params(kwargs):
    with pytest.raises(ValueError):
        GenParams(**kwargs)
