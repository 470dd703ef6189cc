"""Command-line front end: ``huri mine | segment | verify | gen``.

Exit codes: 0 success, 1 data validation failure, 2 usage error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import mining, report
from .dataset import DataError, load, validate
from .generator import GenParams, write
from .mining import MiningConfig
from .oracle import OracleBoundError, diff, enumerate_rare_itemsets
from .segmentation import POLICIES, classify_transactions

EXIT_OK, EXIT_DATA, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _number(text: str):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    return int(value) if value.is_integer() and "." not in text and "e" not in text.lower() else value


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--transactions", required=True, type=Path,
                   help="transactions file, long (tid,item,quantity) or wide layout")
    p.add_argument("--utilities", required=True, type=Path, help="item,external_utility file")
    p.add_argument("--customers", type=Path, help="optional tid,customer_id,customer_name file")
    p.add_argument("--max-support", type=_number, default=0.40,
                   help="maximum support as a fraction of the transaction count (default 0.40)")
    p.add_argument("--max-support-abs", type=_number,
                   help="absolute maximum support; overrides --max-support")
    p.add_argument("--min-utility", type=_number, default=45,
                   help="high-utility threshold, compared with > (default 45)")
    p.add_argument("--support-mode", choices=mining.SUPPORT_MODES, default="quantity")
    p.add_argument("--utility-mode", choices=mining.UTILITY_MODES, default="additive")


def _add_segment_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--customer-threshold", type=_number, default=45,
                   help="profit above which a transaction is premium (default 45)")
    p.add_argument("--profit-scope", choices=("all", "huri"), default="all",
                   help="'huri' counts only items in high-utility rare itemsets (beyond the base algorithm)")
    p.add_argument("--aggregate", choices=POLICIES, default="any_premium",
                   help="how transaction classes roll up to customers")
    p.add_argument("--customer-total-threshold", type=_number,
                   help="total-profit cutoff for --aggregate total_profit")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=report.FORMATS, default="json")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="huri", description="High-utility rare itemset mining "
                                     "and customer segmentation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="rare and high-utility rare itemsets")
    _add_input_args(p)
    _add_output_args(p)

    p = sub.add_parser("segment", help="transaction profits and premium/general classes")
    _add_input_args(p)
    _add_segment_args(p)
    _add_output_args(p)

    p = sub.add_parser("verify", help="check the miner and segmenter against brute force")
    _add_input_args(p)
    _add_segment_args(p)

    p = sub.add_parser("gen", help="write a deterministic synthetic dataset")
    p.add_argument("--transactions", type=int, default=35, help="number of transactions")
    p.add_argument("--items", type=int, default=20, help="number of items")
    p.add_argument("--rare-fraction", type=float, default=0.2)
    p.add_argument("--max-quantity", type=int, default=5)
    p.add_argument("--utility-low", type=int, default=0)
    p.add_argument("--utility-high", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    return parser


def _mining_config(args) -> MiningConfig:
    try:
        return MiningConfig(
            max_support_fraction=args.max_support,
            min_utility=args.min_utility,
            support_mode=args.support_mode,
            utility_mode=args.utility_mode,
            max_support_abs=args.max_support_abs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(args):
    for path in (args.transactions, args.utilities, args.customers):
        if path is not None and not path.is_file():
            raise UsageError(f"no such file: {path}")
    dataset, utilities = load(args.transactions, args.utilities, args.customers)
    issues = validate(dataset, utilities)
    for issue in issues:
        print(issue, file=sys.stderr)
    if any(i.severity == "error" for i in issues):
        raise DataError("input validation failed")
    return dataset, utilities


def _segment(args, dataset, utilities, result):
    if args.aggregate == "total_profit" and args.customer_total_threshold is None:
        raise UsageError("--aggregate total_profit needs --customer-total-threshold")
    if args.customer_threshold < 0:
        raise UsageError("--customer-threshold must be non-negative")
    scope = None
    if args.profit_scope == "huri":
        scope = {item for e in result.high_utility for item in e.itemset}
    return classify_transactions(dataset, utilities, threshold=args.customer_threshold,
                                 policy=args.aggregate,
                                 total_threshold=args.customer_total_threshold,
                                 profit_items=scope)


def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")


def run_mine(args) -> int:
    config = _mining_config(args)
    dataset, utilities = _load(args)
    result = mining.mine(dataset, utilities, config)
    _emit(args, report.render(report.build(result), args.format))
    return EXIT_OK


def run_segment(args) -> int:
    config = _mining_config(args)
    dataset, utilities = _load(args)
    result = mining.mine(dataset, utilities, config)
    seg = _segment(args, dataset, utilities, result)
    doc = report.build(result if args.profit_scope == "huri" else None, seg, config.as_dict())
    if args.profit_scope != "huri":
        doc["dataset_stats"] = dict(result.dataset_stats)
    _emit(args, report.render(doc, args.format))
    return EXIT_OK


def run_verify(args) -> int:
    config = _mining_config(args)
    if args.profit_scope == "huri":
        # the oracle only knows whole-transaction profit
        raise UsageError("verify supports --profit-scope all only")
    dataset, utilities = _load(args)
    result = mining.mine_rare_itemsets(dataset, utilities, config)
    seg = _segment(args, dataset, utilities, mining.filter_high_utility(result, config.min_utility))
    try:
        expected = enumerate_rare_itemsets(dataset, utilities, config, args.customer_threshold)
    except OracleBoundError as exc:
        raise UsageError(str(exc)) from None
    delta = diff(result, seg, expected)
    if delta:
        print(json.dumps(delta.as_dict(), indent=2))
        return EXIT_MISMATCH
    print(f"verify: OK ({len(result.rare)} rare itemsets, "
          f"{len(seg.premium_tids)} premium transactions)")
    return EXIT_OK


def run_gen(args) -> int:
    try:
        params = GenParams(
            n_transactions=args.transactions, n_items=args.items,
            rare_item_fraction=args.rare_fraction, max_quantity=args.max_quantity,
            utility_range=(args.utility_low, args.utility_high), seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    paths = write(params, args.out)
    for path in paths.values():
        print(path)
    return EXIT_OK


COMMANDS = {"mine": run_mine, "segment": run_segment, "verify": run_verify, "gen": run_gen}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"huri {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"huri {args.command}: invalid data: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
