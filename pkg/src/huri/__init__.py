"""High-utility rare itemset mining and profit-based customer segmentation."""

from .dataset import (Customer, DataError, Issue, Transaction, TransactionDataset, UtilityTable,
                      emit_customers, emit_transactions, emit_utilities, internal_utility, load,
                      load_example, parse_customers, parse_transactions, parse_utilities,
                      validate)
from .mining import (Itemset, MiningConfig, MiningResult, RareItemsetEntry, filter_high_utility,
                     generate_candidates, item_support, item_total_utility, itemset_support,
                     itemset_utility, mine, mine_rare_itemsets, rare_singletons)
from .segmentation import (SegmentationReport, TransactionProfit, aggregate_customers,
                           classify_transactions, transaction_utility)

__version__ = "0.1.0"
