"""Dataset ingestion, batch execution, and the command-line interface."""

from .batch import (
    ALL_CONJECTURES, RunConfig, curve_symbol, dataset_digest, pair_report,
    read_report, run_batch, select_entries, summarize, write_report,
)
from .dataset import (
    DatasetEntry, DatasetError, enumerate_pairs, parse_dataset, split_primes,
    validate_entry,
)

__all__ = [
    "ALL_CONJECTURES", "DatasetEntry", "DatasetError", "RunConfig",
    "curve_symbol", "dataset_digest", "enumerate_pairs", "pair_report",
    "parse_dataset", "read_report", "run_batch", "select_entries",
    "split_primes", "summarize", "validate_entry", "write_report",
]
