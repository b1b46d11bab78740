"""Benchmark harness for hierarchical array storage formats.

Measures per-dataset create, write, open, and read times across pluggable
format adapters, with seeded deterministic payloads and verified read-back.
"""

from .adapters import (
    AdapterInfo,
    AdapterRegistry,
    AdapterUnavailableError,
    AdapterUsageError,
    FormatAdapter,
    StoreFormatError,
    dataset_name,
    default_registry,
)
from .config import ConfigError, WorkloadConfig, auto_test_name, parse_config
from .datagen import ArrayPayload, generate_payload, stream_seed
from .engine import RunError, TrialRecord, run_trials
from .report import render_chart
from .results import SummaryRow, SummaryTable, aggregate, from_csv, to_csv

__version__ = "0.1.0"

__all__ = [
    "AdapterInfo",
    "AdapterRegistry",
    "AdapterUnavailableError",
    "AdapterUsageError",
    "ArrayPayload",
    "ConfigError",
    "FormatAdapter",
    "RunError",
    "StoreFormatError",
    "SummaryRow",
    "SummaryTable",
    "TrialRecord",
    "WorkloadConfig",
    "aggregate",
    "auto_test_name",
    "dataset_name",
    "default_registry",
    "from_csv",
    "generate_payload",
    "parse_config",
    "render_chart",
    "run_trials",
    "stream_seed",
    "to_csv",
    "__version__",
]
