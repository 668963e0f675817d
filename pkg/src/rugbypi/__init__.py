"""Winner/loser analysis of rugby match performance indicators.

Two tracks over the same data: Wilcoxon signed-rank tests with effect
sizes on winner/loser pairs, and RIPPER-style decision rules on
per-team rows.
"""

from .layouts import LongDataset, PairedDataset, build_long, build_paired
from .records import (
    AugmentedRecord,
    TeamMatchRecord,
    ValidationReport,
    augment,
    derive_indicators,
    parse_records,
    validate_turnover_consistency,
)
from .schema import SCHEMA, IndicatorSchema

__version__ = "0.1.0"

__all__ = [
    "AugmentedRecord",
    "IndicatorSchema",
    "LongDataset",
    "PairedDataset",
    "SCHEMA",
    "TeamMatchRecord",
    "ValidationReport",
    "augment",
    "build_long",
    "build_paired",
    "derive_indicators",
    "parse_records",
    "validate_turnover_consistency",
]
