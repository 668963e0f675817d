"""Non-parametric statistics for paired winner/loser comparisons."""

from .analysis import PiTestRow, StatsConfig, analyze_indicator, median_sign
from .descriptive import DescriptiveStats, descriptive
from .effect import (
    EffectSize,
    cohens_d_paired,
    effect_label,
    effect_size_r,
    significance_stars,
)
from .shapiro import shapiro_wilk
from .wilcoxon import (
    WilcoxonResult,
    average_ranks,
    exact_signed_rank_p,
    signed_rank_tails,
    wilcoxon_signed_rank,
)

__all__ = [
    "DescriptiveStats",
    "EffectSize",
    "PiTestRow",
    "StatsConfig",
    "WilcoxonResult",
    "analyze_indicator",
    "average_ranks",
    "cohens_d_paired",
    "descriptive",
    "effect_label",
    "effect_size_r",
    "exact_signed_rank_p",
    "median_sign",
    "shapiro_wilk",
    "signed_rank_tails",
    "significance_stars",
    "wilcoxon_signed_rank",
]
