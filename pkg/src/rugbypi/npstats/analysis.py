"""One row of the winner-vs-loser comparison table."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import AllZeroDifferences
from .descriptive import DescriptiveStats, descriptive
from .effect import EffectSize, effect_size_r, significance_stars
from .wilcoxon import EXACT_THRESHOLD, WilcoxonResult, wilcoxon_signed_rank


@dataclass(frozen=True)
class StatsConfig:
    mode: str = "auto"
    continuity: bool = True
    exact_threshold: int = EXACT_THRESHOLD


@dataclass(frozen=True)
class PiTestRow:
    name: str
    n_pairs: int
    winner: Optional[DescriptiveStats]
    loser: Optional[DescriptiveStats]
    p_two_sided: Optional[float]
    stars: str
    effect: Optional[EffectSize]
    median_sign: str  # "+", "-", "=" or "" when there is no data
    test: Optional[WilcoxonResult] = field(default=None, compare=False)


def median_sign(winner_median: float, loser_median: float) -> str:
    if winner_median > loser_median:
        return "+"
    if winner_median < loser_median:
        return "-"
    return "="


def analyze_indicator(
    name: str,
    winner_values: Sequence[Optional[float]],
    loser_values: Sequence[Optional[float]],
    config: StatsConfig = StatsConfig(),
) -> PiTestRow:
    if len(winner_values) != len(loser_values):
        raise ValueError(f"{name}: winner and loser columns differ in length")
    pairs = [(w, l) for w, l in zip(winner_values, loser_values) if w is not None and l is not None]
    if not pairs:
        return PiTestRow(name, 0, None, None, None, "", None, "")
    wins = [w for w, _ in pairs]
    losses = [l for _, l in pairs]
    wstats, lstats = descriptive(wins), descriptive(losses)
    sign = median_sign(wstats.median, lstats.median)
    try:
        test = wilcoxon_signed_rank(
            wins, losses, config.mode, config.continuity, config.exact_threshold
        )
    except AllZeroDifferences:
        return PiTestRow(name, len(pairs), wstats, lstats, None, "", None, sign)
    return PiTestRow(
        name,
        len(pairs),
        wstats,
        lstats,
        test.p_two_sided,
        significance_stars(test.p_two_sided),
        effect_size_r(test.z_normal, len(pairs)),
        sign,
        test,
    )
