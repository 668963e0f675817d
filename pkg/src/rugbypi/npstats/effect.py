from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import DegenerateSample, SampleTooSmall

# (lower bound, label), ascending
SAWILOWSKY = (
    (0.01, "very small"),
    (0.2, "small"),
    (0.5, "medium"),
    (0.8, "large"),
    (1.2, "very large"),
    (2.0, "huge"),
)


@dataclass(frozen=True)
class EffectSize:
    r: float
    label: str

    @property
    def display(self) -> str:
        return f"{self.r:.2f}"


def effect_label(value: float) -> str:
    label = "negligible"
    for bound, name in SAWILOWSKY:
        if value >= bound:
            label = name
    return label


def effect_size_r(z: float, n_pairs: int) -> EffectSize:
    """r = |z| / sqrt(n_pairs), labelled on Sawilowsky's scale."""
    if n_pairs < 1:
        raise ValueError("n_pairs must be at least 1")
    r = abs(z) / math.sqrt(n_pairs)
    return EffectSize(r, effect_label(r))


def cohens_d_paired(x: Sequence[float], y: Sequence[float]) -> float:
    """Mean paired difference over its sample standard deviation."""
    if len(x) != len(y):
        raise ValueError("paired samples differ in length")
    n = len(x)
    if n < 2:
        raise SampleTooSmall("paired Cohen's d needs at least 2 pairs")
    diffs = [float(a) - float(b) for a, b in zip(x, y)]
    mean = math.fsum(diffs) / n
    var = math.fsum((d - mean) ** 2 for d in diffs) / (n - 1)
    if var <= 0:
        raise DegenerateSample("paired differences have zero variance")
    return mean / math.sqrt(var)


def significance_stars(p: float) -> str:
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if p <= 0.01:
        return "***"
    if p <= 0.05:
        return "**"
    if p <= 0.10:
        return "*"
    return ""
