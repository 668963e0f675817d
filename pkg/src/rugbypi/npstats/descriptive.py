from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import EmptySample


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    median: float
    min: float
    max: float
    stddev: Optional[float]  # sample (n - 1); None when n < 2


def descriptive(values: Sequence[float]) -> DescriptiveStats:
    values = [float(v) for v in values]
    if not values:
        raise EmptySample("descriptive statistics need at least one value")
    n = len(values)
    mean = math.fsum(values) / n
    sd = statistics.stdev(values) if n > 1 else None
    return DescriptiveStats(n, mean, statistics.median(values), min(values), max(values), sd)
