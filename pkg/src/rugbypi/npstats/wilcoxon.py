"""Wilcoxon signed-rank test for paired samples.

Zero differences are dropped before ranking. Tied absolute differences
get average ranks. The exact null distribution is built by dynamic
programming over subset sums of the ranks {1..n}. The normal
approximation uses the tie-corrected variance and an optional
continuity correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ..errors import AllZeroDifferences, ExactWithTies, LengthMismatch, OutOfRange

MODES = ("auto", "exact", "normal_approx")
EXACT_THRESHOLD = 50
MAX_EXACT_N = 1023
# int64 holds every subset-sum count up to this n
_MAX_INTEGER_N = 62


@dataclass(frozen=True)
class WilcoxonResult:
    w_statistic: float
    n_effective: int
    z: Optional[float]  # None for the exact method
    p_two_sided: float
    method: str  # "exact" | "normal_approx"
    tie_corrected: bool
    continuity_corrected: bool
    # normal deviate with the same corrections, available for every method
    # so an effect size can always be formed
    z_normal: float = 0.0
    n_zeros: int = 0
    has_ties: bool = False


def average_ranks(values: Sequence[float]) -> tuple[list[float], list[int]]:
    """Ranks 1..n with ties averaged, plus the size of every tie group."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    groups = []
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j + 2) / 2.0
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        groups.append(j - i + 1)
        i = j + 1
    return ranks, groups


@lru_cache(maxsize=64)
def _null_counts(n: int) -> np.ndarray:
    """Number of sign patterns giving each rank-sum 0..n(n+1)/2, exact integers."""
    counts = np.zeros(n * (n + 1) // 2 + 1, dtype=np.int64)
    counts[0] = 1
    top = 0
    for k in range(1, n + 1):
        counts[k : top + k + 1] += counts[: top + 1].copy()
        top += k
    return counts


@lru_cache(maxsize=16)
def _null_pmf(n: int) -> np.ndarray:
    # halving at every step keeps values inside float range for large n
    pmf = np.zeros(n * (n + 1) // 2 + 1)
    pmf[0] = 1.0
    top = 0
    for k in range(1, n + 1):
        shifted = pmf[: top + 1].copy()
        pmf[: top + 1] *= 0.5
        pmf[k : top + k + 1] += 0.5 * shifted
        top += k
    return pmf


def signed_rank_tails(w: float, n: int) -> tuple[float, float]:
    """(P(W <= w), P(W >= w)) under the null for n nonzero, untied differences."""
    if not 1 <= n <= MAX_EXACT_N:
        raise OutOfRange(f"exact distribution supports 1 <= n <= {MAX_EXACT_N}, got {n}")
    top = n * (n + 1) // 2
    if not 0 <= w <= top:
        raise OutOfRange(f"w={w} outside [0, {top}] for n={n}")
    lo_idx = math.floor(w)
    hi_idx = math.ceil(w)
    if n <= _MAX_INTEGER_N:
        counts = _null_counts(n)
        total = 2**n
        lower = int(counts[: lo_idx + 1].sum())
        upper = int(counts[hi_idx:].sum())
        return lower / total, upper / total
    pmf = _null_pmf(n)
    return float(pmf[: lo_idx + 1].sum()), float(pmf[hi_idx:].sum())


def exact_signed_rank_p(w: float, n: int) -> float:
    lower, upper = signed_rank_tails(w, n)
    return min(1.0, 2.0 * min(lower, upper))


def _normal_z(w: float, n: int, tie_groups: Sequence[int], continuity: bool) -> float:
    mu = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0 - sum(t**3 - t for t in tie_groups) / 48.0
    diff = w - mu
    if continuity:
        diff -= math.copysign(0.5, diff) if diff != 0 else 0.0
    if var <= 0:
        return 0.0
    return diff / math.sqrt(var)


def normal_two_sided_p(z: float) -> float:
    return min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))


def wilcoxon_signed_rank(
    x: Sequence[float],
    y: Sequence[float],
    mode: str = "auto",
    continuity: bool = True,
    exact_threshold: int = EXACT_THRESHOLD,
) -> WilcoxonResult:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if len(x) != len(y):
        raise LengthMismatch(f"paired samples differ in length: {len(x)} vs {len(y)}")
    if len(x) == 0:
        raise LengthMismatch("paired samples are empty")
    diffs = [float(a) - float(b) for a, b in zip(x, y)]
    nonzero = [d for d in diffs if d != 0]
    n_zeros = len(diffs) - len(nonzero)
    if not nonzero:
        raise AllZeroDifferences("every paired difference is zero")

    n = len(nonzero)
    ranks, groups = average_ranks([abs(d) for d in nonzero])
    w = math.fsum(r for r, d in zip(ranks, nonzero) if d > 0)
    tied_groups = [t for t in groups if t > 1]
    has_ties = bool(tied_groups)

    if mode == "exact" and (has_ties or n_zeros):
        what = "tied absolute differences" if has_ties else "zero differences"
        raise ExactWithTies(f"exact mode requested but sample has {what}")
    use_exact = mode == "exact" or (
        mode == "auto" and n < exact_threshold and not has_ties and not n_zeros
    )
    z_normal = _normal_z(w, n, tied_groups, continuity)

    if use_exact:
        return WilcoxonResult(
            w, n, None, exact_signed_rank_p(w, n), "exact", False, False,
            z_normal, n_zeros, has_ties,
        )
    return WilcoxonResult(
        w, n, z_normal, normal_two_sided_p(z_normal), "normal_approx", has_ties, continuity,
        z_normal, n_zeros, has_ties,
    )
