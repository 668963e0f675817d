"""Shapiro-Wilk W test using Royston's approximations (algorithm AS R94).

Coefficients come from Royston's polynomial fit to the expected normal
order statistics; the p-value from his normalising transformation of
log(1 - W), with separate fits for n <= 11 and n >= 12. Valid for
3 <= n <= 5000.
"""

from __future__ import annotations

import math
from statistics import NormalDist
from typing import Sequence

from ..errors import DegenerateSample, SampleTooLarge, SampleTooSmall

_C1 = (0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.544, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)
_G = (-2.273, 0.459)

_STD_NORMAL = NormalDist()


def _poly(coefs: Sequence[float], x: float) -> float:
    # coefs[0] + coefs[1] x + coefs[2] x^2 + ...
    result = 0.0
    for c in reversed(coefs):
        result = result * x + c
    return result


def _upper_half_coefficients(n: int) -> list[float]:
    """Positive weights a_1 >= a_2 >= ... for the n//2 outermost order-statistic pairs."""
    half = n // 2
    if n == 3:
        return [math.sqrt(0.5)]
    m = [_STD_NORMAL.inv_cdf((i - 0.375) / (n + 0.25)) for i in range(1, half + 1)]
    summ2 = 2.0 * sum(v * v for v in m)
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a1 = _poly(_C1, rsn) - m[0] / ssumm2
    a = list(m)
    if n > 5:
        first = 2
        a2 = -m[1] / ssumm2 + _poly(_C2, rsn)
        fac = math.sqrt((summ2 - 2 * m[0] ** 2 - 2 * m[1] ** 2) / (1 - 2 * a1**2 - 2 * a2**2))
        a[1] = a2
    else:
        first = 1
        fac = math.sqrt((summ2 - 2 * m[0] ** 2) / (1 - 2 * a1**2))
    a[0] = a1
    for i in range(first, half):
        a[i] = -m[i] / fac
    return a


def shapiro_wilk(values: Sequence[float]) -> tuple[float, float]:
    """Return ``(W, p)`` for the hypothesis that ``values`` are normal."""
    x = sorted(float(v) for v in values)
    n = len(x)
    if n < 3:
        raise SampleTooSmall(f"Shapiro-Wilk needs n >= 3, got {n}")
    if n > 5000:
        raise SampleTooLarge(f"Shapiro-Wilk approximation is valid up to n = 5000, got {n}")
    spread = x[-1] - x[0]
    if spread <= 1e-12 * max(abs(x[0]), abs(x[-1])) or spread == 0:
        raise DegenerateSample("all values are equal")

    half = _upper_half_coefficients(n)
    weights = [0.0] * n
    for i, a in enumerate(half):
        weights[i] = -a
        weights[n - 1 - i] = a
    # W is the squared correlation between weights and ordered data
    xs = [v / spread for v in x]
    wbar = math.fsum(weights) / n
    xbar = math.fsum(xs) / n
    ssa = math.fsum((w - wbar) ** 2 for w in weights)
    ssx = math.fsum((v - xbar) ** 2 for v in xs)
    sax = math.fsum((w - wbar) * (v - xbar) for w, v in zip(weights, xs))
    root = math.sqrt(ssa * ssx)
    one_minus_w = (root - sax) * (root + sax) / (ssa * ssx)
    w = 1.0 - one_minus_w

    if n == 3:
        p = (6 / math.pi) * (math.asin(math.sqrt(w)) - math.pi / 3)
        return w, min(1.0, max(0.0, p))

    y = math.log(one_minus_w)
    if n <= 11:
        gamma = _poly(_G, n)
        if y >= gamma:
            return w, 1e-99
        y = -math.log(gamma - y)
        mean = _poly(_C3, n)
        sd = math.exp(_poly(_C4, n))
    else:
        ln = math.log(n)
        mean = _poly(_C5, ln)
        sd = math.exp(_poly(_C6, ln))
    p = 0.5 * math.erfc((y - mean) / (sd * math.sqrt(2)))
    return w, p
