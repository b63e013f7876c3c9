"""Descriptive statistics for complexity samples.

Quartiles use linear interpolation of order statistics at position p*(n-1)
(the widespread "type 7" convention). Outlier fences sit 1.5*IQR beyond the
quartiles; whiskers are the extreme data values inside the fences. The notch
about the median is m +/- 1.57*IQR/sqrt(n).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from math import ceil, fsum, isfinite, sqrt


@dataclass(frozen=True)
class SampleSummary:
    n: int
    mean: float
    std: float
    median: float
    q1: float
    q3: float
    iqr: float
    notch_low: float
    notch_high: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]


@dataclass(frozen=True)
class SampleSizeResult:
    unrounded: float
    n: int


@dataclass(frozen=True)
class Histogram:
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.bin_edges) < 2:
            raise ValueError("histogram needs at least two bin edges")
        if len(self.counts) != len(self.bin_edges) - 1:
            raise ValueError("counts must have one entry per bin")
        for a, b in zip(self.bin_edges, self.bin_edges[1:]):
            if not a < b:
                raise ValueError("bin edges must be strictly ascending")

    @property
    def total(self) -> int:
        return sum(self.counts)


def _quantile(sorted_values: list[float], p: float) -> float:
    """Linear interpolation at 0-indexed position p*(n-1)."""
    n = len(sorted_values)
    if n == 1:
        return sorted_values[0]
    pos = p * (n - 1)
    lo = int(pos)
    frac = pos - lo
    if frac == 0.0 or lo + 1 >= n:
        return sorted_values[lo]
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo])


def notch_interval(median: float, iqr: float, n: int) -> tuple[float, float]:
    """Approximate confidence interval about the median for box-plot notches."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if iqr < 0:
        raise ValueError(f"iqr must be >= 0, got {iqr}")
    half = 1.57 * iqr / sqrt(n)
    return (median - half, median + half)


def summarize_sample(values: list[float] | tuple[float, ...]) -> SampleSummary:
    """Five-number summary plus mean, sample std, notch, and Tukey outliers."""
    if not values:
        raise ValueError("cannot summarize an empty sample")
    data = sorted(float(v) for v in values)
    if not all(isfinite(v) for v in data):
        raise ValueError("sample values must be finite")
    n = len(data)
    mean = fsum(data) / n
    if n == 1:
        std = 0.0
    else:
        std = sqrt(fsum((v - mean) ** 2 for v in data) / (n - 1))
    q1 = _quantile(data, 0.25)
    median = _quantile(data, 0.5)
    q3 = _quantile(data, 0.75)
    iqr = q3 - q1
    lo_fence = q1 - 1.5 * iqr
    hi_fence = q3 + 1.5 * iqr
    inliers = [v for v in data if lo_fence <= v <= hi_fence]
    outliers = tuple(v for v in data if v < lo_fence or v > hi_fence)
    # The quartiles themselves always sit inside the fences, so at least one
    # data point does too.
    notch_low, notch_high = notch_interval(median, iqr, n)
    return SampleSummary(
        n=n,
        mean=mean,
        std=std,
        median=median,
        q1=q1,
        q3=q3,
        iqr=iqr,
        notch_low=notch_low,
        notch_high=notch_high,
        whisker_low=inliers[0],
        whisker_high=inliers[-1],
        outliers=outliers,
    )


def sample_size(sigma: float, z: float, e: float) -> SampleSizeResult:
    """Samples needed so a z-level interval has half-width e: ceil((sigma*z/e)^2).

    Floored at 2 because a single observation carries no variance.
    """
    for label, v in (("sigma", sigma), ("z", z), ("e", e)):
        if not (isfinite(v) and v > 0):
            raise ValueError(f"{label} must be finite and > 0, got {v}")
    unrounded = (sigma * z / e) ** 2
    # Snap to a nearby integer before ceiling so exact designs like
    # (sigma*z/e)^2 == 16 are not bumped to 17 by float noise.
    nearest = round(unrounded)
    if abs(unrounded - nearest) < 1e-9 * max(1.0, abs(unrounded)):
        n = int(nearest)
    else:
        n = ceil(unrounded)
    return SampleSizeResult(unrounded=unrounded, n=max(2, n))


def histogram(
    values: list[float] | tuple[float, ...],
    edges: list[float] | tuple[float, ...] | None = None,
) -> Histogram:
    """Bin a sample into half-open bins [e_i, e_{i+1}), last bin closed.

    Without explicit edges, bin width follows Freedman-Diaconis
    (2*IQR*n^(-1/3)) clamped to at least 1 point, starting at the minimum.
    Explicit edges must be strictly ascending and cover every value.
    """
    if not values:
        raise ValueError("cannot build a histogram from an empty sample")
    data = sorted(float(v) for v in values)
    if not all(isfinite(v) for v in data):
        raise ValueError("sample values must be finite")
    lo, hi = data[0], data[-1]

    if edges is None:
        n = len(data)
        iqr = _quantile(data, 0.75) - _quantile(data, 0.25)
        width = max(1.0, 2.0 * iqr * n ** (-1.0 / 3.0))
        nbins = max(1, ceil((hi - lo) / width))
        edge_list = [lo + i * width for i in range(nbins + 1)]
        while edge_list[-1] < hi:
            edge_list.append(edge_list[-1] + width)
    else:
        edge_list = [float(e) for e in edges]
        if len(edge_list) < 2:
            raise ValueError("explicit edges need at least two entries")
        for a, b in zip(edge_list, edge_list[1:]):
            if not a < b:
                raise ValueError("explicit edges must be strictly ascending")
        if lo < edge_list[0] or hi > edge_list[-1]:
            raise ValueError(
                f"edges [{edge_list[0]}, {edge_list[-1]}] do not cover the "
                f"data range [{lo}, {hi}]"
            )

    counts = [0] * (len(edge_list) - 1)
    for v in data:
        idx = bisect_right(edge_list, v) - 1
        if idx >= len(counts):  # v == last edge: closed last bin
            idx = len(counts) - 1
        counts[idx] += 1
    return Histogram(bin_edges=tuple(edge_list), counts=tuple(counts))
