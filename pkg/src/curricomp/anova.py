"""One-way analysis of variance over tiered complexity samples.

Decomposes total variation into between-tier and within-tier sums of squares
(TSS = SST + SSE), forms mean squares and the F statistic for k groups with
(k-1, n-k) degrees of freedom, and evaluates the F distribution through the
regularized incomplete beta function so no statistics dependency is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, isfinite, lgamma, log

_EPS = 1.0e-12
_FPMIN = 1.0e-300
_ITMAX = 200


class ZeroWithinGroupVarianceError(ValueError):
    """All values within every group are identical, so MSE = 0 and the F
    statistic is undefined."""

    def __init__(self):
        super().__init__("degenerate: zero within-group variance")


@dataclass(frozen=True)
class TierSamples:
    """Ordered groups of complexity values, one per tier."""

    groups: tuple[tuple[str, tuple[float, ...]], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "groups",
            tuple((label, tuple(float(v) for v in values))
                  for label, values in self.groups),
        )
        if len(self.groups) < 2:
            raise ValueError("ANOVA needs at least 2 groups")
        for label, values in self.groups:
            if len(values) < 2:
                raise ValueError(
                    f"group {label!r} has {len(values)} value(s); every group "
                    "needs at least 2"
                )
            for v in values:
                if not isfinite(v):
                    raise ValueError(f"group {label!r} contains non-finite value {v}")

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return sum(len(values) for _, values in self.groups)

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.groups)


@dataclass(frozen=True)
class AnovaTable:
    tss: float
    sst: float
    sse: float
    df_between: int
    df_within: int
    mst: float
    mse: float
    f: float
    grand_mean: float
    group_means: tuple[float, ...]


@dataclass(frozen=True)
class MeanSquares:
    mst: float
    mse: float
    f: float


@dataclass(frozen=True)
class TestDecision:
    alpha: float
    f: float
    f_critical: float
    p_value: float
    reject_null: bool


def _welford(values: tuple[float, ...]) -> tuple[float, float]:
    """Single-pass mean and sum of squared deviations."""
    mean = 0.0
    m2 = 0.0
    for i, v in enumerate(values, start=1):
        delta = v - mean
        mean += delta / i
        m2 += delta * (v - mean)
    return mean, m2


def anova_table(samples: TierSamples) -> AnovaTable:
    """Sum-of-squares decomposition and F statistic for k >= 2 groups.

    Raises ZeroWithinGroupVarianceError when every group is internally
    constant (MSE = 0): an infinite F would dress degenerate data up as an
    overwhelming effect.
    """
    group_stats = [(_welford(values), len(values)) for _, values in samples.groups]
    n = samples.n
    k = samples.k
    grand_mean = sum(mean * size for (mean, _), size in group_stats) / n

    sse = sum(m2 for (_, m2), _ in group_stats)
    sst = sum(size * (mean - grand_mean) ** 2 for (mean, _), size in group_stats)
    _, tss = _welford(tuple(v for _, values in samples.groups for v in values))

    df_between = k - 1
    df_within = n - k
    mst = sst / df_between
    mse = sse / df_within
    if mse == 0.0:
        raise ZeroWithinGroupVarianceError()
    return AnovaTable(
        tss=tss,
        sst=sst,
        sse=sse,
        df_between=df_between,
        df_within=df_within,
        mst=mst,
        mse=mse,
        f=mst / mse,
        grand_mean=grand_mean,
        group_means=tuple(mean for (mean, _), _ in group_stats),
    )


def mean_squares(sst: float, df_between: int, sse: float, df_within: int) -> MeanSquares:
    """Mean squares and F from already-computed sums of squares.

    Lets a published table's SST/SSE rows be checked directly.
    """
    if df_between < 1 or df_within < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if sst < 0 or sse < 0:
        raise ValueError("sums of squares must be >= 0")
    mst = sst / df_between
    mse = sse / df_within
    if mse == 0.0:
        raise ZeroWithinGroupVarianceError()
    return MeanSquares(mst=mst, mse=mse, f=mst / mse)


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function, evaluated by the
    modified Lentz method with the usual even/odd term recurrence."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _ITMAX + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise RuntimeError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )


def _reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        lgamma(a + b) - lgamma(a) - lgamma(b) + a * log(x) + b * log(1.0 - x)
    )
    front = exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _check_df(d1: int, d2: int) -> None:
    if d1 < 1 or d2 < 1:
        raise ValueError(f"degrees of freedom must be positive integers, got ({d1}, {d2})")


def f_cdf(x: float, d1: int, d2: int) -> float:
    """P(F <= x) for the F distribution with (d1, d2) degrees of freedom."""
    _check_df(d1, d2)
    if not isfinite(x) or x < 0:
        raise ValueError(f"x must be finite and >= 0, got {x}")
    if x == 0.0:
        return 0.0
    t = d1 * x / (d1 * x + d2)
    p = _reg_inc_beta(d1 / 2.0, d2 / 2.0, t)
    return min(1.0, max(0.0, p))


def f_quantile(p: float, d1: int, d2: int) -> float:
    """Inverse of f_cdf: the x with P(F <= x) = p.

    Brackets the root by doubling, then bisects until the interval width is
    below max(1e-13, 1e-10 * x); that keeps the inverse sharp even where the
    CDF has flattened against 1.
    """
    _check_df(d1, d2)
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    lo, hi = 0.0, 1.0
    for _ in range(2100):
        if f_cdf(hi, d1, d2) >= p:
            break
        lo, hi = hi, hi * 2.0
    else:
        raise RuntimeError(f"failed to bracket quantile p={p} for df ({d1}, {d2})")
    for _ in range(500):
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(1e-13, 1e-10 * mid):
            break
        if f_cdf(mid, d1, d2) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def hypothesis_test(samples: TierSamples, alpha: float) -> tuple[AnovaTable, TestDecision]:
    """Run the one-way F test: reject the null (equal tier means) when the
    observed F exceeds the upper-alpha critical value."""
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    table = anova_table(samples)
    f_critical = f_quantile(1.0 - alpha, table.df_between, table.df_within)
    p_value = 1.0 - f_cdf(table.f, table.df_between, table.df_within)
    return table, TestDecision(
        alpha=alpha,
        f=table.f,
        f_critical=f_critical,
        p_value=p_value,
        reject_null=table.f > f_critical,
    )
