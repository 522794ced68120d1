"""Statistical post-processing: batch-means CIs, pmf distance, trend checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# 95% normal quantile; batch counts >= 10 recommended for the normal
# approximation to be adequate.
Z_95 = 1.96
DEFAULT_TREND_BAND = (0.6, 1.67)


@dataclass(frozen=True)
class SummaryStat:
    mean: float
    variance: float
    ci_halfwidth: float
    num_batches: int
    num_samples: int

    def __post_init__(self):
        if self.ci_halfwidth < 0.0:
            raise ValueError("ci_halfwidth must be nonnegative")
        if self.ci_halfwidth > 0.0 and self.num_batches < 2:
            raise ValueError("a positive CI needs at least 2 batches")


class Quantity(str, Enum):
    RENEWAL_MEAN = "renewal_mean"
    RENEWAL_VARIANCE = "renewal_variance"
    DRONE_AGE_PMF = "drone_age_pmf"
    AVG_NODE_AGE = "avg_node_age"
    DISSEMINATION_LAG = "dissemination_lag"


@dataclass(frozen=True)
class ComparisonRecord:
    """One analytics-vs-simulation checkpoint.

    ``relative_error`` is |simulated.mean - analytical| / |analytical| when
    an analytical value exists; for the drone-age pmf it holds the total
    variation distance instead.  Records without an analytical value are
    informational and always pass.
    """

    quantity: Quantity
    analytical: float | None
    simulated: SummaryStat
    relative_error: float | None
    passed: bool
    tolerance: float


def compare_to_analytical(
    quantity: Quantity, analytical: float | None, simulated: SummaryStat, tolerance: float
) -> ComparisonRecord:
    if analytical is None or analytical == 0.0:
        return ComparisonRecord(quantity, analytical, simulated, None, True, tolerance)
    rel = abs(simulated.mean - analytical) / abs(analytical)
    return ComparisonRecord(quantity, analytical, simulated, rel, rel <= tolerance, tolerance)


def summarize_estimates(values: list[float]) -> SummaryStat:
    """Summary of replication-level estimates (one value per replication)."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("no estimates to summarize")
    if arr.size == 1:
        return SummaryStat(float(arr[0]), 0.0, 0.0, 1, 1)
    var = float(arr.var(ddof=1))
    ci = Z_95 * math.sqrt(var / arr.size)
    return SummaryStat(float(arr.mean()), var, ci, int(arr.size), int(arr.size))


def batch_means(samples, num_batches: int) -> SummaryStat:
    """Mean, variance, and 95% CI half-width via the batch-means method.

    Samples are split in order into equal contiguous batches (remainder
    truncated); the CI comes from the spread of the batch averages.  The
    reported mean is exactly the plain mean of the truncated prefix.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.size == 0:
        raise ValueError("samples must be nonempty")
    if num_batches < 2:
        raise ValueError(f"num_batches must be >= 2, got {num_batches}")
    if arr.size < 2 * num_batches:
        raise ValueError(
            f"too few samples ({arr.size}) for {num_batches} batches; need at least {2 * num_batches}"
        )
    batch_size = arr.size // num_batches
    used = batch_size * num_batches
    prefix = arr[:used]
    batch_avgs = prefix.reshape(num_batches, batch_size).mean(axis=1)
    se = float(batch_avgs.std(ddof=1)) / math.sqrt(num_batches)
    return SummaryStat(
        mean=float(prefix.mean()),
        variance=float(prefix.var(ddof=1)),
        ci_halfwidth=Z_95 * se,
        num_batches=num_batches,
        num_samples=int(used),
    )


def total_variation(p: dict[int, float], q: dict[int, float]) -> float:
    """Total variation distance between two pmfs over the union support."""
    for name, pmf in (("p", p), ("q", q)):
        values = np.asarray(list(pmf.values()), dtype=float) if pmf else np.zeros(0)
        if values.size and values.min() < 0.0:
            raise ValueError(f"{name} has negative mass")
        if values.sum() > 1.0 + 1e-9:
            raise ValueError(f"{name} sums to more than 1")
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def trend_ratio_check(
    xs: list[tuple[float, float]],
    predictor: list[float],
    band: tuple[float, float] = DEFAULT_TREND_BAND,
) -> bool:
    """Whether measured growth tracks predicted growth within a constant band.

    For every consecutive pair of (scale, value) points, the ratio of
    measured growth to predicted growth must lie in [band.low, band.high].
    """
    if len(xs) != len(predictor):
        raise ValueError(f"xs has {len(xs)} points but predictor has {len(predictor)}")
    if len(xs) < 2:
        raise ValueError("need at least 2 points for a trend check")
    values = [v for _, v in xs]
    if any(v <= 0.0 for v in values) or any(p <= 0.0 for p in predictor):
        raise ValueError("values and predictor must be positive")
    low, high = band
    for i in range(len(values) - 1):
        growth = (values[i + 1] / values[i]) / (predictor[i + 1] / predictor[i])
        if not low <= growth <= high:
            return False
    return True
