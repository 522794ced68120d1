"""Exact moments of the drone-to-cell inter-renewal time.

The gap between two consecutive drone deliveries into a fixed cell is the
absorption time of a killed CTMC: the mobility chain with the delivery rate
subtracted from the target cell's diagonal.  Mean and second moment come
from two linear solves (M x = -1, M y = -x); the inverse is never formed.
Also provides the fully-connected closed forms, the Chebyshev tail bound on
the renewal deviation, the geometric law of the drone's own age, and the
classifier for the bandwidth- vs mobility-constrained scaling regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import NetworkConfig
from .ctmc import GeneratorMatrix


@dataclass(frozen=True)
class PhaseTypeModel:
    """Starting vector alpha and sub-generator M of an absorption time."""

    alpha: np.ndarray
    subgen: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float)
        subgen = np.asarray(self.subgen, dtype=float)
        if alpha.ndim != 1 or subgen.shape != (alpha.size, alpha.size):
            raise ValueError(
                f"alpha length {alpha.size} does not match subgenerator shape {subgen.shape}"
            )
        if np.any(alpha < 0.0) or abs(alpha.sum() - 1.0) > 1e-12:
            raise ValueError("alpha must be a probability vector")
        offdiag = subgen.copy()
        np.fill_diagonal(offdiag, 0.0)
        if np.any(offdiag < 0.0):
            raise ValueError("subgenerator has negative off-diagonal rates")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "subgen", subgen)


@dataclass(frozen=True)
class RenewalMoments:
    """First two moments of the inter-renewal time."""

    mean: float
    second_moment: float
    variance: float

    def __post_init__(self):
        if not self.mean > 0.0 or not self.second_moment > 0.0:
            raise ValueError("renewal moments must be positive")
        if self.variance < 0.0:
            raise ValueError("variance must be nonnegative")


class Regime(str, Enum):
    BANDWIDTH_CONSTRAINED = "bandwidth_constrained"
    MOBILITY_CONSTRAINED = "mobility_constrained"


@dataclass(frozen=True)
class RegimeReport:
    """Which of the two processes bottlenecks the node age, and the scale."""

    regime: Regime
    dominant_term: float
    gossip_term: float
    predicted_age_scale: float


def build_subgenerator(
    gen: GeneratorMatrix, dissemination_rate: float, target_cell: int
) -> PhaseTypeModel:
    """Kill the mobility chain at the target cell with the delivery rate.

    The clock starts right after a delivery into the target cell, so the
    starting vector is the indicator of that cell.
    """
    if not 0 <= target_cell < gen.dim:
        raise IndexError(f"target_cell {target_cell} out of range for dim {gen.dim}")
    if not dissemination_rate > 0.0:
        raise ValueError(f"dissemination_rate must be positive, got {dissemination_rate}")
    subgen = gen.entries.copy()
    subgen[target_cell, target_cell] -= dissemination_rate
    alpha = np.zeros(gen.dim)
    alpha[target_cell] = 1.0
    return PhaseTypeModel(alpha, subgen)


def renewal_moments(model: PhaseTypeModel) -> RenewalMoments:
    """Mean, second moment, and variance of the absorption time.

    Solves M x = -1 and M y = -x; mean = alpha.x, E[tau^2] = 2 alpha.y.
    """
    ones = np.ones(model.alpha.size)
    try:
        x = np.linalg.solve(model.subgen, -ones)
        y = np.linalg.solve(model.subgen, -x)
    except np.linalg.LinAlgError as exc:
        raise ValueError(
            "singular subgenerator: mobility chain cannot reach the target "
            "cell from every state, or the dissemination rate is zero"
        ) from exc
    mean = float(model.alpha @ x)
    second = 2.0 * float(model.alpha @ y)
    return RenewalMoments(mean=mean, second_moment=second, variance=second - mean * mean)


def solve_mean_vector(model: PhaseTypeModel) -> np.ndarray:
    """Solution x of M x = -1 (entry i = expected absorption time from state i)."""
    return np.linalg.solve(model.subgen, -np.ones(model.alpha.size))


def solve_second_moment_vector(model: PhaseTypeModel) -> np.ndarray:
    """Solution y of M y = -x (entry i = half the second moment from state i)."""
    return np.linalg.solve(model.subgen, -solve_mean_vector(model))


def fully_connected_moments(f: int, lambda_m: float, lambda_d: float) -> RenewalMoments:
    """Closed-form renewal moments under fully-connected mobility.

    mean = f / lambda_d, variance = f^2/lambda_d^2 + 2 (f-1)^2 / (lambda_d lambda_m);
    the mobility terms vanish for a single cell.
    """
    if f < 1:
        raise ValueError(f"f must be >= 1, got {f}")
    if not (lambda_m > 0.0 and lambda_d > 0.0):
        raise ValueError("rates must be positive")
    mean = f / lambda_d
    cross = 2.0 * (f - 1) ** 2 / (lambda_d * lambda_m)
    variance = mean * mean + cross
    return RenewalMoments(mean=mean, second_moment=2.0 * mean * mean + cross, variance=variance)


def chebyshev_tail_bound(f: int, lambda_m: float, lambda_d: float, g: float) -> float:
    """Upper bound on P[|tau - E[tau]| > f*g/(2*lambda_d)], clamped to 1.

    The bound itself does not depend on f; f only sets the deviation scale
    in the event being bounded.
    """
    if f < 1:
        raise ValueError(f"f must be >= 1, got {f}")
    if not (lambda_m > 0.0 and lambda_d > 0.0 and g > 0.0):
        raise ValueError("rates and g must be positive")
    raw = 4.0 / (g * g) + 8.0 * lambda_d / (lambda_m * g * g)
    return min(1.0, raw)


def drone_age_pmf(lambda_e: float, lambda_s: float, k: int) -> float:
    """P[drone age = k]: geometric with success parameter lambda_s/(lambda_e+lambda_s).

    A source that never self-updates (lambda_e = 0) degenerates to a point
    mass at age 0.
    """
    if not lambda_s > 0.0 or lambda_e < 0.0:
        raise ValueError("lambda_s must be positive and lambda_e nonnegative")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    p = lambda_s / (lambda_e + lambda_s)
    q = lambda_e / (lambda_e + lambda_s)
    return p * q**k


def classify_regime(cfg: NetworkConfig) -> RegimeReport:
    """Bandwidth- vs mobility-constrained scaling for a configuration.

    Mobility at least as fast as dissemination puts the bottleneck on the
    delivery rate (dominant term f/lambda_d), otherwise on the return time
    (f/lambda_m).  The gossip term is ln(n/f), zero for cells of one or two
    nodes' trivial case n/f < 2.  The sum is an order-of-magnitude surrogate
    for trend checks, not a point prediction.
    """
    lam_m = cfg.lambda_m
    lam_d = cfg.lambda_d
    if lam_m >= lam_d:
        regime = Regime.BANDWIDTH_CONSTRAINED
        dominant = cfg.f / lam_d
    else:
        regime = Regime.MOBILITY_CONSTRAINED
        dominant = cfg.f / lam_m
    ratio = cfg.n / cfg.f
    gossip = math.log(ratio) if ratio >= 2.0 else 0.0
    return RegimeReport(
        regime=regime,
        dominant_term=dominant,
        gossip_term=gossip,
        predicted_age_scale=dominant + gossip,
    )
