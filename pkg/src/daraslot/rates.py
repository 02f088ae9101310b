"""Step 1 of the allocation approach: pick the target weighted sum rate vector.

The achievable set of weighted sum rate vectors is hard to characterize
exactly for heterogeneous finite-horizon profiles, so targets are chosen on
the approximate set {r >= 0 : sum r = R} with R between the per-slot min and
max weight budgets. Two objectives are provided analytically: max-min of the
weighted utilities, and the weighted sum (a corner solution).
"""
from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import TargetDimensionMismatch, ZeroUtilityCoefficient
from .model import RabConfig, RateVector


class Objective(Enum):
    MAX_MIN = "MaxMin"
    WEIGHTED_SUM = "WeightedSum"


def as_rate_array(target, N: int) -> np.ndarray:
    """Coerce a RateVector or array-like target into a length-N float array."""
    r = target.r if isinstance(target, RateVector) else target
    r = np.asarray(r, dtype=float)
    if r.shape != (N,):
        raise TargetDimensionMismatch(f"target shape {r.shape} != ({N},)")
    return r


def achievable_budget(config: RabConfig) -> tuple[float, float]:
    """(Rmin, Rmax): per-slot min/max weights summed over the block.

    Every allocation's total weighted rate lies in this interval, so it brackets
    the budgets R for which {sum r = R} approximates the achievable set.
    """
    W = config.weight_matrix()
    return float(W.min(axis=0).sum()), float(W.max(axis=0).sum())


def feasibility_threshold(N: int) -> float:
    """Smallest identical discount factor whose full simplex is achievable."""
    if N < 1:
        raise ValueError("N must be positive")
    return 1.0 - 1.0 / N


def _normalized(config: RabConfig, r: np.ndarray) -> RateVector:
    totals = config.weight_matrix().sum(axis=1)
    return RateVector(r=r, v=r / totals)


def maxmin_rates(config: RabConfig, budget: float) -> RateVector:
    """Rates maximizing min_n alpha_n qbar_n h_n r_n subject to sum r = budget.

    Closed form: r[n] = budget / sum_i (c_n / c_i) with c = alpha * qbar * h,
    which equalizes c_n r_n across sensors and spends the whole budget.
    Scaling all alphas by a common factor leaves the solution unchanged.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    c = config.coefficients()
    if np.any(c == 0.0):
        raise ZeroUtilityCoefficient("all alpha * qbar * h must be nonzero")
    r = budget / (c * np.sum(1.0 / c))
    return _normalized(config, r)


def weightedsum_rates(config: RabConfig, budget: float) -> RateVector:
    """Rates maximizing sum_n alpha_n qbar_n h_n r_n subject to sum r = budget.

    Linear objective: the whole budget goes to the largest coefficient; exact
    float ties split it equally.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    c = config.coefficients()
    winners = c == c.max()
    r = np.where(winners, budget / winners.sum(), 0.0)
    return _normalized(config, r)


def target_rates(config: RabConfig, objective: Objective, budget: float) -> RateVector:
    if objective is Objective.MAX_MIN:
        return maxmin_rates(config, budget)
    return weightedsum_rates(config, budget)


def check_infinite_horizon_feasible(delta: float, N: int, target) -> bool:
    """Infinite-horizon feasibility for N identical exponential profiles.

    True iff the rates are non-negative, sum to 1/(1-delta) within 1e-9, and
    delta >= 1 - 1/N. Below that threshold the full simplex is not achievable.
    """
    r = as_rate_array(target, N)
    if np.any(r < 0):
        return False
    if delta < feasibility_threshold(N):
        return False
    return abs(float(r.sum()) - 1.0 / (1.0 - delta)) <= 1e-9
