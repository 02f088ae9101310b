"""Utilities, objective values, normalized rates and gap diagnostics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DeltaOne
from .model import Allocation, RabConfig, RateVector, _frozen_array, rates_of_allocation
from .rates import Objective


@dataclass(frozen=True)
class UtilityReport:
    """Per-sensor utilities Q, the scalar objective W, rates and target gaps.

    ``gap_to_target`` compares normalized rates (achieved minus target, in
    absolute value); it is NaN when no target was supplied. ``gap_bound`` is
    the finite-horizon bound max_n delta_n**T when every profile is
    exponential, NaN otherwise.
    """

    per_sensor_utility: np.ndarray
    objective_value: float
    per_sensor_rate: RateVector
    gap_to_target: np.ndarray
    gap_bound: float

    def __post_init__(self):
        object.__setattr__(
            self, "per_sensor_utility", _frozen_array(self.per_sensor_utility)
        )
        object.__setattr__(self, "gap_to_target", _frozen_array(self.gap_to_target))


def utility(
    config: RabConfig,
    alloc: Allocation,
    objective: Objective = Objective.MAX_MIN,
    target: RateVector | None = None,
) -> UtilityReport:
    """Score an allocation: Q[n] = qbar_n * h_n * r[n], W per the objective."""
    rates = rates_of_allocation(config, alloc)
    q = config.utility_slopes() * rates.r
    weighted = config.alphas() * q
    w_val = float(weighted.min()) if objective is Objective.MAX_MIN else float(weighted.sum())
    if target is None:
        gaps = np.full(config.N, np.nan)
    else:
        gaps = np.abs(rates.v - target.v)
    deltas = [s.profile.delta for s in config.sensors]
    if all(d is not None for d in deltas):
        bound = float(max(d**config.T for d in deltas))
    else:
        bound = float("nan")
    return UtilityReport(
        per_sensor_utility=q,
        objective_value=w_val,
        per_sensor_rate=rates,
        gap_to_target=gaps,
        gap_bound=bound,
    )


def geometric_budget(delta: float, T: int | None) -> float:
    """sum_{t=1..T} delta**(t-1); 1/(1-delta) when T is None (infinite)."""
    if T is None:
        if delta >= 1.0:
            raise DeltaOne("infinite horizon needs delta < 1")
        return 1.0 / (1.0 - delta)
    if delta == 1.0:
        return float(T)
    return (1.0 - delta**T) / (1.0 - delta)


def normalized_rates(delta: float, T: int | None, rates) -> RateVector:
    """Divide identical-exponential rates by the common geometric budget."""
    r = np.asarray(rates.r if isinstance(rates, RateVector) else rates, dtype=float)
    return RateVector(r=r, v=r / geometric_budget(delta, T))


def gap_bound(delta: float, T: int) -> float:
    """Finite-horizon bound on |v_T - v_inf| per sensor: delta**T."""
    if not (0.0 <= delta < 1.0):
        raise ValueError(f"delta must be in [0, 1), got {delta!r}")
    if T < 1:
        raise ValueError("T must be positive")
    return delta**T


def display_normalized(values) -> np.ndarray:
    """Scale a series to [0, 1] by its maximum; reporting transform only.

    Never applied to stored results -- raw values feed the tests.
    """
    arr = np.asarray(values, dtype=float)
    top = arr.max()
    return arr / top if top > 0 else arr.copy()
