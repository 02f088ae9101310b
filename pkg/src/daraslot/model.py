"""Core domain types: weight profiles, sensors, allocation blocks, rates.

All types are immutable after construction (arrays are frozen), so they can be
shared freely across concurrent experiment workers. Validation is explicit:
constructors accept whatever they are given and :func:`validate_rab` /
``validate_profile`` enforce the invariants, so tests can build intentionally
broken values.

Conventions: sensor ids are dense 1..N integers, slots are 1..T, and weights
are stored as explicit length-T vectors even for exponential profiles (the
discount factor tag is kept for analytic paths that need it).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphaSumMismatch,
    BadNormalization,
    LengthMismatch,
    NonMonotoneWeights,
)

# Absolute tolerance for invariant checks; the math is exact, this is float slack.
ATOL = 1e-9


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class WeightProfile:
    """Per-sensor slot valuation, non-increasing over the block.

    ``delta`` is set when the profile is an exponential family member
    (weights[t] = delta**(t-1)); it is None for empirical profiles.
    """

    weights: np.ndarray
    delta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", _frozen_array(self.weights))

    @property
    def horizon(self) -> int:
        return self.weights.shape[0]

    @property
    def is_exponential(self) -> bool:
        return self.delta is not None

    @property
    def total_weight(self) -> float:
        """Sum of all slot weights; the profile's whole-block budget."""
        return float(self.weights.sum())


@dataclass(frozen=True)
class SensorSpec:
    """One sender: objective weight, per-frame utility, frames per slot, profile."""

    id: int
    alpha: float
    qbar: float
    h: float
    profile: WeightProfile

    @property
    def coefficient(self) -> float:
        """alpha * qbar * h, the slope of weighted utility in the rate."""
        return self.alpha * self.qbar * self.h


@dataclass(frozen=True)
class RabConfig:
    """A resource allocation block: T slots shared by a roster of sensors."""

    T: int
    sensors: tuple[SensorSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "sensors", tuple(self.sensors))

    @property
    def N(self) -> int:
        return len(self.sensors)

    def weight_matrix(self) -> np.ndarray:
        """Stacked (N, T) weight matrix, sensor order = roster order."""
        return np.vstack([s.profile.weights for s in self.sensors])

    def alphas(self) -> np.ndarray:
        return np.array([s.alpha for s in self.sensors])

    def coefficients(self) -> np.ndarray:
        return np.array([s.coefficient for s in self.sensors])

    def utility_slopes(self) -> np.ndarray:
        """qbar * h per sensor (utility per unit of weighted rate)."""
        return np.array([s.qbar * s.h for s in self.sensors])


@dataclass(frozen=True)
class Allocation:
    """Length-T vector of sensor ids; slots[t-1] owns slot t."""

    slots: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "slots", _frozen_array(self.slots, dtype=np.int64))

    def __len__(self) -> int:
        return self.slots.shape[0]


@dataclass(frozen=True)
class RateVector:
    """Weighted sum rates r and their normalized counterparts v."""

    r: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", _frozen_array(self.r))
        object.__setattr__(self, "v", _frozen_array(self.v))

    def __len__(self) -> int:
        return self.r.shape[0]


def validate_profile(profile: WeightProfile, T: int | None = None) -> None:
    """Check one profile: length, normalization, monotonicity, range, tag."""
    w = profile.weights
    if w.ndim != 1 or w.shape[0] < 1:
        raise LengthMismatch("profile must be a vector with at least one slot")
    if T is not None and w.shape[0] != T:
        raise LengthMismatch(f"profile length {w.shape[0]} != block length {T}")
    if abs(w[0] - 1.0) > ATOL:
        raise BadNormalization(f"first weight must be 1, got {w[0]!r}")
    if np.any(w < -ATOL) or np.any(w > 1.0 + ATOL):
        raise BadNormalization("weights must lie in [0, 1]")
    if np.any(w[1:] > w[:-1] + ATOL):
        t = int(np.argmax(w[1:] > w[:-1] + ATOL)) + 1
        raise NonMonotoneWeights(f"weights increase at slot {t + 1}")
    if profile.delta is not None:
        d = profile.delta
        if not (0.0 <= d < 1.0):
            raise BadNormalization(f"exponential tag delta={d!r} outside [0, 1)")
        expected = np.power(d, np.arange(w.shape[0]))
        # one machine epsilon per multiplication is the honest accumulation bound
        slack = np.finfo(float).eps * (np.arange(w.shape[0]) + 1)
        if np.any(np.abs(w - expected) > expected * slack + slack):
            raise BadNormalization("weights do not match the tagged discount factor")


def validate_rab(config: RabConfig) -> None:
    """Check all invariants of a resource allocation block.

    Raises NonMonotoneWeights, BadNormalization, AlphaSumMismatch or
    LengthMismatch; returns None when the config is valid.
    """
    if config.T < 1:
        raise LengthMismatch("block must contain at least one slot")
    if config.N < 1:
        raise LengthMismatch("roster must contain at least one sensor")
    for sensor in config.sensors:
        validate_profile(sensor.profile, config.T)
        if not (0.0 <= sensor.alpha <= 1.0 + ATOL):
            raise AlphaSumMismatch(f"alpha {sensor.alpha!r} outside [0, 1]")
        if sensor.qbar <= 0 or sensor.h <= 0:
            raise ValueError(f"sensor {sensor.id}: qbar and h must be positive")
    total_alpha = sum(s.alpha for s in config.sensors)
    if abs(total_alpha - 1.0) > ATOL:
        raise AlphaSumMismatch(f"alphas sum to {total_alpha!r}, expected 1")
    ids = sorted(s.id for s in config.sensors)
    if ids != list(range(1, config.N + 1)):
        raise ValueError(f"sensor ids must be a permutation of 1..{config.N}, got {ids}")


def rates_of_allocation(config: RabConfig, alloc: Allocation) -> RateVector:
    """Weighted sum rate per sensor: r[n] = sum of w[n, t] over slots given to n.

    The normalized component divides each rate by that sensor's total weight
    budget, so v[n] = r[n] / sum_t w[n, t].
    """
    slots = alloc.slots
    if slots.shape[0] != config.T:
        raise LengthMismatch(f"allocation length {slots.shape[0]} != T={config.T}")
    if np.any(slots < 1) or np.any(slots > config.N):
        raise ValueError("allocation contains sensor ids outside 1..N")
    W = config.weight_matrix()
    picked = W[slots - 1, np.arange(config.T)]
    r = np.bincount(slots - 1, weights=picked, minlength=config.N)
    totals = W.sum(axis=1)
    return RateVector(r=r, v=r / totals)
