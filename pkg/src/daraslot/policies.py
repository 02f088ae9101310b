"""Step 2: slot allocation policies.

Non-stationary allocators:

* :func:`dara_allocate` -- the index policy. Each slot goes to the sensor with
  the largest value of residual^mu * weight^nu * tail^(-gamma), where the
  residual tracks how far the sensor still is from its target weighted rate.
* :func:`decomposition_allocate` -- for identical exponential profiles, the
  slot-by-slot decomposition of a feasible rate vector into a current slot
  plus a feasible continuation. Runs in exact rational arithmetic: the
  continuation update divides by delta every slot, which amplifies float
  rounding by 1/delta per step and would swamp the residuals long before
  T = 200; fractions keep the orbit exact at negligible cost for desk-scale T.

Stationary baselines: plain round-robin, share-proportional smooth weighted
round-robin (exact rational credits, so the pattern is truly cyclic), and its
rate/delay variant. :func:`optimal_exhaustive` enumerates all N**T allocations
as the ground-truth oracle for desk-scale instances.

Ties everywhere break to the lowest sensor id, so every policy is
deterministic given its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    InfeasibleDelta,
    InfeasibleTarget,
    InstanceTooLarge,
    LengthMismatch,
    NonPositiveShare,
)
from .model import Allocation, RabConfig, _frozen_array
from .rates import Objective, as_rate_array, feasibility_threshold

EXHAUSTIVE_GUARD = 10**7
_CHUNK = 100_000


@dataclass(frozen=True)
class DaraParams:
    """Index exponents (residual, weight, tail) and the tail floor.

    The tail term sum_{tau>t} w is zero at the last slot; flooring it keeps
    the index finite there, where the ordering is carried by residual and
    weight anyway.
    """

    mu: float = 1.0
    nu: float = 1.0
    gamma: float = 1.0
    tail_floor: float = 1e-12

    def __post_init__(self):
        if self.tail_floor <= 0:
            raise ValueError("tail_floor must be positive")


@dataclass(frozen=True)
class PolicyTrace:
    """Allocation plus per-slot diagnostics.

    ``indices[t-1]`` holds the decision metric of every sensor when slot t was
    assigned; ``residuals[t-1]`` holds the residual vector after that slot's
    update (for the decomposition policy these are the continuation values).
    """

    allocation: Allocation
    residuals: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "residuals", _frozen_array(self.residuals))
        object.__setattr__(self, "indices", _frozen_array(self.indices))


def dara_allocate(config: RabConfig, target, params: DaraParams = DaraParams()) -> PolicyTrace:
    """Allocate each slot to the sensor with the largest index.

    The residual f[n] starts at the target rate and drops by w[n, t] whenever
    sensor n wins slot t. The index is max(f, 0)^mu * w^nu * tail^(-gamma);
    negative residuals are clamped inside the index so fractional exponents
    stay defined. If every index is zero (all residuals spent), the slot goes
    to the largest raw residual.
    """
    N, T = config.N, config.T
    f = as_rate_array(target, N).copy()
    W = config.weight_matrix()
    # tails[n, t] = sum of W[n, tau] for tau > t (0-based t)
    tails = np.concatenate(
        [np.cumsum(W[:, ::-1], axis=1)[:, ::-1][:, 1:], np.zeros((N, 1))], axis=1
    )
    slots = np.empty(T, dtype=np.int64)
    residuals = np.empty((T, N))
    indices = np.empty((T, N))
    mu, nu, gamma = params.mu, params.nu, params.gamma
    for t in range(T):
        idx = (
            np.maximum(f, 0.0) ** mu
            * W[:, t] ** nu
            * np.maximum(tails[:, t], params.tail_floor) ** -gamma
        )
        winner = int(np.argmax(f)) if np.all(idx == 0.0) else int(np.argmax(idx))
        indices[t] = idx
        f[winner] -= W[winner, t]
        residuals[t] = f
        slots[t] = winner + 1
    return PolicyTrace(allocation=Allocation(slots=slots), residuals=residuals, indices=indices)


def decomposition_allocate(delta: float, N: int, T: int, target) -> PolicyTrace:
    """Decompose a feasible rate vector slot by slot (identical delta profiles).

    Each slot goes to the largest continuation residual g[n]; the winner then
    updates g <- (g - 1)/delta and everyone else g <- g/delta, which is the
    rate decomposition r(t) = current slot + delta * r(t+1). For
    delta >= 1 - 1/N and targets on {r >= 0 : sum r = 1/(1-delta)} the
    continuation stays non-negative forever, so the target is achieved in the
    infinite limit.

    The target may also sum to the T-truncated budget (deficit up to
    delta**T/(1-delta)); it is rescaled internally to the exact infinite
    budget, which preserves proportions. Arithmetic is exact rational, see the
    module docstring; if the float delta passes the threshold test but its
    exact rational value sits a final-ulp below 1 - 1/N, it is snapped up to
    the rational threshold so the non-negativity guarantee is not lost to one
    rounding of the threshold itself.
    """
    if T < 1 or N < 1:
        raise ValueError("N and T must be positive")
    if not (0.0 <= delta < 1.0):
        raise InfeasibleDelta(f"delta must be in [0, 1), got {delta!r}")
    if delta < feasibility_threshold(N):
        raise InfeasibleDelta(
            f"delta={delta!r} below feasibility threshold {feasibility_threshold(N)!r}"
        )
    r = as_rate_array(target, N)
    if np.any(r < 0):
        raise InfeasibleTarget("target rates must be non-negative")
    budget = 1.0 / (1.0 - delta)
    deficit = budget - float(r.sum())
    if not (-1e-9 <= deficit <= delta**T / (1.0 - delta) + 1e-9):
        raise InfeasibleTarget(
            f"target sums to {float(r.sum())!r}; expected the infinite budget "
            f"{budget!r} (up to the T-slot truncation deficit)"
        )

    d = Fraction(delta)
    threshold = 1 - Fraction(1, N)
    if d < threshold:
        d = threshold
    exact_budget = 1 / (1 - d)
    g = [Fraction(x) for x in r]
    total = sum(g)
    g = [x * exact_budget / total for x in g]

    slots = np.empty(T, dtype=np.int64)
    residuals = np.empty((T, N))
    indices = np.empty((T, N))
    for t in range(T):
        winner = max(range(N), key=lambda n: (g[n], -n))
        indices[t] = [float(x) for x in g]
        g = [(x - 1) / d if n == winner else x / d for n, x in enumerate(g)]
        residuals[t] = [float(x) for x in g]
        slots[t] = winner + 1
    return PolicyTrace(allocation=Allocation(slots=slots), residuals=residuals, indices=indices)


def round_robin(config: RabConfig) -> Allocation:
    """Cyclic assignment s(t) = ((t-1) mod N) + 1."""
    return Allocation(slots=np.arange(config.T) % config.N + 1)


def r_round_robin(config: RabConfig, shares) -> Allocation:
    """Smooth weighted round-robin with credit counters.

    Every slot each sensor earns share/sum(shares) credit; the largest credit
    wins the slot (ties to the lowest id) and pays 1. Credits are exact
    rationals, so the schedule repeats exactly with the period of the share
    ratios and is independent of float accumulation order.
    """
    shares = np.asarray(shares, dtype=float)
    if shares.shape != (config.N,):
        raise LengthMismatch(f"need one share per sensor, got shape {shares.shape}")
    if np.any(shares <= 0):
        raise NonPositiveShare("shares must be positive")
    total = sum(Fraction(s) for s in shares)
    gain = [Fraction(s) / total for s in shares]
    credit = [Fraction(0)] * config.N
    slots = np.empty(config.T, dtype=np.int64)
    for t in range(config.T):
        credit = [c + gn for c, gn in zip(credit, gain)]
        winner = max(range(config.N), key=lambda n: (credit[n], -n))
        credit[winner] -= 1
        slots[t] = winner + 1
    return Allocation(slots=slots)


def rd_round_robin(config: RabConfig) -> Allocation:
    """Weighted round-robin with rate * delay-sensitivity shares.

    share[n] = qbar_n * h_n * (T / sum_t w[n, t]): the bit-budget proxy scaled
    by how fast the profile decays (a fast-decaying profile has a small weight
    budget, so its sensor must be served early and often).
    """
    totals = config.weight_matrix().sum(axis=1)
    shares = config.utility_slopes() * (config.T / totals)
    return r_round_robin(config, shares / shares.sum())


def _objective_values(
    r: np.ndarray, alphas: np.ndarray, slopes: np.ndarray, objective: Objective
) -> np.ndarray:
    weighted = alphas * slopes * r
    if objective is Objective.MAX_MIN:
        return weighted.min(axis=-1)
    return weighted.sum(axis=-1)


def optimal_exhaustive(config: RabConfig, objective: Objective) -> tuple[Allocation, float]:
    """Enumerate all N**T allocations and return the best one.

    Ground-truth oracle; guarded at N**T <= 10**7. Enumeration is iterative
    base-N counting with the first slot as the most significant digit, so ties
    resolve to the lexicographically smallest allocation.
    """
    N, T = config.N, config.T
    total = N**T
    if total > EXHAUSTIVE_GUARD:
        raise InstanceTooLarge(f"N**T = {total} exceeds guard {EXHAUSTIVE_GUARD}")
    W = config.weight_matrix()
    alphas, slopes = config.alphas(), config.utility_slopes()
    place = N ** np.arange(T - 1, -1, -1, dtype=np.int64)
    best_val = -np.inf
    best_code = -1
    best_digits = None
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = (codes[:, None] // place[None, :]) % N
        r = np.empty((codes.shape[0], N))
        for n in range(N):
            r[:, n] = ((digits == n) * W[n][None, :]).sum(axis=1)
        vals = _objective_values(r, alphas, slopes, objective)
        m = int(np.argmax(vals))
        if vals[m] > best_val:
            best_val = float(vals[m])
            best_code = int(codes[m])
            best_digits = digits[m].copy()
    assert best_digits is not None and best_code >= 0
    return Allocation(slots=best_digits + 1), best_val
