import numpy as np
import pytest

from daraslot import (
    Allocation,
    DaraParams,
    InfeasibleDelta,
    InfeasibleTarget,
    InstanceTooLarge,
    LengthMismatch,
    NonPositiveShare,
    Objective,
    TargetDimensionMismatch,
    dara_allocate,
    decomposition_allocate,
    feasibility_threshold,
    optimal_exhaustive,
    r_round_robin,
    rates_of_allocation,
    rd_round_robin,
    round_robin,
)
from util import identical_rab, rab_from_weights, random_simplex


def feasible_instance(rng, n_max=5, t_max=50):
    """Random identical-delta block plus a target on the infinite budget.

    delta gets enough margin above the threshold, and T is capped so that
    delta**T stays well above float noise: the slot sequence comparison
    between the float index policy and the exact decomposition is only
    meaningful while residual gaps are resolvable in float64.
    """
    n = int(rng.integers(2, n_max + 1))
    delta = float(rng.uniform(feasibility_threshold(n) + 0.05, 0.97))
    t_cap = min(t_max, int(np.log(1e-8) / np.log(delta)))
    t = int(rng.integers(5, max(6, t_cap + 1)))
    target = random_simplex(rng, n) / (1.0 - delta)
    return identical_rab(n, delta, t), delta, n, t, target


# --- dara_allocate -----------------------------------------------------------


def test_dara_two_sensor_trace():
    rab = identical_rab(2, 0.5, 10)
    trace = dara_allocate(rab, np.array([1.2, 0.8]))
    assert list(trace.allocation.slots[:6]) == [1, 2, 2, 1, 1, 2]
    assert trace.residuals[4] == pytest.approx([0.0125, 0.05], abs=1e-12)


def test_dara_single_sensor():
    rab = identical_rab(1, 0.7, 6)
    trace = dara_allocate(rab, np.array([2.0]))
    assert list(trace.allocation.slots) == [1] * 6


def test_dara_starved_sensor_never_wins():
    rab = identical_rab(2, 0.5, 8)
    total = rab.sensors[0].profile.total_weight
    trace = dara_allocate(rab, np.array([total, 0.0]))
    assert list(trace.allocation.slots) == [1] * 8
    assert np.all(trace.indices[:, 1] == 0.0)


def test_dara_tie_breaks_to_lowest_id():
    rab = identical_rab(3, 0.9, 3)
    trace = dara_allocate(rab, np.array([1.0, 1.0, 1.0]))
    assert trace.allocation.slots[0] == 1


def test_dara_all_spent_falls_back_to_raw_residual():
    rab = rab_from_weights([[1, 1, 1], [1, 1, 1]], alphas=[0.5, 0.5])
    trace = dara_allocate(rab, np.array([0.0, -1.0]))
    # indices are all zero: slots go to the largest (least negative) residual
    assert trace.allocation.slots[0] == 1
    assert np.all(trace.indices[0] == 0.0)


def test_dara_target_dimension():
    rab = identical_rab(2, 0.5, 4)
    with pytest.raises(TargetDimensionMismatch):
        dara_allocate(rab, np.array([1.0, 1.0, 1.0]))


def test_dara_trace_shapes():
    rab = identical_rab(3, 0.8, 7)
    trace = dara_allocate(rab, np.array([1.0, 2.0, 2.0]))
    assert trace.residuals.shape == (7, 3)
    assert trace.indices.shape == (7, 3)
    assert len(trace.allocation) == 7


def test_dara_is_nonstationary():
    # flipping the slot-1 winner (via the target) changes later slots too,
    # unlike the cyclic baselines
    rab = identical_rab(2, 0.6, 20)
    base = dara_allocate(rab, np.array([1.3, 1.2])).allocation.slots
    flipped = dara_allocate(rab, np.array([1.2, 1.3])).allocation.slots
    assert base[0] != flipped[0]
    # divergence is not just the first slot
    assert np.any(base[1:] != flipped[1:])


# --- decomposition_allocate --------------------------------------------------


def test_decomposition_continuation_example():
    trace = decomposition_allocate(0.5, 2, 4, np.array([1.0, 1.0]))
    assert trace.allocation.slots[0] == 1
    assert trace.residuals[0] == pytest.approx([0.0, 2.0], abs=0)
    # normalized continuation (times 1-delta) is (0, 1)
    assert trace.residuals[0] * 0.5 == pytest.approx([0.0, 1.0], abs=0)


def test_decomposition_matches_dara_sequence():
    rab = identical_rab(2, 0.5, 20)
    target = np.array([1.2, 0.8])
    dara = dara_allocate(rab, target).allocation.slots
    dec = decomposition_allocate(0.5, 2, 20, target).allocation.slots
    assert np.array_equal(dara, dec)


def test_decomposition_infeasible_delta():
    with pytest.raises(InfeasibleDelta):
        decomposition_allocate(0.4, 2, 10, np.array([1.0, 1.0]))


def test_decomposition_infeasible_target():
    with pytest.raises(InfeasibleTarget):
        decomposition_allocate(0.5, 2, 10, np.array([3.0, 1.0]))
    with pytest.raises(InfeasibleTarget):
        decomposition_allocate(0.5, 2, 10, np.array([2.5, -0.5]))


def test_decomposition_accepts_truncated_budget():
    # targets summing to the finite-T budget are within the truncation slack
    delta, n, t = 0.6, 2, 12
    finite = (1 - delta**t) / (1 - delta)
    trace = decomposition_allocate(delta, n, t, np.array([finite / 2, finite / 2]))
    assert len(trace.allocation) == t


def test_decomposition_residual_sum_invariant():
    # with an exact-budget target the continuation total stays 1/(1-delta)
    rng = np.random.default_rng(2)
    for _ in range(10):
        rab, delta, n, t, target = feasible_instance(rng, n_max=4, t_max=30)
        trace = decomposition_allocate(delta, n, t, target)
        assert trace.residuals.sum(axis=1) == pytest.approx(
            [1.0 / (1.0 - delta)] * t, abs=1e-9
        )
        assert trace.residuals.min() >= -1e-9


def test_decomposition_residuals_are_scaled_dara_residuals():
    # g(t) = f(t) / delta**(t-1): same argmax, so identical slot sequences
    rng = np.random.default_rng(4)
    for _ in range(20):
        rab, delta, n, t, target = feasible_instance(rng, n_max=5, t_max=40)
        dara = dara_allocate(rab, target)
        dec = decomposition_allocate(delta, n, t, target)
        assert np.array_equal(dara.allocation.slots, dec.allocation.slots)
        scale = delta ** np.arange(1, t + 1)
        rebuilt = dec.residuals * scale[:, None]
        assert rebuilt == pytest.approx(dara.residuals, abs=1e-9)


# --- stationary baselines ----------------------------------------------------


def test_round_robin_examples():
    assert list(round_robin(identical_rab(3, 0.9, 6)).slots) == [1, 2, 3, 1, 2, 3]
    assert list(round_robin(identical_rab(1, 0.9, 4)).slots) == [1, 1, 1, 1]
    assert list(round_robin(identical_rab(4, 0.9, 3)).slots) == [1, 2, 3]


def test_weighted_round_robin_proportional_counts():
    rab = identical_rab(3, 0.9, 12)
    alloc = r_round_robin(rab, [3, 2, 1])
    assert list(np.bincount(alloc.slots, minlength=4)[1:]) == [6, 4, 2]


def test_weighted_round_robin_equal_shares_is_round_robin():
    rab = identical_rab(2, 0.9, 4)
    assert list(r_round_robin(rab, [1, 1]).slots) == [1, 2, 1, 2]


def test_weighted_round_robin_single_sensor():
    rab = identical_rab(1, 0.9, 3)
    assert list(r_round_robin(rab, [1.0]).slots) == [1, 1, 1]


def test_weighted_round_robin_is_cyclic():
    rab = identical_rab(3, 0.9, 24)
    slots = r_round_robin(rab, [3, 2, 1]).slots
    assert np.array_equal(slots[:6], slots[6:12])
    assert np.array_equal(slots[:12], slots[12:])


def test_weighted_round_robin_rejects_bad_shares():
    rab = identical_rab(2, 0.9, 4)
    with pytest.raises(NonPositiveShare):
        r_round_robin(rab, [1.0, 0.0])
    with pytest.raises(LengthMismatch):
        r_round_robin(rab, [1.0, 1.0, 1.0])


def test_rate_delay_round_robin_identical_reduces_to_round_robin():
    rab = identical_rab(3, 0.9, 9)
    assert np.array_equal(rd_round_robin(rab).slots, round_robin(rab).slots)


def test_rate_delay_round_robin_favors_delay_sensitive():
    # delta=0 profile has weight budget 1 vs 10 for the flat profile:
    # share ratio 10:1 gives sensor 1 nine of ten slots
    rab = rab_from_weights(
        [np.power(0.0, np.arange(10)), np.ones(10)], alphas=[0.5, 0.5]
    )
    counts = np.bincount(rd_round_robin(rab).slots, minlength=3)[1:]
    assert list(counts) == [9, 1]


def test_rate_delay_round_robin_single_sensor():
    rab = identical_rab(1, 0.5, 5)
    assert list(rd_round_robin(rab).slots) == [1] * 5


# --- exhaustive oracle -------------------------------------------------------


def test_exhaustive_single_sensor():
    rab = identical_rab(1, 0.9, 5)
    alloc, value = optimal_exhaustive(rab, Objective.MAX_MIN)
    assert list(alloc.slots) == [1] * 5
    assert value == pytest.approx(rab.sensors[0].profile.total_weight)


def test_exhaustive_symmetric_two_slots():
    rab = rab_from_weights([[1, 1], [1, 1]], alphas=[0.5, 0.5])
    alloc, value = optimal_exhaustive(rab, Objective.MAX_MIN)
    assert value == pytest.approx(0.5)
    # lexicographically smallest optimum
    assert list(alloc.slots) == [1, 2]


def test_exhaustive_matches_python_enumeration():
    from itertools import product

    rng = np.random.default_rng(13)
    for _ in range(5):
        n, t = 2, 6
        rab = identical_rab(
            n, 0.5, t, alphas=rng.random(n) + 0.2, hs=rng.random(n) + 0.2
        )
        best = (-np.inf, None)
        for combo in product(range(1, n + 1), repeat=t):
            r = rates_of_allocation(rab, Allocation(slots=np.array(combo))).r
            val = float((rab.coefficients() * r).min())
            if val > best[0]:
                best = (val, combo)
        alloc, value = optimal_exhaustive(rab, Objective.MAX_MIN)
        assert value == pytest.approx(best[0], abs=1e-12)
        assert tuple(alloc.slots) == best[1]


def test_exhaustive_weighted_sum_objective():
    rab = identical_rab(2, 0.5, 4, hs=[1.0, 3.0])
    alloc, value = optimal_exhaustive(rab, Objective.WEIGHTED_SUM)
    # all slots to the high-slope sensor
    assert list(alloc.slots) == [2, 2, 2, 2]
    assert value == pytest.approx(0.5 * 3.0 * rab.sensors[1].profile.total_weight)


def test_exhaustive_guard():
    rab = identical_rab(10, 0.95, 10)
    with pytest.raises(InstanceTooLarge):
        optimal_exhaustive(rab, Objective.MAX_MIN)


def test_exhaustive_chunking_invariance(monkeypatch):
    import daraslot.policies as pol

    rab = identical_rab(2, 0.7, 13, hs=[1.0, 1.3])  # 8192 codes
    before = optimal_exhaustive(rab, Objective.MAX_MIN)
    monkeypatch.setattr(pol, "_CHUNK", 100)
    after = pol.optimal_exhaustive(rab, Objective.MAX_MIN)
    assert before[1] == after[1]
    assert np.array_equal(before[0].slots, after[0].slots)


def test_policies_complete_and_deterministic():
    rng = np.random.default_rng(23)
    rab, delta, n, t, target = feasible_instance(rng)
    for runner in (
        lambda: dara_allocate(rab, target).allocation.slots,
        lambda: decomposition_allocate(delta, n, t, target).allocation.slots,
        lambda: round_robin(rab).slots,
        lambda: r_round_robin(rab, np.arange(1, n + 1)).slots,
        lambda: rd_round_robin(rab).slots,
    ):
        first, second = runner(), runner()
        assert len(first) == t
        assert np.all((first >= 1) & (first <= n))
        assert np.array_equal(first, second)
