"""Step 1 of the allocation: choose target weighted sum rates.

The achievable total weighted rate lies between the per-slot minimum and
maximum weights summed over the block. On that budget, the max-min objective
has an analytic solution that equalizes every sensor's weighted utility; the
weighted-sum objective just hands the budget to the steepest sensor.
"""
import numpy as np

from daraslot import (
    RabConfig,
    SensorSpec,
    achievable_budget,
    check_infinite_horizon_feasible,
    exponential_profile,
    feasibility_threshold,
    maxmin_rates,
    weightedsum_rates,
)

T = 60
deltas = [0.90, 0.93, 0.96]
hs = [3.0, 2.0, 1.0]
sensors = tuple(
    SensorSpec(id=i + 1, alpha=1 / 3, qbar=1.0, h=hs[i], profile=exponential_profile(deltas[i], T))
    for i in range(3)
)
rab = RabConfig(T=T, sensors=sensors)

rmin, rmax = achievable_budget(rab)
print(f"budget range for heterogeneous profiles: [{rmin:.4f}, {rmax:.4f}]")
print(f"feasibility threshold 1 - 1/N for N=3: {feasibility_threshold(3):.4f}")

target = maxmin_rates(rab, rmin)
print()
print("max-min targets (weighted utilities equalized):")
for s, r in zip(sensors, target.r):
    print(f"  sensor {s.id}: r* = {r:7.4f}   alpha*qbar*h*r* = {s.coefficient * r:.4f}")

corner = weightedsum_rates(rab, rmin)
print()
print("weighted-sum targets (corner solution):", np.round(corner.r, 4))

# Infinite-horizon feasibility for identical discounting: the whole simplex
# {r >= 0, sum r = 1/(1-delta)} is reachable iff delta >= 1 - 1/N.
print()
for delta in (0.45, 0.5, 0.8):
    r = np.array([1.2, 0.8]) * (0.5 / (1 - delta))
    ok = check_infinite_horizon_feasible(delta, 2, r)
    print(f"  N=2 delta={delta}: target {np.round(r, 3)} feasible -> {ok}")
