"""Reproduce the numerical study: index policy vs round-robin baselines.

Identical discounting first (delta in {0.99, 0.995}, N from 2 to 10, T = 500,
frames-per-slot drawn from Normal(200, 20), max-min objective), then the
heterogeneous case with six discount factors equally spaced in a narrow band.
The index policy tracks the common target utility to within the delta**T
bound; the stationary baselines cannot, and their minimum utility drops.
"""
import numpy as np

from daraslot import (
    ExperimentConfig,
    HDistribution,
    Objective,
    ProfileSpec,
    run_scenario,
    sweep,
)

base = ExperimentConfig(
    scenario="identical",
    N=2,
    T=500,
    profiles=(ProfileSpec(delta=0.99),),
    seed=20260810,
    objective=Objective.MAX_MIN,
    h=HDistribution(kind="Normal", mean=200.0, stddev=20.0),
    policies=("dara", "rr", "rrr"),
)

for delta in (0.99, 0.995):
    cfg = ExperimentConfig(**{**base.__dict__, "profiles": (ProfileSpec(delta=delta),)})
    rows = [r for r in sweep(cfg, {"N": list(range(2, 11))}, repetitions=1) if r.repetition == 0]
    table = {}
    for row in rows:
        table.setdefault(row.N, {})[row.policy] = row.W
    print(f"min utility W by N (delta = {delta}, T = 500)")
    print("   N      dara        rr       rrr")
    for n in range(2, 11):
        w = table[n]
        print(f"  {n:2d}  {w['dara']:9.2f} {w['rr']:9.2f} {w['rrr']:9.2f}")
    print()

print("heterogeneous discounting (N = 6, T = 500, budget = per-slot minimum)")
for lo, hi in ((0.990, 0.992), (0.995, 0.997)):
    deltas = np.linspace(lo, hi, 6)
    cfg = ExperimentConfig(
        scenario=f"hetero-{lo}",
        N=6,
        T=500,
        profiles=tuple(ProfileSpec(delta=float(d)) for d in deltas),
        seed=8123,
        objective=Objective.MAX_MIN,
        h=HDistribution(kind="Normal", mean=200.0, stddev=20.0),
        policies=("dara", "rr", "rrr", "rdrr"),
    )
    w = {row.policy: row.W for row in run_scenario(cfg)}
    print(f"  deltas in [{lo}, {hi}]: " + "  ".join(f"{p}={w[p]:.2f}" for p in cfg.policies))
