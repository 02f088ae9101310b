"""Desk-scale ground truth: enumerate every possible allocation.

There are N**T candidate allocations, so exhaustive search stops being viable
almost immediately (2 sensors x 100 slots is already > 1e30). On tiny blocks
it is the perfect oracle: here the index policy lands within the guaranteed
delta**T slack of the enumerated optimum.
"""
import time

import numpy as np

from daraslot import (
    Objective,
    achievable_budget,
    dara_allocate,
    maxmin_rates,
    optimal_exhaustive,
    utility,
)
from util_demo import identical_block

print("  N   T     W(index)    W(optimal)   slack (c*delta^T)   enumerated    secs")
for n, delta in ((2, 0.5), (3, 2 / 3)):
    for T in (6, 8, 10):
        rab = identical_block(n, delta, T)
        target = maxmin_rates(rab, achievable_budget(rab)[0])
        w_dara = utility(rab, dara_allocate(rab, target).allocation).objective_value
        start = time.perf_counter()
        alloc, w_opt = optimal_exhaustive(rab, Objective.MAX_MIN)
        secs = time.perf_counter() - start
        slack = float(rab.coefficients().max()) * (1 - delta**T) / (1 - delta) * delta**T
        print(
            f"  {n}  {T:2d}   {w_dara:10.6f}   {w_opt:10.6f}   {slack:12.6f}"
            f"   {n**T:9d}   {secs:5.2f}"
        )
        assert w_dara >= w_opt - slack

print()
print("example optimal sequence (N=3, T=8):",
      optimal_exhaustive(identical_block(3, 2 / 3, 8), Objective.MAX_MIN)[0].slots)
