"""Tiny shared builder for the demo scripts."""
from daraslot import RabConfig, SensorSpec, exponential_profile


def identical_block(n, delta, t, hs=None):
    profile = exponential_profile(delta, t)
    hs = hs or [1.0] * n
    sensors = tuple(
        SensorSpec(id=i + 1, alpha=1.0 / n, qbar=1.0, h=float(hs[i]), profile=profile)
        for i in range(n)
    )
    return RabConfig(T=t, sensors=sensors)
