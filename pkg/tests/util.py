"""Shared builders for the test suite."""
import numpy as np

from daraslot import RabConfig, SensorSpec, WeightProfile, exponential_profile


def identical_rab(N, delta, T, h=1.0, qbar=1.0, alphas=None, hs=None):
    """Block with one shared exponential profile; alpha defaults to 1/N."""
    profile = exponential_profile(delta, T)
    if alphas is None:
        alphas = [1.0 / N] * N
    if hs is None:
        hs = [h] * N
    sensors = tuple(
        SensorSpec(id=i + 1, alpha=float(alphas[i]), qbar=qbar, h=float(hs[i]), profile=profile)
        for i in range(N)
    )
    return RabConfig(T=T, sensors=sensors)


def rab_from_weights(weight_rows, alphas=None, qbars=None, hs=None):
    """Block from explicit per-sensor weight vectors."""
    N = len(weight_rows)
    T = len(weight_rows[0])
    if alphas is None:
        alphas = [1.0 / N] * N
    if qbars is None:
        qbars = [1.0] * N
    if hs is None:
        hs = [1.0] * N
    sensors = tuple(
        SensorSpec(
            id=i + 1,
            alpha=float(alphas[i]),
            qbar=float(qbars[i]),
            h=float(hs[i]),
            profile=WeightProfile(weights=np.asarray(weight_rows[i], dtype=float)),
        )
        for i in range(N)
    )
    return RabConfig(T=T, sensors=sensors)


def random_simplex(rng, n):
    x = rng.random(n) + 1e-3
    return x / x.sum()
