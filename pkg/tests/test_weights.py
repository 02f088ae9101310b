import numpy as np
import pytest

from daraslot import (
    ConfigError,
    DeadlineHistogram,
    DegenerateProfile,
    DeltaOutOfRange,
    EmptyHistogram,
    WeightProfile,
    exponential_profile,
    fit_exponential,
    histogram_from_csv,
    profile_from_histogram,
    validate_profile,
)

# log-least-squares optimum for [1, 0.5, 0.5]; frozen from the closed form
# sum(x*y)/sum(x*x) = 3*log(0.5)/5 and cross-checked by grid search below
FIT_HALF_HALF = 0.6597539553864472


def test_exponential_examples():
    assert exponential_profile(0.0, 3).weights == pytest.approx([1, 0, 0], abs=0)
    assert exponential_profile(0.5, 4).weights == pytest.approx([1, 0.5, 0.25, 0.125], abs=0)
    assert exponential_profile(0.99, 2).weights == pytest.approx([1, 0.99], abs=0)


def test_exponential_delta_range():
    with pytest.raises(DeltaOutOfRange):
        exponential_profile(1.0, 3)
    with pytest.raises(DeltaOutOfRange):
        exponential_profile(-0.1, 3)


def test_histogram_survival_examples():
    # survival sums for [4,2,2] are 8,4,2
    assert profile_from_histogram(DeadlineHistogram([4, 2, 2])).weights == pytest.approx(
        [1, 0.5, 0.25], abs=0
    )
    assert profile_from_histogram(DeadlineHistogram([1, 0, 0])).weights == pytest.approx(
        [1, 0, 0], abs=0
    )
    assert profile_from_histogram(DeadlineHistogram([1, 1, 1, 1])).weights == pytest.approx(
        [1, 0.75, 0.5, 0.25], abs=0
    )


def test_histogram_empty():
    with pytest.raises(EmptyHistogram):
        profile_from_histogram(DeadlineHistogram([0.0, 0.0]))


def test_histogram_profiles_always_valid():
    rng = np.random.default_rng(5)
    for _ in range(300):
        T = int(rng.integers(1, 30))
        mass = rng.random(T) * (rng.random(T) < 0.6)
        if mass.sum() == 0:
            mass[int(rng.integers(0, T))] = rng.random() + 0.1
        profile = profile_from_histogram(DeadlineHistogram(mass))
        validate_profile(profile)


def test_histogram_scale_invariance():
    rng = np.random.default_rng(9)
    mass = rng.random(12)
    base = profile_from_histogram(DeadlineHistogram(mass))
    scaled = profile_from_histogram(DeadlineHistogram(mass * 37.5))
    assert scaled.weights == pytest.approx(base.weights, abs=1e-12)


def test_fit_recovers_exponential_exactly():
    for delta in (0.0, 0.3, 0.9, 0.995):
        assert fit_exponential(exponential_profile(delta, 50)) == pytest.approx(delta, abs=1e-9)


def test_fit_frozen_oracle_value():
    est = fit_exponential(WeightProfile(weights=[1, 0.5, 0.5]))
    assert est == pytest.approx(FIT_HALF_HALF, abs=1e-12)
    # independent check: dense grid search of the same least-squares objective
    grid = np.linspace(0.5, 0.8, 300001)
    x = np.array([0.0, 1.0, 2.0])
    y = np.log([1, 0.5, 0.5])
    loss = ((y[None, :] - np.log(grid)[:, None] * x[None, :]) ** 2).sum(axis=1)
    assert abs(grid[int(np.argmin(loss))] - est) < 2e-6


def test_fit_excludes_zero_tail():
    # positive head is exactly delta=0.5; trailing zeros must not poison the fit
    est = fit_exponential(WeightProfile(weights=[1, 0.5, 0.25, 0.0, 0.0]))
    assert est == pytest.approx(0.5, abs=1e-12)


def test_fit_delta_zero_profile_returns_zero():
    assert fit_exponential(WeightProfile(weights=[1, 0, 0, 0])) == 0.0


def test_fit_flat_profile_clamps_below_one():
    est = fit_exponential(WeightProfile(weights=[1.0, 1.0, 1.0]))
    assert est == pytest.approx(1.0 - 1e-12, abs=0)


def test_fit_needs_two_slots():
    with pytest.raises(DegenerateProfile):
        fit_exponential(WeightProfile(weights=[1.0]))


def test_histogram_csv_roundtrip(tmp_path):
    path = tmp_path / "hist.csv"
    path.write_text("slot,bytes\n1,4\n2,2\n3,2\n")
    hist = histogram_from_csv(path)
    assert hist.bytes_by_deadline == pytest.approx([4, 2, 2])
    assert profile_from_histogram(hist).weights == pytest.approx([1, 0.5, 0.25])


def test_histogram_csv_requires_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,4\n2,2\n")
    with pytest.raises(ConfigError):
        histogram_from_csv(path)


def test_histogram_csv_requires_contiguous_slots(tmp_path):
    path = tmp_path / "gap.csv"
    path.write_text("slot,bytes\n1,4\n3,2\n")
    with pytest.raises(ConfigError):
        histogram_from_csv(path)


def test_histogram_csv_requires_two_columns(tmp_path):
    path = tmp_path / "wide.csv"
    path.write_text("slot,bytes\n1,4,extra\n")
    with pytest.raises(ConfigError):
        histogram_from_csv(path)
