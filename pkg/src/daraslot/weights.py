"""Weight profile construction: exponential discounting, deadline histograms,
and discount-factor fitting.

A deadline histogram counts the bytes of a sensor's bitstream whose
transmission deadline falls in each slot of the block. Its survival function
(bytes still deliverable at or after slot t), normalized to start at 1, is the
sensor's weight profile: early slots are worth more because fewer deadlines
have expired.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, DegenerateProfile, DeltaOutOfRange, EmptyHistogram
from .model import WeightProfile, _frozen_array

# fitted discount factors are clamped into [0, 1 - DELTA_CLAMP]
DELTA_CLAMP = 1e-12


@dataclass(frozen=True)
class DeadlineHistogram:
    """Bytes of bitstream whose deadline falls at each slot 1..T.

    Histograms are per-block and already truncated to T slots; bytes whose
    deadline lands beyond the block belong in the final bucket.
    """

    bytes_by_deadline: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "bytes_by_deadline", _frozen_array(self.bytes_by_deadline)
        )

    @property
    def horizon(self) -> int:
        return self.bytes_by_deadline.shape[0]


def exponential_profile(delta: float, T: int) -> WeightProfile:
    """Geometric profile weights[t] = delta**(t-1) for slots 1..T."""
    if not (0.0 <= delta < 1.0):
        raise DeltaOutOfRange(f"delta must be in [0, 1), got {delta!r}")
    if T < 1:
        raise ValueError("T must be positive")
    return WeightProfile(weights=np.power(delta, np.arange(T)), delta=delta)


def profile_from_histogram(hist: DeadlineHistogram) -> WeightProfile:
    """Normalized survival function of a deadline histogram.

    weights[t] = S(t) / S(1) with S(t) = sum of bytes due at slot t or later.
    The result is non-increasing with weights[1] = 1 by construction. Scaling
    the histogram by any positive constant leaves the profile unchanged.
    """
    b = hist.bytes_by_deadline
    if np.any(b < 0):
        raise ValueError("histogram entries must be non-negative")
    survival = np.cumsum(b[::-1])[::-1]
    if survival[0] <= 0:
        raise EmptyHistogram("histogram has no positive mass")
    return WeightProfile(weights=survival / survival[0], delta=None)


def fit_exponential(profile: WeightProfile) -> float:
    """Log-least-squares discount factor estimate for a profile.

    Minimizes sum_t (log w_t - (t-1) log delta)^2 over the strictly positive
    weights; zero-weight tail slots are excluded. The closed form is
    log delta = sum x*y / sum x^2 with x = t-1, y = log w_t. A profile whose
    positive support is the single slot [1, 0, ..., 0] is the exact delta = 0
    member of the family, so 0 is returned for it. The estimate is clamped to
    [0, 1 - 1e-12].
    """
    w = profile.weights
    if w.shape[0] < 2:
        raise DegenerateProfile("need at least two slots to fit a discount factor")
    positive = w > 0
    if int(positive.sum()) < 2:
        # only w[0] = 1 survives: exactly the delta = 0 profile
        return 0.0
    x = np.arange(w.shape[0], dtype=float)[positive]
    y = np.log(w[positive])
    slope = float(x @ y) / float(x @ x)
    return float(np.clip(np.exp(slope), 0.0, 1.0 - DELTA_CLAMP))


def histogram_from_csv(path: str | Path) -> DeadlineHistogram:
    """Read a `slot,bytes` CSV (header required, slots 1..T contiguous)."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [c.strip() for c in header] != ["slot", "bytes"]:
                raise ConfigError(f"{path}: expected header 'slot,bytes'")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if not row or all(not c.strip() for c in row):
                    continue
                if len(row) != 2:
                    raise ConfigError(f"{path}:{lineno}: expected two columns, got {row!r}")
                try:
                    rows.append((int(row[0]), float(row[1])))
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: bad row {row!r}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read histogram {path}: {exc}") from exc
    if not rows:
        raise ConfigError(f"{path}: no data rows")
    slots = [s for s, _ in rows]
    if slots != list(range(1, len(rows) + 1)):
        raise ConfigError(f"{path}: slots must be contiguous 1..T, got {slots}")
    return DeadlineHistogram(bytes_by_deadline=np.array([b for _, b in rows]))
