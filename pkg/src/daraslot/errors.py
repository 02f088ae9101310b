"""Exception types shared by all modules.

Every library error derives from :class:`DaraError` so callers can catch one
base class. The concrete names below are part of the public contract; the CLI
maps them onto exit codes (config error = 2, infeasible instance = 3,
enumeration guard = 4).
"""


class DaraError(Exception):
    """Base class for all daraslot errors."""


class LengthMismatch(DaraError):
    """A vector does not have the expected length (profile vs T, etc.)."""


class NonMonotoneWeights(DaraError):
    """Weight profile increases somewhere; profiles must be non-increasing."""


class BadNormalization(DaraError):
    """Weight profile is not normalized: first weight != 1 or values leave [0, 1]."""


class AlphaSumMismatch(DaraError):
    """Objective weights alpha do not sum to 1."""


class DeltaOutOfRange(DaraError):
    """Discount factor outside [0, 1)."""


class EmptyHistogram(DaraError):
    """Deadline histogram contains no positive mass."""


class DegenerateProfile(DaraError):
    """Profile too short to fit a discount factor."""


class ZeroUtilityCoefficient(DaraError):
    """Some alpha * qbar * h is zero, so max-min rates are undefined."""


class TargetDimensionMismatch(DaraError):
    """Target rate vector length differs from the sensor count."""


class InfeasibleDelta(DaraError):
    """Discount factor below the 1 - 1/N feasibility threshold."""


class InfeasibleTarget(DaraError):
    """Target rates are negative or inconsistent with the achievable budget."""


class NonPositiveShare(DaraError):
    """Weighted round-robin share is zero or negative."""


class InstanceTooLarge(DaraError):
    """Exhaustive search would exceed the N**T enumeration guard."""


class UnknownPolicy(DaraError):
    """Policy name not one of the supported identifiers."""


class DeltaOne(DaraError):
    """delta = 1 has no infinite-horizon normalization."""


class ConfigError(DaraError):
    """Malformed experiment config or input file."""
