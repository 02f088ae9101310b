"""daraslot: delay-aware TDMA slot allocation.

Multiple senders share the T timeslots of a schedule block, and each sender
values early slots more than late ones because its packets expire. The only
information the allocator needs is one monotone non-increasing weight vector
per sender (plus a utility slope), not packet-level deadlines.

Allocation happens in two steps:

1. pick a target weighted-rate vector on the achievable budget
   (:func:`maxmin_rates` equalizes weighted utilities, or
   :func:`weightedsum_rates` for the linear objective);
2. realize it slot by slot with the non-stationary index policy
   :func:`dara_allocate`, whose per-slot index combines the remaining distance
   to target, the current slot's weight, and the discounted remaining
   opportunity. For identical exponential profiles,
   :func:`decomposition_allocate` realizes any feasible vector exactly
   (discount factor at least 1 - 1/N), and :func:`optimal_exhaustive` provides
   the ground truth on desk-scale instances.

Stationary baselines (:func:`round_robin`, :func:`r_round_robin`,
:func:`rd_round_robin`) are included for comparison, plus an experiment
harness (:mod:`daraslot.experiment`) and a CLI (``daraslot``).

Example::

    import numpy as np
    from daraslot import (
        RabConfig, SensorSpec, exponential_profile, achievable_budget,
        maxmin_rates, dara_allocate, utility,
    )

    profile = exponential_profile(0.9, T=40)
    sensors = tuple(
        SensorSpec(id=i + 1, alpha=0.5, qbar=1.0, h=1.0, profile=profile)
        for i in range(2)
    )
    rab = RabConfig(T=40, sensors=sensors)
    target = maxmin_rates(rab, achievable_budget(rab)[0])
    trace = dara_allocate(rab, target)
    print(utility(rab, trace.allocation).per_sensor_utility)
"""

from .errors import (
    AlphaSumMismatch,
    BadNormalization,
    ConfigError,
    DaraError,
    DegenerateProfile,
    DeltaOne,
    DeltaOutOfRange,
    EmptyHistogram,
    InfeasibleDelta,
    InfeasibleTarget,
    InstanceTooLarge,
    LengthMismatch,
    NonMonotoneWeights,
    NonPositiveShare,
    TargetDimensionMismatch,
    UnknownPolicy,
    ZeroUtilityCoefficient,
)
from .experiment import (
    AlphaRule,
    ExperimentConfig,
    HDistribution,
    ProfileSpec,
    ResultRow,
    build_rab,
    load_config,
    rows_to_csv,
    run_scenario,
    splitmix64,
    sweep,
    write_csv,
)
from .metrics import (
    UtilityReport,
    display_normalized,
    gap_bound,
    geometric_budget,
    normalized_rates,
    utility,
)
from .model import (
    Allocation,
    RabConfig,
    RateVector,
    SensorSpec,
    WeightProfile,
    rates_of_allocation,
    validate_profile,
    validate_rab,
)
from .policies import (
    DaraParams,
    PolicyTrace,
    dara_allocate,
    decomposition_allocate,
    optimal_exhaustive,
    r_round_robin,
    rd_round_robin,
    round_robin,
)
from .rates import (
    Objective,
    achievable_budget,
    check_infinite_horizon_feasible,
    feasibility_threshold,
    maxmin_rates,
    target_rates,
    weightedsum_rates,
)
from .weights import (
    DeadlineHistogram,
    exponential_profile,
    fit_exponential,
    histogram_from_csv,
    profile_from_histogram,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "AlphaRule",
    "AlphaSumMismatch",
    "BadNormalization",
    "ConfigError",
    "DaraError",
    "DaraParams",
    "DeadlineHistogram",
    "DegenerateProfile",
    "DeltaOne",
    "DeltaOutOfRange",
    "EmptyHistogram",
    "ExperimentConfig",
    "HDistribution",
    "InfeasibleDelta",
    "InfeasibleTarget",
    "InstanceTooLarge",
    "LengthMismatch",
    "NonMonotoneWeights",
    "NonPositiveShare",
    "Objective",
    "PolicyTrace",
    "ProfileSpec",
    "RabConfig",
    "RateVector",
    "ResultRow",
    "SensorSpec",
    "TargetDimensionMismatch",
    "UnknownPolicy",
    "UtilityReport",
    "WeightProfile",
    "ZeroUtilityCoefficient",
    "achievable_budget",
    "build_rab",
    "check_infinite_horizon_feasible",
    "dara_allocate",
    "decomposition_allocate",
    "display_normalized",
    "exponential_profile",
    "feasibility_threshold",
    "fit_exponential",
    "gap_bound",
    "geometric_budget",
    "histogram_from_csv",
    "load_config",
    "maxmin_rates",
    "normalized_rates",
    "optimal_exhaustive",
    "profile_from_histogram",
    "r_round_robin",
    "rates_of_allocation",
    "rd_round_robin",
    "round_robin",
    "rows_to_csv",
    "run_scenario",
    "splitmix64",
    "sweep",
    "target_rates",
    "utility",
    "validate_profile",
    "validate_rab",
    "weightedsum_rates",
    "write_csv",
]
