"""Config-driven experiment harness: scenarios, parameter sweeps, CSV output.

A scenario is one resource allocation block specification plus a list of
policies to run on it. Sweeps vary one axis (N, delta or T) over a list of
values with a configurable number of seeded repetitions; per-repetition seeds
are derived from the base seed with the splitmix64 mixer, so cells can run in
any order (or concurrently) and still produce identical output -- rows are
sorted before emission and wall times are kept out of the CSV.

Config files are JSON with these case-sensitive keys (see README):
scenario, N, T, profiles, objective, dara_params, h, qbar, alpha, seed,
policies, budget.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError, InfeasibleDelta, InfeasibleTarget, UnknownPolicy
from .metrics import utility
from .model import Allocation, RabConfig, RateVector, SensorSpec, validate_rab
from .policies import (
    DaraParams,
    dara_allocate,
    decomposition_allocate,
    optimal_exhaustive,
    r_round_robin,
    rd_round_robin,
    round_robin,
)
from .rates import Objective, achievable_budget, target_rates
from .weights import exponential_profile, histogram_from_csv, profile_from_histogram

POLICY_NAMES = ("dara", "decomposition", "rr", "rrr", "rdrr", "optimal")

CSV_COLUMNS = (
    "scenario",
    "policy",
    "N",
    "T",
    "delta",
    "seed",
    "sensor",
    "r_target",
    "r_achieved",
    "Q",
    "W",
    "gap",
    "gap_bound",
)

# h draws from a Normal can fall to zero or below; clamp keeps qbar*h positive
H_FLOOR = 1e-6

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """Standard splitmix64 mix; derives per-repetition seeds from base + index."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class HDistribution:
    """Frames-per-slot distribution: Constant(value) or Normal(mean, stddev)."""

    kind: str = "Constant"
    value: float = 1.0
    mean: float = 0.0
    stddev: float = 0.0

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "Constant":
            return np.full(n, float(self.value))
        if self.kind == "Normal":
            return np.clip(rng.normal(self.mean, self.stddev, n), H_FLOOR, None)
        raise ConfigError(f"unknown h distribution kind {self.kind!r}")


@dataclass(frozen=True)
class AlphaRule:
    """Objective weights: Uniform 1/N or an Explicit vector."""

    kind: str = "Uniform"
    values: tuple[float, ...] | None = None

    def make(self, n: int) -> np.ndarray:
        if self.kind == "Uniform":
            return np.full(n, 1.0 / n)
        if self.kind == "Explicit":
            if self.values is None or len(self.values) != n:
                raise ConfigError(f"explicit alphas must list {n} values")
            return np.array(self.values, dtype=float)
        raise ConfigError(f"unknown alpha rule kind {self.kind!r}")


@dataclass(frozen=True)
class ProfileSpec:
    """Per-sensor profile source: a discount factor or a histogram CSV path."""

    delta: float | None = None
    histogram: str | None = None

    def build(self, T: int):
        if (self.delta is None) == (self.histogram is None):
            raise ConfigError("profile spec needs exactly one of delta / histogram")
        if self.delta is not None:
            return exponential_profile(self.delta, T)
        return profile_from_histogram(histogram_from_csv(self.histogram))


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    N: int
    T: int
    profiles: tuple[ProfileSpec, ...]
    seed: int
    objective: Objective = Objective.MAX_MIN
    dara_params: DaraParams = field(default_factory=DaraParams)
    h: HDistribution = field(default_factory=HDistribution)
    qbar: float = 1.0
    alpha: AlphaRule = field(default_factory=AlphaRule)
    policies: tuple[str, ...] = ("dara",)
    budget: float | None = None


@dataclass
class ResultRow:
    """One sensor of one policy run; repetition and wall time stay out of the CSV."""

    scenario: str
    policy: str
    N: int
    T: int
    delta: float | None
    seed: int
    repetition: int
    sensor: int
    r_target: float
    r_achieved: float
    Q: float
    W: float
    gap: float
    gap_bound: float
    wall_time: float


_CONFIG_KEYS = {
    "scenario",
    "N",
    "T",
    "profiles",
    "objective",
    "dara_params",
    "h",
    "qbar",
    "alpha",
    "seed",
    "policies",
    "budget",
}


def load_config(source: str | Path | dict) -> ExperimentConfig:
    """Build an ExperimentConfig from a JSON file path or an equivalent dict."""
    base_dir = Path.cwd()
    if not isinstance(source, dict):
        path = Path(source)
        base_dir = path.parent
        try:
            source = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(source, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(source) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = {"scenario", "N", "T", "profiles", "seed"} - set(source)
    if missing:
        raise ConfigError(f"missing config keys: {sorted(missing)}")
    try:
        n = int(source["N"])
        t = int(source["T"])
        seed = int(source["seed"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"N, T and seed must be integers: {exc}") from exc
    if n < 1 or t < 1:
        raise ConfigError("N and T must be at least 1")
    if not (0 <= seed < 1 << 64):
        raise ConfigError("seed must be an unsigned 64-bit integer")

    raw_profiles = source["profiles"]
    if not isinstance(raw_profiles, list) or not raw_profiles:
        raise ConfigError("profiles must be a non-empty list")
    specs = []
    for entry in raw_profiles:
        if not isinstance(entry, dict):
            raise ConfigError(f"profile spec must be an object, got {entry!r}")
        delta = entry.get("delta")
        hist = entry.get("histogram")
        if set(entry) - {"delta", "histogram"}:
            raise ConfigError(f"profile spec keys must be delta/histogram: {entry!r}")
        if hist is not None:
            hist = str((base_dir / hist) if not Path(hist).is_absolute() else Path(hist))
        specs.append(ProfileSpec(delta=delta, histogram=hist))

    try:
        objective = Objective(source.get("objective", "MaxMin"))
    except ValueError as exc:
        raise ConfigError(f"objective must be MaxMin or WeightedSum: {exc}") from exc

    dara_raw = source.get("dara_params", {})
    if not isinstance(dara_raw, dict) or set(dara_raw) - {"mu", "nu", "gamma", "tail_floor"}:
        raise ConfigError(f"bad dara_params: {dara_raw!r}")
    params = DaraParams(**{k: float(v) for k, v in dara_raw.items()})

    h_raw = source.get("h", {"kind": "Constant", "value": 1.0})
    if not isinstance(h_raw, dict) or "kind" not in h_raw:
        raise ConfigError(f"bad h distribution: {h_raw!r}")
    if h_raw["kind"] == "Constant":
        hdist = HDistribution(kind="Constant", value=float(h_raw.get("value", 1.0)))
    elif h_raw["kind"] == "Normal":
        hdist = HDistribution(
            kind="Normal",
            mean=float(h_raw.get("mean", 0.0)),
            stddev=float(h_raw.get("stddev", 0.0)),
        )
    else:
        raise ConfigError(f"h kind must be Constant or Normal: {h_raw!r}")

    alpha_raw = source.get("alpha", {"kind": "Uniform"})
    if not isinstance(alpha_raw, dict) or alpha_raw.get("kind") not in ("Uniform", "Explicit"):
        raise ConfigError(f"alpha kind must be Uniform or Explicit: {alpha_raw!r}")
    alpha = AlphaRule(
        kind=alpha_raw["kind"],
        values=tuple(alpha_raw["values"]) if "values" in alpha_raw else None,
    )

    policies = tuple(source.get("policies", ["dara"]))
    if not policies:
        raise ConfigError("policies must be non-empty")
    for p in policies:
        if p not in POLICY_NAMES:
            raise UnknownPolicy(f"unknown policy {p!r}; choose from {POLICY_NAMES}")

    budget = source.get("budget")
    return ExperimentConfig(
        scenario=str(source["scenario"]),
        N=n,
        T=t,
        profiles=tuple(specs),
        seed=seed,
        objective=objective,
        dara_params=params,
        h=hdist,
        qbar=float(source.get("qbar", 1.0)),
        alpha=alpha,
        policies=policies,
        budget=float(budget) if budget is not None else None,
    )


def build_rab(config: ExperimentConfig) -> RabConfig:
    """Materialize the block: profiles, seeded h draws, alphas."""
    if len(config.profiles) == 1:
        specs = config.profiles * config.N
    elif len(config.profiles) == config.N:
        specs = config.profiles
    else:
        raise ConfigError(
            f"profiles must list 1 or N={config.N} specs, got {len(config.profiles)}"
        )
    built = {}
    profiles = []
    for spec in specs:
        if spec not in built:
            built[spec] = spec.build(config.T)
        profiles.append(built[spec])
    rng = np.random.default_rng(config.seed)
    h = config.h.draw(rng, config.N)
    alphas = config.alpha.make(config.N)
    sensors = tuple(
        SensorSpec(id=i + 1, alpha=float(alphas[i]), qbar=config.qbar, h=float(h[i]), profile=profiles[i])
        for i in range(config.N)
    )
    rab = RabConfig(T=config.T, sensors=sensors)
    validate_rab(rab)
    return rab


def _shared_delta(rab: RabConfig) -> float:
    deltas = {s.profile.delta for s in rab.sensors}
    if len(deltas) != 1 or None in deltas:
        raise InfeasibleDelta(
            "decomposition policy needs one shared exponential discount factor"
        )
    return deltas.pop()


def run_policy(name: str, rab: RabConfig, target: RateVector, config: ExperimentConfig) -> Allocation:
    """Dispatch one policy by name and return its allocation."""
    if name == "dara":
        return dara_allocate(rab, target, config.dara_params).allocation
    if name == "decomposition":
        return decomposition_allocate(_shared_delta(rab), rab.N, rab.T, target).allocation
    if name == "rr":
        return round_robin(rab)
    if name == "rrr":
        return r_round_robin(rab, rab.utility_slopes())
    if name == "rdrr":
        return rd_round_robin(rab)
    if name == "optimal":
        return optimal_exhaustive(rab, config.objective)[0]
    raise UnknownPolicy(f"unknown policy {name!r}")


def run_scenario(config: ExperimentConfig, repetition: int = 0) -> list[ResultRow]:
    """Run every requested policy on one materialized block.

    Identical (config, seed) pairs produce identical rows apart from wall
    times, which never reach the CSV.
    """
    rab = build_rab(config)
    rmin, rmax = achievable_budget(rab)
    budget = config.budget if config.budget is not None else rmin
    if not (rmin - 1e-9 <= budget <= rmax + 1e-9):
        raise InfeasibleTarget(
            f"budget {budget!r} outside achievable range [{rmin!r}, {rmax!r}]"
        )
    target = target_rates(rab, config.objective, budget)
    rows = []
    for name in config.policies:
        start = time.perf_counter()
        alloc = run_policy(name, rab, target, config)
        wall = time.perf_counter() - start
        report = utility(rab, alloc, config.objective, target)
        for i, sensor in enumerate(rab.sensors):
            d = sensor.profile.delta
            rows.append(
                ResultRow(
                    scenario=config.scenario,
                    policy=name,
                    N=rab.N,
                    T=rab.T,
                    delta=d,
                    seed=config.seed,
                    repetition=repetition,
                    sensor=sensor.id,
                    r_target=float(target.r[i]),
                    r_achieved=float(report.per_sensor_rate.r[i]),
                    Q=float(report.per_sensor_utility[i]),
                    W=report.objective_value,
                    gap=float(report.gap_to_target[i]),
                    gap_bound=d ** rab.T if d is not None else float("nan"),
                    wall_time=wall,
                )
            )
    return rows


def _coerce_axis_value(value):
    """Normalize numpy scalars/arrays so names and specs use plain Python types."""
    if isinstance(value, (list, tuple, np.ndarray)):
        return [float(x) for x in value]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def _axis_scenario(base: str, axis: str, value) -> str:
    if isinstance(value, list):
        tag = f"{value[0]!r}..{value[-1]!r}"
    else:
        tag = repr(value) if isinstance(value, float) else str(value)
    return f"{base}/{axis}={tag}"


def _apply_axis(base: ExperimentConfig, axis: str, value) -> ExperimentConfig:
    if axis == "N":
        if len(base.profiles) != 1:
            raise ConfigError("an N sweep needs a single broadcastable profile spec")
        return replace(base, N=int(value))
    if axis == "T":
        return replace(base, T=int(value))
    if axis == "delta":
        if isinstance(value, (list, tuple)):
            specs = tuple(ProfileSpec(delta=float(d)) for d in value)
        else:
            specs = (ProfileSpec(delta=float(value)),)
        return replace(base, profiles=specs)
    raise ConfigError(f"sweep axis must be N, delta or T, got {axis!r}")


def sweep(base: ExperimentConfig, axis: dict, repetitions: int = 1) -> list[ResultRow]:
    """Cross one axis with seeded repetitions; returns raw plus aggregate rows.

    Repetition k runs with seed splitmix64(base.seed + k). Aggregates (mean and
    min over repetitions, per scenario/policy/sensor) are appended with the
    scenario suffixed by ``|mean`` / ``|min``. All rows are sorted by
    (scenario, policy, repetition, sensor) so output order never depends on
    execution order.
    """
    if repetitions < 1:
        raise ConfigError("repetitions must be at least 1")
    if len(axis) != 1:
        raise ConfigError("sweep takes exactly one axis")
    (axis_name, values), = axis.items()
    raw: list[ResultRow] = []
    for value in values:
        value = _coerce_axis_value(value)
        cell = _apply_axis(base, axis_name, value)
        cell = replace(cell, scenario=_axis_scenario(base.scenario, axis_name, value))
        for rep in range(repetitions):
            rep_cfg = replace(cell, seed=splitmix64((base.seed + rep) & _MASK64))
            raw.extend(run_scenario(rep_cfg, repetition=rep))

    groups: dict[tuple, list[ResultRow]] = {}
    for row in raw:
        groups.setdefault((row.scenario, row.policy, row.sensor), []).append(row)
    aggregates: list[ResultRow] = []
    for (scenario, policy, sensor), rows in sorted(groups.items()):
        for tag, agg in (("mean", lambda xs: sum(xs) / len(xs)), ("min", min)):
            first = rows[0]
            aggregates.append(
                ResultRow(
                    scenario=f"{scenario}|{tag}",
                    policy=policy,
                    N=first.N,
                    T=first.T,
                    delta=first.delta,
                    seed=base.seed,
                    repetition=-1,
                    sensor=sensor,
                    r_target=agg([r.r_target for r in rows]),
                    r_achieved=agg([r.r_achieved for r in rows]),
                    Q=agg([r.Q for r in rows]),
                    W=agg([r.W for r in rows]),
                    gap=agg([r.gap for r in rows]),
                    gap_bound=first.gap_bound,
                    wall_time=agg([r.wall_time for r in rows]),
                )
            )
    out = raw + aggregates
    out.sort(key=lambda r: (r.scenario, r.policy, r.repetition, r.sensor))
    return out


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        # plain-float repr is the shortest round-trip form; the cast also
        # keeps numpy scalars from printing as np.float64(...)
        return "" if math.isnan(value) else repr(float(value))
    return str(value)


def write_csv(rows: list[ResultRow], out) -> None:
    """Emit rows with the fixed column order; floats use shortest repr."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.scenario,
                row.policy,
                row.N,
                row.T,
                _fmt(row.delta),
                row.seed,
                row.sensor,
                _fmt(row.r_target),
                _fmt(row.r_achieved),
                _fmt(row.Q),
                _fmt(row.W),
                _fmt(row.gap),
                _fmt(row.gap_bound),
            ]
        )


def rows_to_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()
