"""Command line interface.

Subcommands::

    daraslot allocate CONFIG            one block -> allocation + report (JSON)
    daraslot sweep CONFIG --axis A --values JSON [--repetitions K] [--out F]
    daraslot oracle CONFIG              exhaustive optimum on a tiny instance
    daraslot fit HISTOGRAM_CSV          discount factor fitted to a histogram

Exit codes: 0 success, 2 config error, 3 infeasible instance, 4 enumeration
guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import (
    DaraError,
    InfeasibleDelta,
    InfeasibleTarget,
    InstanceTooLarge,
    ZeroUtilityCoefficient,
)
from .experiment import build_rab, load_config, run_policy, sweep, write_csv
from .metrics import utility
from .policies import optimal_exhaustive
from .rates import achievable_budget, target_rates
from .weights import fit_exponential, histogram_from_csv, profile_from_histogram


def _nan_to_none(x: float):
    return None if math.isnan(x) else x


def _cmd_allocate(args) -> int:
    config = load_config(args.config)
    rab = build_rab(config)
    rmin, rmax = achievable_budget(rab)
    budget = config.budget if config.budget is not None else rmin
    if not (rmin - 1e-9 <= budget <= rmax + 1e-9):
        raise InfeasibleTarget(f"budget {budget!r} outside [{rmin!r}, {rmax!r}]")
    target = target_rates(rab, config.objective, budget)
    results = []
    for name in config.policies:
        alloc = run_policy(name, rab, target, config)
        report = utility(rab, alloc, config.objective, target)
        results.append(
            {
                "policy": name,
                "allocation": [int(s) for s in alloc.slots],
                "r_target": [float(x) for x in target.r],
                "r_achieved": [float(x) for x in report.per_sensor_rate.r],
                "Q": [float(x) for x in report.per_sensor_utility],
                "W": report.objective_value,
                "gap": [float(x) for x in report.gap_to_target],
                "gap_bound": _nan_to_none(report.gap_bound),
            }
        )
    doc = {
        "scenario": config.scenario,
        "N": rab.N,
        "T": rab.T,
        "objective": config.objective.value,
        "budget": budget,
        "results": results,
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    try:
        values = json.loads(args.values)
    except json.JSONDecodeError as exc:
        raise DaraError(f"--values must be JSON: {exc}") from exc
    if not isinstance(values, list) or not values:
        raise DaraError("--values must be a non-empty JSON list")
    rows = sweep(config, {args.axis: values}, repetitions=args.repetitions)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


def _cmd_oracle(args) -> int:
    config = load_config(args.config)
    rab = build_rab(config)
    alloc, value = optimal_exhaustive(rab, config.objective)
    report = utility(rab, alloc, config.objective)
    doc = {
        "scenario": config.scenario,
        "objective": config.objective.value,
        "allocation": [int(s) for s in alloc.slots],
        "value": value,
        "Q": [float(x) for x in report.per_sensor_utility],
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_fit(args) -> int:
    profile = profile_from_histogram(histogram_from_csv(args.histogram))
    print(repr(fit_exponential(profile)))
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="daraslot",
        description="Delay-aware TDMA slot allocation.",
        epilog="exit codes: 0 success, 2 config error, 3 infeasible instance, "
        "4 enumeration guard exceeded",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("allocate", help="run the configured policies on one block")
    p.add_argument("config", help="JSON experiment config")
    p.set_defaults(func=_cmd_allocate)

    p = sub.add_parser("sweep", help="sweep one axis and emit a CSV")
    p.add_argument("config", help="JSON experiment config")
    p.add_argument("--axis", required=True, choices=("N", "delta", "T"))
    p.add_argument(
        "--values",
        required=True,
        help="JSON list of axis values, e.g. '[2,3,4]' or '[[0.99,0.992],[0.995,0.997]]'",
    )
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("oracle", help="exhaustive optimum (desk-scale instances)")
    p.add_argument("config", help="JSON experiment config")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("fit", help="fit a discount factor to a histogram CSV")
    p.add_argument("histogram", help="CSV with header slot,bytes")
    p.set_defaults(func=_cmd_fit)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (InfeasibleDelta, InfeasibleTarget, ZeroUtilityCoefficient) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DaraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
