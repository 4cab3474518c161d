"""Command-line entry point.

    loopforms verify --suite all --seed 7 --format json --out report.json
    loopforms table coefficients --kmax 20

Configuration can also come from a json file (--config); explicit flags
override file values, and LOOPFORMS_SEED overrides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .report import (
    DEFAULT_SEED,
    ConfigError,
    RunConfig,
    SUITES,
    coefficient_table,
    emit_report,
    run_suite,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loopforms")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", default="all", help=f"one of {SUITES + ['all']}")
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--n", type=int, default=None, help="su(n) rank parameter")
    verify.add_argument("--samples", type=int, default=None, help="loop samples N")
    verify.add_argument("--step", type=float, default=None, help="finite-difference step")
    verify.add_argument("--format", default="text", choices=["json", "csv", "text"])
    verify.add_argument("--out", default=None, help="write the report to a file")
    verify.add_argument("--config", default=None, help="json file with config fields")

    table = sub.add_parser("table", help="print exact coefficient tables")
    table.add_argument("what", choices=["coefficients"])
    table.add_argument("--kmax", type=int, default=20)
    table.add_argument("--out", default=None)
    return parser


def _config_from_args(args) -> RunConfig:
    fields: dict = {}
    if args.config:
        with open(args.config) as fh:
            fields.update(json.load(fh))
    env_seed = os.environ.get("LOOPFORMS_SEED")
    if env_seed is not None and "seed" not in fields:
        fields["seed"] = int(env_seed)
    overrides = {
        "suite": args.suite,
        "seed": args.seed,
        "n": args.n,
        "samples": args.samples,
        "fd_step": args.step,
    }
    for key, val in overrides.items():
        if val is not None:
            fields[key] = val
    fields.setdefault("suite", "all")
    fields.setdefault("seed", DEFAULT_SEED)
    allowed = {
        "n",
        "samples",
        "pathfib_samples",
        "fd_step",
        "seed",
        "suite",
        "tolerance_overrides",
    }
    unknown = set(fields) - allowed
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    return RunConfig(**fields)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            config = _config_from_args(args)
            config.validate()
            report = run_suite(config)
            text = emit_report(report, args.format)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0 if report.all_passed else 1
        if args.command == "table":
            text = coefficient_table(args.kmax)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
