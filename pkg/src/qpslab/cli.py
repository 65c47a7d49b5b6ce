"""Command-line interface: seeded verification campaigns and evaluations.

Exit codes: 0 all checks passed, 1 some check failed, 2 usage or input
error.  The default group honors the QPSLAB_DEFAULT_GROUP environment
variable; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import hooks
from .campaigns import (CLI_GROUPS, CampaignConfig, SUITE_NAMES, UsageError,
                        eval_command, run_suite)
from .gspringer import NotRegularSemisimple
from .linalg import EXACT, FLOAT, LinAlgError

EVAL_KINDS = ("steinberg", "fiber-enum", "leaf-form", "kappa")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpslab",
        description="pointwise verification campaigns for multiplicative "
                    "quasi-Poisson geometry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--group", choices=CLI_GROUPS, default=None)
    v.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--report", type=str, default=None,
                   help="write the JSON report to this path")
    v.add_argument("--corrupt", choices=sorted(hooks.CORRUPTIONS),
                   default=None, help="negative-control hook (testing only)")

    e = sub.add_parser("eval", help="evaluate one quantity from JSON input")
    e.add_argument("kind", choices=EVAL_KINDS)
    e.add_argument("input", type=str, help="path to the input JSON file")
    e.add_argument("--tol", type=float, default=1e-9)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "verify":
        group = args.group or os.environ.get("QPSLAB_DEFAULT_GROUP", "sl2")
        cfg = CampaignConfig(
            suite=args.suite,
            group=group,
            backend=args.backend,
            samples=args.samples,
            seed=args.seed,
            tolerance=args.tol,
            jobs=args.jobs,
            corrupt=args.corrupt,
        )
        try:
            cfg.validate()
            report = run_suite(cfg)
        except UsageError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        text = report.to_json()
        if args.report:
            with open(args.report, "w") as fh:
                fh.write(text + "\n")
        s = report.summary
        print(f"{args.suite} [{group}/{cfg.backend}] seed={cfg.seed} "
              f"samples={cfg.samples}: {s['passed']}/{s['total']} checks passed")
        if not args.report:
            print(text)
        return 0 if report.all_passed else 1

    try:
        with open(args.input) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 2
    try:
        out = eval_command(args.kind, payload, tolerance=args.tol)
    except (UsageError, NotRegularSemisimple, LinAlgError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(out, sort_keys=True, indent=1, default=str))
    return 0


if __name__ == "__main__":
    sys.exit(main())
