"""Command line driver

usage:
python -m dpalr ingest-check manifest.yml [--two-hop]
python -m dpalr synth output_directory [--spec synth.yml] [--seed N]
python -m dpalr recommend manifest.yml
python -m dpalr evaluate manifest.yml
python -m dpalr oracle-gap manifest.yml
python -m dpalr sweep manifest.yml

All run settings come from the manifest and can be overridden by flags. The exit code
is 1 if any user failed (unless --allow-errors is given) and 2 for invalid input.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .printing import get_printer, get_warner, format_table, SUMMARY
from .params import RunManifest, SynthSpec
from .data import (
    IngestError,
    ErrorRecord,
    ingest_manifest,
    check_two_hop,
    read_jsonl,
)
from .synth import generate
from .run_experiments import (
    run_recommend,
    run_evaluate,
    run_oracle_gap,
    run_sweep,
    ERRORS_FILE,
    GAP_ERRORS_FILE,
)


def _optional_int(text: str) -> int | None:
    return None if text.lower() in ("none", "all") else int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpalr")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("ingest-check", help="validate the input files")
    check.add_argument("manifest")
    check.add_argument(
        "--two-hop",
        default=False,
        action="store_true",
        help="report candidates who are not two hops from their user",
    )
    check.add_argument("--allow-errors", default=False, action="store_true")

    synth = subparsers.add_parser("synth", help="generate a synthetic bundle")
    synth.add_argument("output_directory")
    synth.add_argument("--spec", help="synthetic spec yaml, defaults otherwise")
    synth.add_argument("--seed", type=int)
    synth.add_argument("--n-users", type=int)
    synth.add_argument("--name")

    for command, help in [
        ("recommend", "recommend with every configured method"),
        ("evaluate", "evaluate the recommendations of a run"),
        ("oracle-gap", "compare the iterative solution with the exact optimum"),
        ("sweep", "recommend and evaluate over the parameter grid"),
    ]:
        sub = subparsers.add_parser(command, help=help)
        sub.add_argument("manifest")
        sub.add_argument("-o", "--output-directory")
        sub.add_argument("-j", "--parallelism", type=int)
        sub.add_argument("--seed", type=int)
        sub.add_argument("--methods", nargs="+")
        sub.add_argument("--k", nargs="+", type=int, dest="k_grid")
        sub.add_argument("--theta", nargs="+", type=float, dest="theta_grid")
        sub.add_argument("--sigma", nargs="+", type=float, dest="sigma_grid")
        sub.add_argument(
            "--candidate-size", nargs="+", type=_optional_int, dest="candidate_size_grid"
        )
        sub.add_argument("--max-users", type=int)
        sub.add_argument("--reference", dest="reference_method")
        sub.add_argument("--allow-errors", default=False, action="store_true")
    return parser


OVERRIDES = [
    "output_directory",
    "parallelism",
    "seed",
    "methods",
    "k_grid",
    "theta_grid",
    "sigma_grid",
    "candidate_size_grid",
    "max_users",
    "reference_method",
]


def load_manifest(args: argparse.Namespace) -> RunManifest:
    manifest = RunManifest.load(args.manifest)
    overrides = {
        name: getattr(args, name)
        for name in OVERRIDES
        if getattr(args, name, None) is not None
    }
    return replace(manifest, **overrides)


def _ingest_check(args, optprint, warn) -> int:
    manifest = load_manifest(args)
    manifest.validate()
    bundle = ingest_manifest(manifest, verbosity_level=args.verbose)
    summary = bundle.summary()
    print(
        format_table(
            ["users", "edges", "users with candidates", "candidates", "users with truth"],
            [
                [
                    str(summary[key])
                    for key in [
                        "users",
                        "edges",
                        "users_with_candidates",
                        "candidates",
                        "users_with_truth",
                    ]
                ]
            ],
        )
    )
    print(
        format_table(
            ["dimension", "values", "users with values", "max per user", "mean per user"],
            [
                [
                    row["dimension"],
                    str(row["values"]),
                    str(row["users_with_values"]),
                    str(row["max_values_per_user"]),
                    f"{row['mean_values_per_user']:.2f}",
                ]
                for row in summary["dimensions"]
            ],
        )
    )
    problems = 0
    if args.two_hop:
        violations = check_two_hop(bundle)
        for user, outside in violations.items():
            optprint(f"{user}: candidates {outside} are not two hops away")
        if violations:
            warn(f"{len(violations)} users have candidates more than two hops away")
        problems += len(violations)
    return problems


def _synth(args, optprint) -> None:
    spec = SynthSpec() if args.spec is None else SynthSpec.load(args.spec)
    overrides = {"seed": args.seed, "n_users": args.n_users, "name": args.name}
    spec = replace(spec, **{k: v for k, v in overrides.items() if v is not None})
    manifest = generate(spec, verbosity_level=args.verbose).save(
        Path(args.output_directory)
    )
    optprint(f"wrote {spec.name} bundle and manifest {manifest.name}.yml")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    optprint = get_printer(args.verbose, verbosity_threshold=SUMMARY)
    warn = get_warner(args.verbose)
    optprint(f"Running dpalr version: {__version__}")

    try:
        match args.command:
            case "ingest-check":
                failures = _ingest_check(args, optprint, warn)
            case "synth":
                _synth(args, optprint)
                return 0
            case "recommend":
                output = run_recommend(load_manifest(args), verbosity_level=args.verbose)
                failures = len(output.errors)
            case "evaluate":
                run_evaluate(load_manifest(args), verbosity_level=args.verbose)
                failures = 0
            case "oracle-gap":
                manifest = load_manifest(args)
                run_oracle_gap(manifest, verbosity_level=args.verbose)
                failures = _count_errors(
                    Path(manifest.output_directory) / GAP_ERRORS_FILE
                )
            case "sweep":
                manifest = load_manifest(args)
                run_sweep(manifest, verbosity_level=args.verbose)
                failures = _count_errors(Path(manifest.output_directory) / ERRORS_FILE)
            case _:
                raise NotImplementedError
    except (IngestError, ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    if failures and not args.allow_errors:
        warn(f"{failures} failures, exiting with an error")
        return 1
    return 0


def _count_errors(path: Path) -> int:
    if not path.exists():
        return 0
    return len(read_jsonl(path, ErrorRecord))


if __name__ == "__main__":
    sys.exit(main())
