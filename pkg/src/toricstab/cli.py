"""Command-line front end.

Subcommands: catalog, r, threshold, futaki, oracle, figure. Jobs come
from a JSON file (--job) or from --polytope with a generic support;
--m, --lambda, --beta and --bound override the corresponding job
fields. Exit codes: 0 success, 1 input error, 2 engine error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .figures import emit_figure
from .jobs import (
    JobError,
    JobSpec,
    job_to_obj,
    parse_job,
    run_job,
    with_overrides,
)
from .geometry import Point, pt
from .toric import catalog

import json


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricstab",
        description=(
            "Exact cone-angle obstruction calculator for toric Fano "
            "surfaces and their anticanonical divisors."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--job", type=Path, help="JSON job file")
    common.add_argument("--polytope", help="catalog name (generic support)")
    common.add_argument("--m", type=int, help="multiplicity (default 1)")
    common.add_argument("--lambda", dest="lam", help="direction as a,b")
    common.add_argument("--beta", help="cone parameter as p/q")
    common.add_argument("--bound", type=int, help="oracle search box bound")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="suppress the table")

    sub.add_parser("catalog", parents=[common], help="list built-in polytopes")
    sub.add_parser("r", parents=[common], help="barycenter-ray invariant")
    sub.add_parser("threshold", parents=[common], help="optimized angle bound")
    sub.add_parser("futaki", parents=[common], help="weight line for one lambda")
    sub.add_parser("oracle", parents=[common], help="brute-force threshold scan")
    fig = sub.add_parser("figure", parents=[common], help="emit an SVG figure")
    fig.add_argument("--out", type=Path, required=True, help="output SVG path")
    return parser


def _parse_lambda(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise JobError("--lambda: expected two comma-separated integers")
    try:
        return pt(int(parts[0]), int(parts[1]))
    except ValueError:
        raise JobError("--lambda: expected two comma-separated integers") from None


def _parse_beta(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise JobError(f"--beta: malformed rational {text!r} ({exc})") from None


def _job_from_args(args: argparse.Namespace) -> JobSpec:
    if args.job is not None:
        try:
            text = args.job.read_text(encoding="utf-8")
        except OSError as exc:
            raise JobError(f"cannot read job file: {exc}") from None
        job = parse_job(text)
    elif args.polytope is not None:
        from .jobs import job_from_obj

        job = job_from_obj({"polytope": args.polytope})
    else:
        raise JobError("either --job or --polytope is required")

    lam = _parse_lambda(args.lam) if args.lam else None
    beta = _parse_beta(args.beta) if args.beta else None
    return with_overrides(
        job, m=args.m, lam=lam, beta=beta, oracle_bound=args.bound
    )


def _print_catalog(args: argparse.Namespace) -> None:
    entries = [
        {
            "name": e.name,
            "vertices": [[v.x.numerator, v.y.numerator] for v in e.fano.polygon.vertices],
            "lattice_points": len(e.fano.weights),
            "notes": e.notes,
        }
        for e in catalog()
    ]
    if args.json:
        print(json.dumps(entries, indent=2))
    elif not args.quiet:
        width = max(len(e["name"]) for e in entries)
        for e in entries:
            verts = " ".join(f"({x},{y})" for x, y in e["vertices"])
            print(f"{e['name'].ljust(width)}  {verts}  [{e['notes']}]")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "catalog":
            _print_catalog(args)
            return 0
        job = _job_from_args(args)
        if args.command == "futaki" and job.lam is None:
            raise JobError("futaki requires --lambda (or a job with one)")
        if args.command == "oracle" and job.oracle_bound is None:
            job = with_overrides(job, oracle_bound=25)
    except JobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "figure":
            try:
                emit_figure(job, args.out)
            except OSError as exc:
                print(f"error: cannot write figure: {exc}", file=sys.stderr)
                return 1
            if not args.quiet:
                print(f"wrote {args.out}")
            return 0
        report = run_job(job)
    except Exception as exc:  # engine-side failure
        print(f"engine error: {exc}", file=sys.stderr)
        return 2

    if args.json:
        sys.stdout.write(report.to_json())
    elif not args.quiet:
        sys.stdout.write(report.to_table())
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
