"""Command-line interface.

Subcommands: analyze, enumerate, witness, validate. All output is JSON
on stdout (or --out), byte-deterministic for a fixed job regardless of
worker count. Exit codes: 0 success, 1 validation failure, 2 input
error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .classify import classify, find_quadratic_witnesses
from .errors import CapacityError, InputError
from .forms import TernaryForm
from .local import is_bass_local
from .numtheory import factor_trial
from .orders import clifford_order, reduced_discriminant
from .sweep import census_json, run_census
from .validate import SUITES

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3


def _parse_form(text: str) -> TernaryForm:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--form must be JSON like [1,1,1,0,0,0]: {exc}") from exc
    return TernaryForm.from_json(data)


def _parse_primes(text: str):
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise InputError(f"--primes must be comma-separated integers: {exc}") from exc


def _emit(payload, jobspec, out_path):
    doc = {"tool": "quatorders", "version": __version__, "jobspec": jobspec}
    doc.update(payload)
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_analyze(args) -> int:
    form = _parse_form(args.form)
    order = clifford_order(form)
    report = classify(order, witness_height=args.height, witness_count=args.count)
    jobspec = {"command": "analyze", "form": form.to_json(),
               "height": args.height, "count": args.count}
    _emit({"report": report.to_json()}, jobspec, args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    primes = _parse_primes(args.primes)
    summary, violations, counts = run_census(args.bound, primes, workers=args.workers)
    # worker count is an execution detail: keeping it out of the jobspec
    # makes the output byte-identical for any pool size
    jobspec = {"command": "enumerate", "bound": args.bound, "primes": list(primes)}
    _emit(census_json(summary, violations, counts), jobspec, args.out)
    return EXIT_FAIL if violations else EXIT_OK


def cmd_witness(args) -> int:
    form = _parse_form(args.form)
    order = clifford_order(form)
    witnesses = find_quadratic_witnesses(order, args.height, args.count)
    bass = all(is_bass_local(order, p) for p in factor_trial(reduced_discriminant(order)))
    inconclusive = bass and not witnesses
    jobspec = {"command": "witness", "form": form.to_json(),
               "height": args.height, "count": args.count}
    _emit({"witnesses": [w.to_json() for w in witnesses],
           "bass": bass, "inconclusive": inconclusive}, jobspec, args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    suite = SUITES.get(args.suite)
    if suite is None:
        raise InputError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    result = suite()
    jobspec = {"command": "validate", "suite": args.suite}
    _emit({"result": result}, jobspec, args.out)
    return EXIT_OK if result["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatorders",
        description="Quaternion orders over Z: ternary-form correspondence and "
                    "Gorenstein/Bass/basic classification, in exact arithmetic.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one order given its form")
    p.add_argument("--form", required=True, help="JSON 6-tuple [a,b,c,u,v,w]")
    p.add_argument("--height", type=int, default=10, help="witness search height")
    p.add_argument("--count", type=int, default=8, help="max witnesses reported")
    p.add_argument("--out", help="write the report to this path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="census of a coefficient box with oracle checks")
    p.add_argument("--bound", type=int, required=True, help="coefficient box radius (<= 3)")
    p.add_argument("--primes", default="2,3", help="comma-separated primes (subset of 2..13)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("witness", help="search integrally closed quadratic subrings")
    p.add_argument("--form", required=True)
    p.add_argument("--height", type=int, default=10)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("validate", help="run a named validation suite")
    p.add_argument("--suite", required=True, help=f"one of {sorted(SUITES)}")
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
