"""Command line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify
from .asymptotics import alien_rational_series, connectedness_report, render_report
from .bijection import PendingChord, ZTree, phi, phi_inv, root_share, theta, theta_inv
from .diagram import ChordDiagram, format_diagram, parse_diagram
from .enumeration import DiagramClass, count_class, filter_class
from .errors import ChordlabError, UsageError
from .oeis import SEQUENCES, oeis_check
from .series import CATALOG_NAMES, catalog_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _series(args) -> int:
    if args.name == "R":
        s = alien_rational_series(args.order)
    else:
        s = catalog_series(args.name, args.order)
    print(s.to_json() if args.json else s.format())
    return EXIT_OK


def _enumerate(args) -> int:
    for d in filter_class(args.cls, args.n):
        print(format_diagram(d))
    return EXIT_OK


def _count(args) -> int:
    sizes = range(args.n + 1) if args.upto else [args.n]
    for n in sizes:
        print(f"{args.cls},{n},{count_class(args.cls, n)}")
    return EXIT_OK


def _verify(args) -> int:
    level = args.level or verify.default_level()
    bounds = verify.LEVELS[level]
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    sized = args.suite in ("phi", "theta") and args.n is not None
    order = args.order
    if order is None and args.suite in SERIES_SUITES:
        order = args.n
    params = verify.Params(
        order=order or bounds["order"],
        n=args.n or bounds["n"],
        sizes=(args.n,) if sized else None,
        theta_max=bounds["theta"],
    )
    failed = False
    for name in names:
        result = verify.run_suite(name, params)
        print(result.line())
        failed |= not result.ok
    return EXIT_FAIL if failed else EXIT_OK


# suites whose --n means a series order
SERIES_SUITES = {"cd-i", "cd-ii", "cd-iii", "eqpart", "z-theorem", "coro", "lagrange", "alien"}


def _oeis(args) -> int:
    result = oeis_check(args.sequence, args.bfile, args.count)
    if result.ok:
        print(f"OEIS {args.sequence} PASS {result.compared} terms")
        return EXIT_OK
    index, expected, got = result.mismatch
    print(f"OEIS {args.sequence} FAIL index {index}: b-file {expected}, computed {got}")
    return EXIT_FAIL


def _asymptotics(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    if args.digits < 1:
        raise UsageError("--digits must be positive")
    rows = connectedness_report(args.n, args.m, args.digits)
    sys.stdout.write(render_report(rows, args.m, args.digits, args.format))
    return EXIT_OK


def _labelled_pending(label: int, left: ChordDiagram, right: ChordDiagram) -> PendingChord:
    nxt = label + 1
    left = left.with_labels(range(nxt, nxt + left.n)) if left.n else left
    nxt += left.n
    right = right.with_labels(range(nxt, nxt + right.n)) if right.n else right
    return PendingChord(label, left, right)


def _bijection(args) -> int:
    op = args.op
    if op in ("phi", "phi-inv", "root-share"):
        if args.input is None:
            raise UsageError(f"{op} needs a diagram argument")
        d = parse_diagram(args.input)
        if op == "phi":
            print(format_diagram(phi(d)))
        elif op == "phi-inv":
            print(format_diagram(phi_inv(d)))
        else:
            k, c1, c2 = root_share(d)
            print(json.dumps({"k": k, "c1": format_diagram(c1), "c2": format_diagram(c2)}, separators=(",", ":")))
        return EXIT_OK
    if op == "theta":
        if args.input is not None:
            try:
                p = PendingChord.from_obj(json.loads(args.input))
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"bad pending chord JSON: {exc}") from exc
        else:
            p = _labelled_pending(1, parse_diagram(args.left), parse_diagram(args.right))
        trace: list | None = [] if args.trace else None
        z = theta(p, trace)
        for step in trace or ():
            print(f"TRACE {step}")
        print(z.to_json())
        return EXIT_OK
    # theta-inv
    if args.input is None:
        raise UsageError("theta-inv needs a tree JSON argument")
    try:
        z = ZTree.from_json(args.input)
    except ValueError as exc:
        raise UsageError(f"bad tree JSON: {exc}") from exc
    p = theta_inv(z)
    print(json.dumps(p.to_obj(), separators=(",", ":")))
    return EXIT_OK


def _class(tag: str) -> str:
    return DiagramClass.parse(tag).value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chordlab", description="Exact chord diagram workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="print a catalog series or the alien series R")
    p.add_argument("name", choices=[*CATALOG_NAMES, "R"])
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_series)

    for name, func, helptext in (("enumerate", _enumerate, "list diagrams of a class"),
                                 ("count", _count, "count diagrams of a class as CSV")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--class", dest="cls", type=_class, default="all",
                       help=", ".join(c.value for c in DiagramClass))
        p.add_argument("--n", type=int, required=True)
        if name == "count":
            p.add_argument("--upto", action="store_true", help="one row for every size 0..n")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help="suite id or 'all': " + ", ".join(verify.SUITES))
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--level", choices=list(verify.LEVELS))
    p.set_defaults(func=_verify)

    p = sub.add_parser("oeis-check", help="compare against a local OEIS b-file")
    p.add_argument("sequence", choices=list(SEQUENCES))
    p.add_argument("bfile")
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=_oeis)

    p = sub.add_parser("asymptotics", help="connectedness probability against the expansion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=_asymptotics)

    p = sub.add_parser("bijection", help="apply phi or theta to one input")
    p.add_argument("op", choices=["phi", "phi-inv", "root-share", "theta", "theta-inv"])
    p.add_argument("input", nargs="?", help="diagram text, pending chord JSON or tree JSON")
    p.add_argument("--left", default="", help="theta: left dangling diagram (labels assigned in order)")
    p.add_argument("--right", default="", help="theta: right dangling diagram")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=_bijection)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ChordlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
