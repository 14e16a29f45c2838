"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical or precision failure.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import counting, fracpart, identity, verify
from .errors import EcrepError
from .numerics import CurveParams, format_xcomplex, format_xreal, make_context

DEFAULT_BITS = 192
EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _default_bits() -> int:
    raw = os.environ.get("ECREP_BITS")
    if raw is None:
        return DEFAULT_BITS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ECREP_BITS={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ecrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--bits", type=int, default=None, help="working precision (default 192 or $ECREP_BITS)")
        p.add_argument("--output", choices=("text", "json", "csv"), default="text")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("count", help="count points of y^2 = x^3 + ax + b mod p")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--method", choices=[m.value for m in counting.Method], required=True)
    c.add_argument("--include-singular", action="store_true")
    common(c)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", choices=["all", *verify.SUITES], default="all")
    v.add_argument("--max-p", type=int, default=101)
    common(v)

    i = sub.add_parser("identity", help="check sum 2 pi^2 x^2 / D(x) = p")
    i.add_argument("--p", type=int, required=True)
    common(i)

    f = sub.add_parser("fracpart", help="floor and fractional part of f/p via exponential sums")
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--f", type=int, required=True)
    common(f)

    g = sub.add_parser("gauss", help="quadratic Gauss sum, direct and closed form")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--m", type=int, default=1)
    common(g)
    return parser


def _emit(record: dict, output: str) -> None:
    if output == "json":
        print(json.dumps(record))
    else:
        for key, value in record.items():
            print(f"{key}: {value}")


def cmd_count(args, ctx) -> int:
    curve = CurveParams(args.a, args.b, args.p)
    start = time.perf_counter()
    result = counting.count(curve, args.method, ctx, include_singular=args.include_singular,
                            workers=args.workers)
    elapsed = (time.perf_counter() - start) * 1000
    record = {
        "command": "count",
        "p": args.p,
        "a": args.a,
        "b": args.b,
        "method": result.method.value,
        "n_p": result.n_p,
        "residual": format_xreal(ctx.real(result.residual), ctx),
        "hasse_ok": counting.hasse_check(result.n_p, args.p),
        "singular": counting.discriminant_class(curve) is counting.DiscriminantClass.SINGULAR,
    }
    if result.l_value is not None:
        record["l_value"] = result.l_value
    record["bits"] = ctx.bits
    record["elapsed_ms"] = round(elapsed, 3)
    _emit(record, args.output)
    return EXIT_OK


def cmd_identity(args, ctx) -> int:
    if args.p < 2:
        raise UsageError("identity needs --p >= 2")
    rep = identity.identity_check(args.p, ctx, workers=args.workers)
    _emit({
        "command": "identity",
        "p": args.p,
        "identity_sum": format_xreal(rep.identity_sum, ctx),
        "abs_error": format_xreal(rep.abs_error, ctx),
        "q_sum": format_xreal(rep.q_sum, ctx),
        "r_sum": format_xreal(rep.r_sum, ctx),
        "bits": ctx.bits,
    }, args.output)
    return EXIT_OK


def cmd_fracpart(args, ctx) -> int:
    if args.p < 2 or args.f < 1:
        raise UsageError("fracpart needs --p >= 2 and --f >= 1")
    rep = fracpart.floor_via_expsum(args.f, args.p, ctx)
    record = {
        "command": "fracpart",
        "p": args.p,
        "f": args.f,
        "floor": rep.floor_value,
        "frac": format_xreal(fracpart.frac_via_expsum(args.f, args.p, ctx), ctx),
        "deviation": format_xreal(rep.deviation, ctx),
    }
    if args.p >= 3 and args.f >= 2:
        record["prop4_ok"] = fracpart.prop4_verify(args.f, args.p)
    if args.p >= 3 and args.p % 2:
        record["prop5_bound"] = format_xreal(fracpart.prop5_lower_bound(args.f, args.p, ctx), ctx)
    record["bits"] = ctx.bits
    _emit(record, args.output)
    return EXIT_OK


def cmd_gauss(args, ctx) -> int:
    direct = counting.gauss_sum_direct(args.m, args.p, ctx).value
    closed = counting.gauss_sum_closed(args.m, args.p, ctx).value
    _emit({
        "command": "gauss",
        "p": args.p,
        "m": args.m,
        "direct": format_xcomplex(direct, ctx),
        "closed": format_xcomplex(closed, ctx),
        "deviation": format_xreal(abs(direct - closed), ctx),
        "bits": ctx.bits,
    }, args.output)
    return EXIT_OK


def cmd_verify(args, ctx) -> int:
    rows = verify.run_suite(args.suite, ctx, max_p=args.max_p, seed=args.seed or 0)
    suites: dict[str, list] = {}
    for row in rows:
        suites.setdefault(row.suite, []).append(row)
    all_ok = all(row.passed for row in rows)
    if args.output == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["suite", "case", "passed", "deviation", "tolerance"])
        for row in rows:
            writer.writerow([row.suite, row.case, row.passed,
                             format_xreal(ctx.real(row.deviation), ctx),
                             format_xreal(ctx.real(row.tolerance), ctx)])
        return EXIT_OK if all_ok else EXIT_MATH
    for name, group in suites.items():
        worst = max((ctx.real(r.deviation) for r in group), default=0)
        record = {
            "command": "verify",
            "suite": name,
            "passed": all(r.passed for r in group),
            "cases": len(group),
            "failures": sum(1 for r in group if not r.passed),
            "worst_deviation": format_xreal(worst, ctx),
            "bits": ctx.bits,
        }
        if args.output == "json":
            print(json.dumps(record))
        else:
            status = "PASS" if record["passed"] else "FAIL"
            print(f"{status} {name}: {record['cases']} cases, worst deviation {record['worst_deviation']}")
            for r in group:
                if not r.passed:
                    print(f"  failed: {r.case}", file=sys.stderr)
    return EXIT_OK if all_ok else EXIT_MATH


COMMANDS = {
    "count": cmd_count,
    "verify": cmd_verify,
    "identity": cmd_identity,
    "fracpart": cmd_fracpart,
    "gauss": cmd_gauss,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        bits = args.bits if args.bits is not None else _default_bits()
        if bits < 64:
            raise UsageError("--bits must be >= 64")
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        if args.output == "csv" and args.command != "verify":
            raise UsageError("csv output is only available for verify")
        ctx = make_context(bits)
        return COMMANDS[args.command](args, ctx)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except EcrepError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
