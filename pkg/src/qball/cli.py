"""Command line front end.

    qball normalize --n 2 "z[1,2]*z[1,1]"
    qball verify --suite laplace --n 2
    qball verify --suite all --n 2 --cutoff 2 --output report.json
    qball limits --n 2

Exit codes: 0 all PASS, 1 any FAIL, 2 usage or parse error, 3 SKIPPED only.
The worker pool for `--suite all` is bounded by the QBALL_THREADS
environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .parser import ExprError, parse_expr
from .render import poly_text
from .reports import Report
from .suites import SUITE_NAMES, run_suite, suite_limits

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_SKIPPED = 0, 1, 2, 3


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qball",
        description="Exact verification engine for the quantum matrix ball")
    sub = ap.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("normalize", help="normalize an expression")
    p_norm.add_argument("expression")
    p_norm.add_argument("--n", type=int, default=1)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True, choices=SUITE_NAMES + ["all"])
    p_ver.add_argument("--n", type=int, default=1)
    p_ver.add_argument("--cutoff", type=int, default=2)
    p_ver.add_argument("--eval-v", dest="eval_v", default=None,
                       help="rational v0 for the numeric cross-check pass")
    p_ver.add_argument("--output", default=None, help="write a JSON report")

    p_lim = sub.add_parser("limits", help="classical q -> 1 spot checks")
    p_lim.add_argument("--n", type=int, default=1)
    p_lim.add_argument("--cutoff", type=int, default=2)
    p_lim.add_argument("--output", default=None)
    return ap


def _parse_v0(text):
    if text is None:
        return None
    try:
        v0 = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SystemExit(EXIT_USAGE)
    return v0


def _emit(reports: list, output) -> int:
    for rep in reports:
        print(rep.line())
    if output:
        payload = ([r.to_dict() for r in reports] if len(reports) > 1
                   else reports[0].to_dict())
        with open(output, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    statuses = {r.status for r in reports}
    if "FAIL" in statuses:
        return EXIT_FAIL
    if statuses == {"SKIPPED"}:
        return EXIT_SKIPPED
    return EXIT_PASS


def cmd_normalize(args) -> int:
    if args.n < 1:
        print("error: n must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        tag, poly = parse_expr(args.expression, args.n)
    except ExprError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(f"[{tag}] {poly_text(poly)}")
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.n < 1 or args.cutoff < 0:
        print("error: need n >= 1 and cutoff >= 0", file=sys.stderr)
        return EXIT_USAGE
    v0 = _parse_v0(args.eval_v)
    if args.suite != "all":
        reports = [run_suite(args.suite, args.n, args.cutoff, v0)]
        return _emit(reports, args.output)
    threads = os.environ.get("QBALL_THREADS")
    workers = max(1, int(threads)) if threads else min(4, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [(name, pool.submit(run_suite, name, args.n, args.cutoff, v0))
                   for name in SUITE_NAMES]
        reports = [f.result() for _, f in futures]
    return _emit(reports, args.output)


def cmd_limits(args) -> int:
    if args.n < 1:
        print("error: n must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    return _emit([suite_limits(args.n, args.cutoff)], args.output)


def main(argv=None) -> int:
    ap = _build_argparser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    handler = {"normalize": cmd_normalize, "verify": cmd_verify,
               "limits": cmd_limits}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
