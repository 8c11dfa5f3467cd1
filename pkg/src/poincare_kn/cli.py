"""Command-line front end: ``poincare-kn {constants,verify,proofcheck,scan-gap}``.

Exit codes: 0 success, 1 a verification or check failed, 2 usage error.
Ranges: n as ``5``, ``3,4,7`` or ``3..8``; p as ``3``, ``1.2,1.8`` or
``a..b:steps`` (steps evenly spaced points, endpoints included).
Worker count comes from ``--threads``, else $POINCARE_KN_THREADS, else 1.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import constants, optimizer, proofcheck
from .errors import BadParameter, SharpnessViolation
from .svgplot import line_plot

DEFAULT_SEED = 0
THREADS_ENV = "POINCARE_KN_THREADS"


class UsageError(Exception):
    pass


def parse_n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            values = list(range(lo, hi + 1))
        else:
            values = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad n range {text!r}") from None
    if not values or min(values) < 3:
        raise UsageError(f"n range {text!r} must be non-empty with every n >= 3")
    return values


def parse_p_range(text: str) -> list[float]:
    try:
        if ".." in text:
            bounds, _, steps = text.partition(":")
            lo, hi = (float(t) for t in bounds.split(".."))
            count = int(steps) if steps else 11
            if count < 1:
                raise ValueError
            values = [float(v) for v in np.linspace(lo, hi, count)]
        else:
            values = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad p range {text!r}") from None
    if not values or min(values) < 1 or not all(math.isfinite(v) for v in values):
        raise UsageError(f"p range {text!r} must be non-empty with every p >= 1")
    return values


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"${THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


def _map(fn, items, threads: int) -> list:
    """Order-preserving map, optionally on a thread pool."""
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(args, header: list[str], rows: list[list], svg: str | None = None) -> None:
    if args.format == "svg":
        if svg is None:
            raise UsageError("this command has no SVG output")
        text = svg
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[_fmt(v) for v in row] for row in rows])
        text = buf.getvalue()
    else:
        cells = [header] + [[_text_cell(v) for v in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        text = "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _text_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return _fmt(value)


# -- commands -------------------------------------------------------------------

def cmd_constants(args) -> int:
    ns, ps = parse_n_range(args.n), parse_p_range(args.p)
    rows = []
    for n in ns:
        for p in ps:
            reg = constants.regime(n, p)
            rows.append(
                [
                    n,
                    p,
                    constants.c_two_level(n, p),
                    constants.c_symmetric(n, p),
                    constants.c_dirac(n, p),
                    constants.delta1(n),
                    constants.delta2(n),
                    constants.in_A_n(n, p),
                    str(reg.kind),
                    reg.constant.value if reg.constant else None,
                ]
            )
    header = ["n", "p", "c_two_level", "c_symmetric", "c_dirac", "delta1", "delta2", "in_A_n", "regime", "sharp_constant"]
    if args.format == "csv":
        keep = [0, 1, 2, 3, 4, 8, 9]
        header = [header[i] for i in keep]
        rows = [[row[i] for i in keep] for row in rows]
    svg = None
    if args.format == "svg":
        n = ns[0]
        grid = ps if len(ps) > 1 else [float(v) for v in np.linspace(1.0, 6.0, 201)]
        svg = line_plot(
            [
                ("two-level", grid, [constants.c_two_level(n, p) for p in grid]),
                ("symmetric", grid, [constants.c_symmetric(n, p) for p in grid]),
                ("Dirac", grid, [constants.c_dirac(n, p) for p in grid]),
            ],
            title=f"Candidate constants, n = {n}",
            xlabel="p",
            ylabel="constant",
        )
    _emit(args, header, rows, svg)
    return 0


def cmd_verify(args) -> int:
    ns, ps = parse_n_range(args.n), parse_p_range(args.p)
    points = [(n, p) for n in ns for p in ps]

    def run(point):
        n, p = point
        reg = constants.regime(n, p)
        if not reg.resolved:
            return [n, p, str(reg.kind), "skipped", None, None, None, None]
        try:
            rep = optimizer.verify_sharpness(n, p, tol=args.tol, seed=args.seed, starts=args.starts)
            status = "pass"
        except SharpnessViolation as exc:
            rep, status = exc.report, "FAIL"
        return [n, p, str(reg.kind), status, rep.best_value, rep.closed_form, rep.abs_gap, str(rep.family)]

    rows = _map(run, points, _threads(args))
    header = ["n", "p", "regime", "status", "best_value", "closed_form", "abs_gap", "family"]
    _emit(args, header, rows)
    return 1 if any(row[3] == "FAIL" for row in rows) else 0


def cmd_proofcheck(args) -> int:
    only = None
    if args.only:
        only = [name for chunk in args.only for name in chunk.split(",") if name]
        unknown = set(only) - set(proofcheck.CHECK_NAMES)
        if unknown:
            raise UsageError(f"unknown checks {sorted(unknown)}; choose from {', '.join(proofcheck.CHECK_NAMES)}")
    ns = parse_n_range(args.n) if args.n else None
    ps = parse_p_range(args.p) if args.p else None
    names = only or list(proofcheck.CHECK_NAMES)
    reports = [r for chunk in _map(lambda name: proofcheck.run_suite([name], ns, ps), names, _threads(args)) for r in chunk]
    header = ["check", "samples", "worst_margin", "worst_location", "passed"]
    rows = [
        [r.name, r.samples, r.worst_margin, ";".join(repr(float(v)) for v in r.worst_location), r.passed]
        for r in reports
    ]
    _emit(args, header, rows)
    return 0 if all(r.passed for r in reports) else 1


def cmd_scan_gap(args) -> int:
    if args.n < 3 or args.steps < 2:
        raise UsageError("scan-gap needs n >= 3 and steps >= 2")
    lo, hi = constants.gap_interval(args.n)
    ps = [float(p) for p in np.linspace(lo, hi, args.steps)] if lo < hi else []

    def run(p):
        rep = optimizer.multistart_ascent(args.n, p, starts=args.starts, seed=args.seed)
        return optimizer.GapRow(p, rep.best_value, constants.candidate_max(args.n, p).value, rep.family)

    gap_rows = _map(run, ps, _threads(args))
    rows = [[r.p, r.best_value, r.candidate_max_value, str(r.family)] for r in gap_rows]
    svg = None
    if args.format == "svg":
        if not ps:
            raise UsageError(f"the unresolved interval is empty for n = {args.n}")
        svg = line_plot(
            [
                ("numeric sup", ps, [r.best_value for r in gap_rows]),
                ("two-level", ps, [constants.c_two_level(args.n, p) for p in ps]),
                ("symmetric", ps, [constants.c_symmetric(args.n, p) for p in ps]),
                ("Dirac", ps, [constants.c_dirac(args.n, p) for p in ps]),
            ],
            title=f"Unresolved interval, n = {args.n}",
            xlabel="p",
            ylabel="sup of quotient",
        )
    _emit(args, ["p", "numeric_sup", "best_candidate", "family"], rows, svg)
    return 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poincare-kn", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="PRNG seed (default %(default)s)")
    common.add_argument("--format", choices=("text", "csv", "svg"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--threads", type=int, help=f"worker threads (default ${THREADS_ENV} or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="candidate constants, thresholds and regime")
    p.add_argument("--n", required=True, help="n, n list or a..b")
    p.add_argument("--p", required=True, help="p, p list or a..b:steps")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("verify", parents=[common], help="numerical sharpness check against the closed forms")
    p.add_argument("--n", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--tol", type=float, default=1e-6, help="allowed |sup - closed form| (default %(default)s)")
    p.add_argument("--starts", type=int, default=optimizer.DEFAULT_STARTS, help="random starts (default %(default)s)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("proofcheck", parents=[common], help="sampled checks of the auxiliary inequalities")
    p.add_argument("--only", action="append", help=f"subset of: {', '.join(proofcheck.CHECK_NAMES)}")
    p.add_argument("--n", help="restrict to these n (default 3..20)")
    p.add_argument("--p", help="restrict to these p (default: 20 per valid interval)")
    p.set_defaults(func=cmd_proofcheck)

    p = sub.add_parser("scan-gap", parents=[common], help="numerical supremum across the unresolved p-interval")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=int, default=50, help="p points, endpoints included (default %(default)s)")
    p.add_argument("--starts", type=int, default=optimizer.DEFAULT_STARTS)
    p.set_defaults(func=cmd_scan_gap)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0 or getattr(args, "starts", 1) < 1:
        parser.error("--tol must be positive and --starts at least 1")
    try:
        return args.func(args)
    except (UsageError, BadParameter) as exc:
        print(f"poincare-kn: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
