"""Command-line front end: ``numrad radius|range|check|fuzz|summarize``.

Exit codes: 0 success, 1 an inequality was violated, 2 bad input or an
unmet precondition.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Sequence

from .errors import NumradError, PreconditionViolated
from .harness import FuzzConfig, read_report, run_sweep, write_report
from .inequalities import CheckParams, check, resolve
from .linalg import load_matrix, load_vector
from .numrange import boundary_angles, numerical_radius, numerical_range_boundary

EXIT_OK, EXIT_VIOLATION, EXIT_BAD_INPUT = 0, 1, 2

# parameters not given on the command line fall back to these
PARAM_DEFAULTS = {"r": 1.0, "p": 2.0, "q": 2.0, "alpha": 0.5, "s": 0.5, "n_power": 1}


def g17(x: float) -> str:
    return format(float(x), ".17g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _dims(text: str) -> tuple[int, ...]:
    """``"2-16"`` or ``"2,3,8"``."""
    try:
        if "-" in text:
            lo, hi = text.split("-", 1)
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="numrad", description="Numerical range and numerical radius toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("radius", help="certified numerical radius of a matrix file")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("range", help="boundary points of the numerical range as CSV")
    p.add_argument("file")
    p.add_argument("--points", type=int, default=360)
    p.add_argument("--out", help="output CSV (default: stdout)")

    p = sub.add_parser("check", help="evaluate one registry entry")
    p.add_argument("--id", required=True, dest="checker")
    for role in ("A", "B", "X"):
        p.add_argument(f"--{role}", metavar="FILE", help=f"matrix file for operand {role}")
    for role in ("x", "u", "v", "e"):
        p.add_argument(f"--{role}", metavar="FILE", help=f"vector file for operand {role}")
    for role in ("a", "b"):
        p.add_argument(f"--{role}", type=float, help=f"scalar operand {role}")
    for name in ("r", "p", "q", "alpha", "s"):
        p.add_argument(f"--{name}", type=float, default=PARAM_DEFAULTS[name])
    p.add_argument("--n-power", type=int, default=PARAM_DEFAULTS["n_power"])
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("fuzz", help="seeded sweep over the whole registry")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--dims", type=_dims, default=tuple(range(2, 17)))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--checkers", help="comma-separated ids or aliases")
    p.add_argument("--workers", type=int, help="process count (default: NUMRAD_THREADS or CPU count)")

    p = sub.add_parser("summarize", help="per-checker summary of a report file")
    p.add_argument("report")
    return ap


def _print_summary(summary: dict, out) -> None:
    print(f"{'checker':8} {'count':>7} {'violations':>10} {'min_slack':>24} {'median_slack':>24}", file=out)
    for cid, s in summary.items():
        print(
            f"{cid:8} {s['count']:7d} {s['violations']:10d} {g17(s['min_slack']):>24} {g17(s['median_slack']):>24}",
            file=out,
        )


def cmd_radius(args) -> int:
    A = load_matrix(args.file)
    est = numerical_radius(A, args.tol)
    print(f"w = {g17(est.value)} ± {g17(est.certified_error)} at theta = {g17(est.theta_star)}")
    return EXIT_OK


def cmd_range(args) -> int:
    A = load_matrix(args.file)
    if args.points < 3:
        raise NumradError(f"--points must be at least 3, got {args.points}")
    pts = numerical_range_boundary(A, args.points)
    thetas = boundary_angles(args.points)
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["theta", "re", "im"])
        for t, z in zip(thetas, pts):
            w.writerow([g17(t), g17(z.real), g17(z.imag)])
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def cmd_check(args) -> int:
    checker = resolve(args.checker)
    operands = {}
    for role in ("A", "B", "X"):
        if getattr(args, role):
            operands[role] = load_matrix(getattr(args, role))
    for role in ("x", "u", "v", "e"):
        if getattr(args, role):
            operands[role] = load_vector(getattr(args, role))
    for role in ("a", "b"):
        if getattr(args, role) is not None:
            operands[role] = getattr(args, role)
    params = CheckParams(
        r=args.r, p=args.p, q=args.q, alpha=args.alpha, s=args.s, n_power=args.n_power
    ).project(checker.params)
    results = check(checker.id, operands, params, args.tol)
    for res in results:
        verdict = "OK" if res.satisfied else "VIOLATION"
        print(
            f"{res.checker_id}[{res.link}] lhs={g17(res.lhs)} rhs={g17(res.rhs)} "
            f"slack={g17(res.slack)} {verdict}"
        )
    return EXIT_OK if all(r.satisfied for r in results) else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    filt = tuple(c.strip() for c in args.checkers.split(",") if c.strip()) if args.checkers else None
    config = FuzzConfig(
        trials=args.trials, dims=args.dims, seed=args.seed, tol=args.tol, checker_filter=filt
    )
    report = run_sweep(config, args.workers)
    write_report(report, args.out, args.format)
    _print_summary(report.summary, sys.stdout)
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATION


def cmd_summarize(args) -> int:
    report = read_report(args.report)
    _print_summary(report.summary, sys.stdout)
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATION


COMMANDS = {
    "radius": cmd_radius,
    "range": cmd_range,
    "check": cmd_check,
    "fuzz": cmd_fuzz,
    "summarize": cmd_summarize,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PreconditionViolated as exc:
        for reason in exc.reasons:
            print(f"precondition: {reason}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (NumradError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
