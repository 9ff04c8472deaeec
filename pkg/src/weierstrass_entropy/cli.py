"""Command-line interface.

Usage::

    weierstrass-entropy eval --a 0.5 --b 3 --x 0.25 --y -0.25
    weierstrass-entropy bounds --eps 1e-2 --eps 1e-4 --format json
    weierstrass-entropy empirical --trunc-N 6 --samples 2000 --seed 0
    weierstrass-entropy verify --a 0.9 --b 2

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import _backend
from .bounds import BOUND_COLUMNS, bound_table
from .empirical import EMPIRICAL_COLUMNS, empirical_report
from .errors import DomainError
from .kernel import DEFAULT_TOL, eval_kernel, eval_weierstrass, make_params
from .verify import VerifyOptions, run_suites

DEFAULT_BOUNDS_EPS = tuple(10.0**-k for k in range(1, 9))
DEFAULT_EMPIRICAL_EPS = (1.0, 0.5, 0.2, 0.1)


@dataclass(frozen=True)
class RunConfig:
    a: float = 0.5
    b: int = 3
    tol: float = DEFAULT_TOL
    eps_list: tuple[float, ...] = field(default_factory=tuple)
    grid_count: int = 10001
    samples: int = 2000
    truncation_N: int = 6
    seed: int = 0
    output_format: str = "csv"
    tight_flag: bool = False
    workers: int = 1


def _positive_float(text: str) -> float:
    value = float(text)
    if not (value > 0.0) or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive real, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=0.5, help="amplitude ratio, 0 < a < 1 (default 0.5)")
    common.add_argument("--b", type=int, default=3, help="integer frequency base, b >= 2 (default 3)")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="series truncation tolerance")
    common.add_argument("--eps", type=_positive_float, action="append", help="covering radius (repeatable)")
    common.add_argument("--grid-count", type=_positive_int, default=10001, help="sup-norm grid size")
    common.add_argument("--samples", type=_positive_int, default=2000, help="unit-ball samples")
    common.add_argument("--trunc-N", dest="trunc_N", type=_positive_int, default=6, help="frequencies per sample")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tight", action="store_true", help="use the head norm in the upper bound")
    common.add_argument("--workers", type=_positive_int, default=1, help="threads for pairwise distances")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="weierstrass-entropy", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    ev = sub.add_parser("eval", parents=[common], help="evaluate w(x) or W(x, y)")
    ev.add_argument("--x", type=float, required=True)
    ev.add_argument("--y", type=float, default=None)
    sub.add_parser("bounds", parents=[common], help="analytic covering-number bounds per eps")
    sub.add_parser("empirical", parents=[common], help="packing / explicit-net brackets per eps")
    ve = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    ve.add_argument("--perturb-gram", action="store_true", help=argparse.SUPPRESS)
    return parser


def config_from_args(args: argparse.Namespace, default_eps) -> RunConfig:
    return RunConfig(
        a=args.a,
        b=args.b,
        tol=args.tol,
        eps_list=tuple(args.eps) if args.eps else tuple(default_eps),
        grid_count=args.grid_count,
        samples=args.samples,
        truncation_N=args.trunc_N,
        seed=args.seed,
        output_format=args.format,
        tight_flag=args.tight,
        workers=args.workers,
    )


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_rows(rows: list[dict], columns, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        json.dump([{key: row[key] for key in columns} for row in rows], stream, indent=2)
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row[key]) for key in columns])


def _warn_degenerate(rows: list[dict]) -> None:
    for row in rows:
        if row["lower_ln_cover"] is None:
            print(f"warning: eps={row['eps']!r}: lower bound is non-informative; cell left empty", file=sys.stderr)


def certified_decimal(value: float, tol: float) -> float:
    """Shortest decimal rounding of ``value`` that stays within ``tol`` of it."""
    for digits in range(17):
        rounded = round(value, digits)
        if abs(rounded - value) <= tol:
            return rounded + 0.0  # + 0.0 turns -0.0 into 0.0
    return value


def cmd_eval(config: RunConfig, x: float, y: float | None) -> int:
    """Print ``w(x)`` or ``W(x, y)`` to within ``tol``: half for truncation, half for printing."""
    params = make_params(config.a, config.b)
    half = 0.5 * config.tol
    if y is None:
        if abs(x) > 1.0:
            raise DomainError(f"x must lie in I = [-1, 1] (got {x!r})")
        value = eval_weierstrass(params, x, half)
    else:
        value = eval_kernel(params, x, y, half)
    print(repr(certified_decimal(value, half)))
    return 0


def cmd_bounds(config: RunConfig) -> int:
    params = make_params(config.a, config.b)
    rows = [r.as_row() for r in bound_table(params, config.eps_list, config.tight_flag)]
    _warn_degenerate(rows)
    write_rows(rows, BOUND_COLUMNS, config.output_format)
    return 0


def cmd_empirical(config: RunConfig) -> int:
    params = make_params(config.a, config.b)
    start = time.perf_counter()
    report = empirical_report(
        params,
        config.eps_list,
        config.truncation_N,
        config.samples,
        config.grid_count,
        config.seed,
        workers=config.workers,
        tight=config.tight_flag,
    )
    rows = [r.as_row() for r in report]
    _warn_degenerate(rows)
    write_rows(rows, EMPIRICAL_COLUMNS, config.output_format)
    print(f"# backend={_backend.BACKEND} elapsed={time.perf_counter() - start:.2f}s", file=sys.stderr)
    for row in rows:
        if row["empirical_lower_ln"] > row["upper_ln_cover"]:
            print(f"error: packing exceeds the analytic upper bound at eps={row['eps']!r}", file=sys.stderr)
            return 1
    return 0


def cmd_verify(config: RunConfig, perturb_gram: bool = False) -> int:
    params = make_params(config.a, config.b)
    results = run_suites(params, config.seed, VerifyOptions(tol=config.tol, perturb_gram=perturb_gram))
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"{status} {r.name}{detail}")
    timings = " ".join(f"{r.name}={r.seconds:.2f}s" for r in results)
    print(f"# backend={_backend.BACKEND} a={params.a} b={params.b} {timings}", file=sys.stderr)
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(config_from_args(args, ()), args.x, args.y)
        if args.command == "bounds":
            return cmd_bounds(config_from_args(args, DEFAULT_BOUNDS_EPS))
        if args.command == "empirical":
            return cmd_empirical(config_from_args(args, DEFAULT_EMPIRICAL_EPS))
        return cmd_verify(config_from_args(args, ()), args.perturb_gram)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
