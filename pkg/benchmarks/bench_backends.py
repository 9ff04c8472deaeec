"""Compiled kernels vs the numpy/scipy fallback on the hot paths.

    python3 benchmarks/bench_backends.py [--quick]

Prints a table of best-of-``repeat`` wall times and the speed-up factor.
"""

import argparse
import time

import numpy as np

from weierstrass_entropy import _fallback

try:
    from weierstrass_entropy import _kernels
except ImportError:
    _kernels = None


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def cases(quick):
    rng = np.random.default_rng(0)
    xs = rng.uniform(-1.0, 1.0, 20_000 if quick else 200_000)
    rows = 300 if quick else 2000
    cols = 2001 if quick else 10001
    values = rng.standard_normal((rows, cols))
    return [
        (f"phase_table  b=3 N=40 x{xs.size}", lambda m: m.phase_table(xs, 3, 40)),
        (f"cos_series   b=3 N=40 x{xs.size}", lambda m: m.cos_series(xs, 0.5, 3, 40)),
        (f"pairwise_cheb {rows}x{cols}", lambda m: m.pairwise_chebyshev(values, 1)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'case':<36} {'python [s]':>11} {'compiled [s]':>13} {'speed-up':>9}")
    for name, run in cases(args.quick):
        slow = best_time(lambda: run(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:<36} {slow:>11.4f} {'-':>13} {'-':>9}")
            continue
        fast = best_time(lambda: run(_kernels), args.repeat)
        print(f"{name:<36} {slow:>11.4f} {fast:>13.4f} {slow / fast:>8.2f}x")


if __name__ == "__main__":
    main()
