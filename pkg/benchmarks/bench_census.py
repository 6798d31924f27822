#!/usr/bin/env python3
"""Benchmark the compiled census kernel against the pure-Python fallback.

The census is the hot loop of the package: every one of the (2n-1)!!
diagrams on n chords is enumerated and classified by connectivity. Run

    python benchmarks/bench_census.py --max-n 7

to see both kernels side by side (n = 8 is fine for the compiled kernel,
slow in pure Python).
"""

import argparse
import time

from chorddiag import _census_py

try:
    from chorddiag import _census
except ImportError:
    _census = None

from chorddiag.gf import double_factorial_odd


def time_call(fn, n: int) -> tuple[float, tuple]:
    started = time.perf_counter()
    result = fn(n)
    return time.perf_counter() - started, tuple(result)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-n", type=int, default=4)
    parser.add_argument("--max-n", type=int, default=7)
    parser.add_argument(
        "--compiled-extra",
        type=int,
        default=1,
        help="extra sizes to run on the compiled kernel only",
    )
    args = parser.parse_args()

    print(f"{'n':>3} {'diagrams':>12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>9}")
    for n in range(args.min_n, args.max_n + 1):
        pure_time, pure_counts = time_call(_census_py.class_census, n)
        line = f"{n:>3} {double_factorial_odd(n):>12} {pure_time:>10.3f}"
        if _census is not None:
            fast_time, fast_counts = time_call(_census.class_census, n)
            assert fast_counts == pure_counts, (n, fast_counts, pure_counts)
            speedup = pure_time / fast_time if fast_time else float("inf")
            line += f" {fast_time:>13.3f} {speedup:>8.1f}x"
        else:
            line += f" {'n/a':>13} {'n/a':>9}"
        print(line)

    if _census is not None and args.compiled_extra > 0:
        for n in range(args.max_n + 1, args.max_n + args.compiled_extra + 1):
            fast_time, counts = time_call(_census.class_census, n)
            print(
                f"{n:>3} {double_factorial_odd(n):>12} {'skipped':>10} "
                f"{fast_time:>13.3f}  (counts: all={counts[0]}, "
                f"connected={counts[1]}, 2connected={counts[2]})"
            )
    if _census is None:
        print("compiled kernel not built; install with Cython available to compare")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
