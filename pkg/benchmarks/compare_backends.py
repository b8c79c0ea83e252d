"""Time the compiled and pure-Python kernels on the same inputs.

Each case runs both backends, checks that their results agree and prints the
median wall time and speed-up.  Run from the repository root:

    python3 benchmarks/compare_backends.py [--repeat 5] [--csv out.csv]
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time

import numpy as np

from patternfree.constructions import gamma_free_random, random_pfree
from patternfree.kernels import backends
from patternfree.matrix import ZeroOneMatrix
from patternfree.patterns import checkerboard, corner, parse_pattern


def _bernoulli(n, p, seed):
    rng = np.random.default_rng([seed, 0xBE7C])
    return ZeroOneMatrix._wrap((rng.random((n, n)) < p).astype(np.uint8))


def cases():
    sparse = random_pfree(parse_pattern("M:11,11"), 96, seed=3)
    dense = _bernoulli(120, 0.5, 1)
    gfree = gamma_free_random(150, seed=2)
    small = _bernoulli(40, 0.5, 4)
    yield "ordered_first P2 (dense 120)", "ordered_first", (dense, checkerboard(2))
    yield "ordered_first 2x2 ones (sparse 96)", "ordered_first", (sparse, parse_pattern("M:11,11"))
    yield "ordered_first P4 (gamma-free 150)", "ordered_first", (gfree, checkerboard(4))
    yield "unordered_first S:2 (gamma-free 150)", "unordered_first", (gfree, parse_pattern("S:2"))
    yield "count_ordered Q1 cap 5000 (dense 120)", "count_ordered", (dense, corner(1), 5000)
    yield "p2_pairs (dense 120)", "p2_pairs", (dense,)
    yield "gamma_free (gamma-free 150)", "gamma_free", (gfree,)
    yield "gamma_free (dense 120)", "gamma_free", (dense,)
    yield "max_square 0 (random 40)", "max_square", (small, 0, 0, -1)
    yield "max_square 1 (random 40)", "max_square", (small, 1, 0, -1)


def _time(fn, args, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--csv", help="write results to this file")
    args = ap.parse_args(argv)

    impls = backends()
    if "native" not in impls:
        print("compiled backend not built; only the pure-Python kernels are available", file=sys.stderr)
    names = [b for b in ("native", "python") if b in impls]
    rows = []
    mismatch = False
    print(f"{'case':42s} " + " ".join(f"{b + ' ms':>12s}" for b in names) + f" {'speed-up':>9s}")
    for label, kernel, kargs in cases():
        results, times = {}, {}
        for b in names:
            results[b], times[b] = _time(getattr(impls[b], kernel), kargs, args.repeat)
        agree = len({repr(r) for r in results.values()}) == 1
        mismatch |= not agree
        speed = times["python"] / times["native"] if len(names) == 2 and times["native"] > 0 else float("nan")
        cells = " ".join(f"{times[b] * 1000:12.3f}" for b in names)
        print(f"{label:42s} {cells} {speed:8.1f}x" + ("" if agree else "  MISMATCH"))
        rows.append([label, *(f"{times[b] * 1000:.3f}" for b in names), f"{speed:.2f}", agree])
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["case", *(f"{b}_ms" for b in names), "speedup", "agree"])
            w.writerows(rows)
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
