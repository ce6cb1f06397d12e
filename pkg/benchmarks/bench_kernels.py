"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case is run on both backends with identical inputs; results must agree
before timings are reported.
"""

import argparse
import itertools
import random
import sys
import time

from volrig import _kernels_py as python_backend
from volrig import kernels
from volrig.linalg import DEFAULT_PRIME


def random_rows(m, n, q, rng):
    return [[rng.randrange(q) for _ in range(n)] for _ in range(m)]


def cases(rng, q):
    # rigidity-sized ranks: rows = facets, cols = d*n
    for m, n in [(30, 24), (120, 60), (300, 150)]:
        rows = random_rows(m, n, q, rng)
        yield f"rank {m}x{n}", "rank", (rows, n, q)
    sq = random_rows(80, 80, q, rng)
    yield "det 80x80", "det", (sq, q)
    X = random_rows(9, 9, q, rng)
    subsets = [list(s) for s in itertools.combinations(range(9), 3)]
    yield "3-minors of 9x9 (84x84)", "minors", (X, subsets, subsets, q)
    wide = random_rows(40, 200, q, rng)
    yield "pivots 40x200", "pivot_columns", (wide, 200, q)


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        copies = [[list(r) for r in a] if isinstance(a, list) and a and isinstance(a[0], list) else a for a in args]
        start = time.perf_counter()
        out = fn(*copies)
        best = min(best, time.perf_counter() - start)
    return best, out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    compiled = kernels.compiled_backend
    if compiled is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = random.Random(args.seed)
    q = DEFAULT_PRIME
    print(f"{'case':28} {'python (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    for label, name, case_args in cases(rng, q):
        tp, rp = timed(getattr(python_backend, name), case_args, args.repeat)
        tc, rc = timed(getattr(compiled, name), case_args, args.repeat)
        if rp != rc:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        print(f"{label:28} {tp * 1e3:12.2f} {tc * 1e3:14.2f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
