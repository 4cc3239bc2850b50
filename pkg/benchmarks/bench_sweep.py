"""Compare the numba and pure-numpy pair-sweep kernels on one tree order.

    python benchmarks/bench_sweep.py --n 13 --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spectree import kernels
from spectree.measures import ConjectureId
from spectree.survey import _INDEX, compute_all, sweep_arrays


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=13)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    records = compute_all(args.n)
    print(f"n={args.n}: {len(records)} trees, invariants in {time.perf_counter() - t0:.2f}s")
    lo, hi, cls, tol = sweep_arrays(records)
    conj = np.array([[_INDEX[c.larger], _INDEX[c.smaller]] for c in ConjectureId], dtype=np.int64)

    results = {}
    timings = {}
    paths = [False] + ([True] if kernels.HAVE_NUMBA else [])
    for use in paths:
        fn = lambda: kernels.sweep(lo, hi, cls, conj, tol, use_numba=use)  # noqa: E731
        results[use] = fn()  # also triggers compilation
        timings[use] = _best(fn, args.repeat)
        name = "numba" if use else "numpy"
        print(f"{name:6s} {timings[use]:8.3f}s  counterexamples={results[use][0].sum(axis=0).tolist()}")
    if len(results) == 2:
        same = all(np.array_equal(a, b) for a, b in zip(results[False], results[True]))
        print(f"speedup {timings[False] / timings[True]:.1f}x, identical={same}")


if __name__ == "__main__":
    main()
