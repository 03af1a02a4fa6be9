"""Compiled vs pure-Python kernels: weighted matching and the colored subset DP.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is run on the same seeded inputs through both backends; the
script checks the results agree and prints median wall times.
"""

import argparse
import statistics
import time

import numpy as np

from sparsebnsl import _backend
from sparsebnsl.arcbounded import _arc_cap, _Flat
from sparsebnsl.generators import random_instance


def median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def matching_case(n, density, seed):
    rng = np.random.default_rng(seed)
    edges = [(u, v, int(rng.integers(1, 1000)))
             for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return n, edges


def colored_case(n, k, seed):
    inst = random_instance(n, 3, 8, (1, 100), seed)
    k = _arc_cap(inst, k)
    flat = _Flat(inst, k)
    c = min(2 * k, n)
    colors = np.random.default_rng(seed).integers(0, c, size=n, dtype=np.int64)
    return (c, k, colors, flat.vertex, flat.score, flat.size, flat.start, flat.members,
            flat.empty), flat.bound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _backend.BACKEND != "cython":
        raise SystemExit("compiled kernels are not available; build the package first")

    print(f"{'kernel':<28}{'compiled ms':>13}{'python ms':>12}{'speedup':>10}")
    for n, density in [(20, 0.3), (60, 0.2), (150, 0.1)]:
        nn, edges = matching_case(n, density, n)
        fast = _backend.mwm_mates(nn, edges)
        slow = _backend.mwm_mates(nn, edges, force_python=True)
        weight = {(min(u, v), max(u, v)): w for u, v, w in edges}

        def total(mates):
            return sum(weight[(v, m)] for v, m in enumerate(mates) if m > v)

        assert total(fast) == total(slow)
        tc = median_time(lambda: _backend.mwm_mates(nn, edges), args.repeat)
        tp = median_time(lambda: _backend.mwm_mates(nn, edges, force_python=True), args.repeat)
        label = f"matching n={n} m={len(edges)}"
        print(f"{label:<28}{tc * 1e3:>13.2f}{tp * 1e3:>12.2f}{tp / tc:>9.1f}x")

    for n, k in [(8, 2), (12, 3), (16, 4)]:
        dp_args, bound = colored_case(n, k, n)
        fast = _backend.colored_dp(*dp_args, score_bound=bound)
        slow = _backend.colored_dp(*dp_args, score_bound=bound, force_python=True)
        assert fast[0] == slow[0]
        tc = median_time(lambda: _backend.colored_dp(*dp_args, score_bound=bound), args.repeat)
        tp = median_time(lambda: _backend.colored_dp(*dp_args, score_bound=bound,
                                                     force_python=True), args.repeat)
        label = f"colored DP n={n} k={dp_args[1]}"
        print(f"{label:<28}{tc * 1e3:>13.2f}{tp * 1e3:>12.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
