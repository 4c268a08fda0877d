"""Timing comparison of the two exhaustive-search kernels.

The reference solver has a pure-Python kernel and a Cython twin selected at
import. This script runs both on the same instances and prints per-instance
wall times plus the speedup. Usage:

    python3 benchmarks/bench_search.py [--repeats 3]

Instances with incomplete algorithm graphs (the star6 row) spend most of
their time reducing starting placements, which happens outside the kernel;
the speedup there reflects the whole solve, not the search loop alone.
"""

import argparse
import time

import commroute.oracle as oracle_mod
from commroute.graphs import complete_graph, grid_graph, path_graph, star_graph
from commroute.oracle import oracle_min_steps, oracle_min_swaps, search_impl
from commroute.solutions import TmpInstance

CASES = [
    ("path5 / complete5", TmpInstance(path_graph(5), complete_graph(5))),
    ("path6 / complete6", TmpInstance(path_graph(6), complete_graph(6))),
    ("path6 / star6", TmpInstance(path_graph(6), star_graph(6))),
    ("grid2x3 / complete6", TmpInstance(grid_graph(2, 3), complete_graph(6))),
    ("star7 / complete7", TmpInstance(star_graph(7), complete_graph(7))),
]


def time_kernel(impl, repeats):
    saved = oracle_mod._impl
    oracle_mod._impl = impl
    rows = []
    try:
        for name, inst in CASES:
            best = float("inf")
            for _ in range(repeats):
                t0 = time.perf_counter()
                mt = oracle_min_steps(inst)
                ms = oracle_min_swaps(inst)
                best = min(best, time.perf_counter() - t0)
            rows.append((name, mt, ms, best))
    finally:
        oracle_mod._impl = saved
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3, help="timing repeats, best is kept")
    args = ap.parse_args()

    try:
        compiled = search_impl("compiled")
    except RuntimeError:
        print("compiled kernel not built; run pip install -e . first")
        return 1
    python = search_impl("python")

    py_rows = time_kernel(python, args.repeats)
    cy_rows = time_kernel(compiled, args.repeats)

    width = max(len(name) for name, _ in CASES)
    print(f"{'instance':<{width}}  {'mt':>3} {'ms':>3} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for (name, mt, ms, t_py), (_, mt2, ms2, t_cy) in zip(py_rows, cy_rows):
        if (mt, ms) != (mt2, ms2):
            raise AssertionError(f"kernels disagree on {name}: {(mt, ms)} vs {(mt2, ms2)}")
        print(f"{name:<{width}}  {mt:>3} {ms:>3} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
