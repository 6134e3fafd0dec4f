"""Compare the compiled and pure-Python subset-scan kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
Prints one row per (kernel, instance) with both timings, the speedup, and
whether the two backends returned identical results.
"""

import argparse
import time

from chamberiso import _kernels_py
from chamberiso.arrangement import generate
from chamberiso.chamber_graph import build_graph

try:
    from chamberiso import _kernels as _compiled
except ImportError:
    _compiled = None

INSTANCES = [
    ("random d=2 n=5", dict(family="random", d=2, n=5, seed=1)),
    ("random d=2 n=6", dict(family="random", d=2, n=6, seed=1)),
    ("random d=3 n=4", dict(family="random", d=3, n=4, seed=1)),
    ("grid 3x3", dict(family="grid", counts=(3, 3))),
]


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled kernels not built; only the pure-Python backend is available")
    print(f"{'kernel':<22}{'instance':<18}{'|V|':>5}{'python s':>12}{'compiled s':>12}{'speedup':>9}  same")
    for label, params in INSTANCES:
        p = dict(params)
        arr = generate(p.pop("family"), **p)
        g = build_graph(arr)
        nbr, deg = list(g.neighbor_masks), list(g.degree)
        nv = len(nbr)
        jobs = [
            ("gray_min_boundary", lambda m: m.gray_min_boundary(nbr, deg, True)),
            ("combo_min_boundary", lambda m: m.combo_min_boundary(nbr, deg, nv // 2)),
            ("gray_min_conductance", lambda m: m.gray_min_conductance(nbr, deg)),
        ]
        for name, job in jobs:
            ref, tp = best_of(lambda: job(_kernels_py), args.repeat)
            if _compiled is None:
                print(f"{name:<22}{label:<18}{nv:>5}{tp:>12.4f}{'-':>12}{'-':>9}  -")
                continue
            got, tc = best_of(lambda: job(_compiled), args.repeat)
            print(f"{name:<22}{label:<18}{nv:>5}{tp:>12.4f}{tc:>12.6f}{tp / tc:>9.0f}  {got == ref}")


if __name__ == "__main__":
    main()
