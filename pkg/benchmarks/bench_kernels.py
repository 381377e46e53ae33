"""Compare the compiled and pure-Python truss kernels.

Times edge support counting and peeling on Watts-Strogatz graphs for every
importable backend and checks that both produce identical trussness.

    python benchmarks/bench_kernels.py --n 10000 100000 --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from socialcentrality._backend import available_backends
from socialcentrality.generators import GeneratorSpec, generate


def _best_of(fn, repeat):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(n: int, nei: int, p: float, repeat: int, seed: int):
    g = generate(GeneratorSpec("ws", n, nei=nei, p=p, seed=seed))
    rows = []
    reference = None
    for name, k in sorted(available_backends().items()):
        t_sup, sup = _best_of(lambda: k.edge_support(g.indptr, g.indices, g.edge_src, g.edge_dst), repeat)
        t_peel, et = _best_of(
            lambda: k.truss_peel(g.indptr, g.indices, g.slot_edge, g.edge_src, g.edge_dst, sup), repeat
        )
        if reference is None:
            reference = et
        elif not np.array_equal(reference, et):
            raise AssertionError(f"backend {name} disagrees on n={n}")
        rows.append((name, g.n, g.m, t_sup, t_peel))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[10_000, 100_000])
    ap.add_argument("--nei", type=int, default=4)
    ap.add_argument("--p", type=float, default=0.3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"{'backend':<8} {'n':>9} {'m':>10} {'support_s':>10} {'peel_s':>9} {'speedup':>8}")
    for n in args.n:
        rows = bench(n, args.nei, args.p, args.repeat, args.seed)
        slowest = max(s + p for *_, s, p in rows)
        for name, nn, m, s, p in rows:
            print(f"{name:<8} {nn:>9} {m:>10} {s:>10.4f} {p:>9.4f} {slowest / (s + p):>7.1f}x")


if __name__ == "__main__":
    main()
