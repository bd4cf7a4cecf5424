#!/usr/bin/env python3
"""Benchmark the compiled tree-search kernel against the pure-Python fallback.

Runs the exhaustive maximum-relocatable-tree search on one representative
factorization per cycle type of the a5-ex2 fixture plus the toy instances,
with each kernel, and prints a comparison table.

Usage: python benchmarks/bench_treesearch.py [--repeat N]
"""
import argparse
import time

from spanfact import treesearch
from spanfact.digraph import build_toy, enumerate_factorizations, factorization_at
from spanfact.fixtures import load_fixture
from spanfact.spanning import max_relocatable_tree


def cases():
    for m in (3, 5):
        d, f = build_toy(m)
        yield f"toy:{m} b=0", f
    d = load_fixture("a5-ex2").digraph
    seen = set()
    for f in enumerate_factorizations(d):
        tp = f.f1.cycle_type()
        if tp not in seen:
            seen.add(tp)
            yield f"a5-ex2 b={f.bitmask} {tp}", f


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if treesearch._compiled is None:
        print("compiled kernel not built; showing pure-Python timings only")
    header = f"{'case':<34} {'size':>4} {'nodes':>8} {'pure (s)':>10} {'cython (s)':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, f in cases():
        times = {}
        result = None
        for kernel, force_pure in (("pure", True), ("cython", False)):
            if kernel == "cython" and treesearch._compiled is None:
                continue
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                result = max_relocatable_tree(f, force_pure=force_pure)
                best = min(best, time.perf_counter() - t0)
            times[kernel] = best
        speed = (
            f"{times['pure'] / times['cython']:.1f}x" if "cython" in times else "-"
        )
        print(
            f"{label:<34} {result.size:>4} {result.nodes:>8} "
            f"{times['pure']:>10.4f} {times.get('cython', float('nan')):>10.4f} {speed:>8}"
        )


if __name__ == "__main__":
    main()
