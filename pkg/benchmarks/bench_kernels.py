#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python reference.

Two workloads:
  * the exhaustive subtour subset scan (the hot loop behind the
    feasibility checker and lazy separation), on a weighted K_{n,n}
    with every subset size in play;
  * Hamiltonian tour enumeration on complete balanced instances.

Usage: python benchmarks/bench_kernels.py [--scan-vertices N] [--tour-n N]
"""

from __future__ import annotations

import argparse
import random
import time

from combcert._kernels import reference

try:
    from combcert._kernels import _speedups
except ImportError:
    _speedups = None


def scan_case(num_vertices: int, seed: int = 7):
    rng = random.Random(seed)
    half = num_vertices // 2
    masks, weights = [], []
    for i in range(half):
        for j in range(half, num_vertices):
            masks.append((1 << i) | (1 << j))
            weights.append(rng.randint(0, 6))
    return masks, weights


def time_call(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None or dt < best else best
    return best, result


def bench_scan(num_vertices: int):
    masks, weights = scan_case(num_vertices)
    denom, lo, hi = 6, 3, num_vertices - 1
    t_pure, out_pure = time_call(
        reference.sec_violations, num_vertices, masks, weights, denom, lo, hi
    )
    line = f"subset scan  n={num_vertices:2d} ({1 << num_vertices} subsets)"
    print(f"{line}  pure {t_pure * 1e3:9.1f} ms", end="")
    if _speedups is not None:
        t_fast, out_fast = time_call(
            _speedups.sec_violations, num_vertices, masks, weights, denom, lo, hi
        )
        assert sorted(out_fast) == sorted(out_pure)
        print(f"   compiled {t_fast * 1e3:9.1f} ms   speedup {t_pure / t_fast:6.1f}x")
    else:
        print("   (compiled kernel not built)")


def bench_tours(n: int):
    adj = [(1 << n) - 1] * n
    t_pure, out_pure = time_call(
        lambda: list(reference.hamiltonian_cycles(n, adj, adj))
    )
    line = f"tour search  n={n:2d} ({len(out_pure)} tours)"
    print(f"{line}  pure {t_pure * 1e3:9.1f} ms", end="")
    if _speedups is not None:
        t_fast, out_fast = time_call(_speedups.hamiltonian_cycles, n, adj, adj)
        assert len(out_fast) == len(out_pure)
        print(f"   compiled {t_fast * 1e3:9.1f} ms   speedup {t_pure / t_fast:6.1f}x")
    else:
        print("   (compiled kernel not built)")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scan-vertices", type=int, default=18)
    parser.add_argument("--tour-n", type=int, default=6)
    args = parser.parse_args()
    for n in (12, 16, args.scan_vertices):
        bench_scan(n)
    for n in (5, args.tour_n):
        bench_tours(n)


if __name__ == "__main__":
    main()
