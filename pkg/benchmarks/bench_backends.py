#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the NumPy fallback.

Times the two hot kernels (the weighted product-limit inner loop and the
per-replication outbreak simulation) at several sizes, plus a full
default-scale simulation through the public API on each backend.

Usage: python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import time

import numpy as np

from loscure.backend import get_backend
from loscure.defaults import default_config
from loscure.simulate import compile_tables, simulate_outbreak


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _backends():
    out = {"python": get_backend("python")}
    try:
        out["compiled"] = get_backend("compiled")
    except ImportError:
        print("note: compiled core not built; benchmarking the fallback only")
    return out


def bench_product_limit(backends, repeats):
    rng = np.random.default_rng(0)
    print("\nproduct_limit (weighted risk-set inner loop)")
    print(f"{'n':>10} " + " ".join(f"{name:>12}" for name in backends) + "   speedup")
    for n in (1_000, 10_000, 100_000, 1_000_000):
        w = rng.random(n)
        d = (rng.random(n) < 0.5).astype(np.uint8)
        x = ((rng.random(n) < 0.3) & (d == 0)).astype(np.uint8)
        times = {name: _best_of(lambda k=k: k.product_limit(w, d, x), repeats) for name, k in backends.items()}
        ratio = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        cells = " ".join(f"{times[name] * 1e3:>10.2f}ms" for name in backends)
        print(f"{n:>10} {cells}   {ratio:>6.1f}x")


def bench_replication(backends, repeats):
    config = default_config()
    tables = compile_tables(config)
    args = (tables.p_hosp, tables.adm_cdf, tables.female_frac, tables.band_cdf,
            tables.hw_cdf, tables.icu_cdf, tables.durations, tables.horizon)
    rng = np.random.default_rng(1)
    print("\nsimulate_replication (one replication, pre-drawn uniforms)")
    print(f"{'individuals':>12} " + " ".join(f"{name:>12}" for name in backends) + "   speedup")
    for n in (1_000, 10_000, 100_000, 1_000_000):
        U = rng.random((n, 8))
        times = {name: _best_of(lambda k=k: k.simulate_replication(U, *args), repeats)
                 for name, k in backends.items()}
        ratio = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        cells = " ".join(f"{times[name] * 1e3:>10.2f}ms" for name in backends)
        print(f"{n:>12} {cells}   {ratio:>6.1f}x")


def bench_full_simulation(backends, repeats):
    import loscure.simulate as sim

    config = default_config()
    print("\nsimulate_outbreak (1000 replications x 1000 individuals, 200 days, incl. RNG)")
    for name, kernel in backends.items():
        original = sim.kernels
        sim.kernels = kernel
        try:
            best = _best_of(lambda: simulate_outbreak(config), max(1, repeats // 2))
        finally:
            sim.kernels = original
        print(f"{name:>12}: {best:8.2f}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    backends = _backends()
    bench_product_limit(backends, args.repeats)
    bench_replication(backends, args.repeats)
    bench_full_simulation(backends, args.repeats)


if __name__ == "__main__":
    main()
