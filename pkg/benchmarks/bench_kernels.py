"""Compare the compiled and pure-numpy projected-gradient kernels.

Usage: python3 benchmarks/bench_kernels.py [--ris-elements 200] [--iterations 3000]
"""

import argparse
import importlib
import time

import numpy as np


def available_backends():
    backends = {}
    numpy_mod = importlib.import_module("rsmaris.kernels._pg_numpy")
    backends["numpy"] = numpy_mod
    try:
        backends["cython"] = importlib.import_module("rsmaris.kernels._pg_cython")
    except ImportError:
        pass
    return backends


def bench(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--users", type=int, default=3)
    parser.add_argument("--antennas", type=int, default=10)
    parser.add_argument("--ris-elements", type=int, default=200)
    parser.add_argument("--iterations", type=int, default=3000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    rows = args.users * args.antennas
    kbar = rng.standard_normal((rows, args.ris_elements)) + 1j * rng.standard_normal(
        (rows, args.ris_elements)
    )
    hbar = rng.standard_normal(rows) + 1j * rng.standard_normal(rows)
    theta0 = np.exp(1j * rng.uniform(0, 2 * np.pi, args.ris_elements))
    step = 0.99 / np.linalg.norm(kbar, 2) ** 2

    backends = available_backends()
    print(
        f"K={args.users} M={args.antennas} L={args.ris_elements} "
        f"I={args.iterations} (best of {args.repeats})"
    )
    reference = {}
    timings = {}
    for name, mod in backends.items():
        t_asc = bench(lambda: mod.ascend(kbar, theta0, step, args.iterations), args.repeats)
        t_desc = bench(
            lambda: mod.descend(kbar, hbar, theta0, step, args.iterations), args.repeats
        )
        timings[name] = (t_asc, t_desc)
        reference[name] = (
            mod.ascend(kbar, theta0, step, args.iterations),
            mod.descend(kbar, hbar, theta0, step, args.iterations),
        )
        print(f"  {name:>7}: ascend {t_asc*1e3:8.2f} ms   descend {t_desc*1e3:8.2f} ms")

    if len(backends) == 2:
        asc_n, desc_n = reference["numpy"]
        asc_c, desc_c = reference["cython"]
        agree = np.allclose(asc_n, asc_c, atol=1e-9) and np.allclose(
            desc_n, desc_c, atol=1e-9
        )
        ratio_a = timings["numpy"][0] / timings["cython"][0]
        ratio_d = timings["numpy"][1] / timings["cython"][1]
        print(f"  speedup: ascend {ratio_a:.2f}x, descend {ratio_d:.2f}x")
        print(f"  backends agree: {agree}")
    else:
        print("  compiled backend not available; only numpy timed")


if __name__ == "__main__":
    main()
