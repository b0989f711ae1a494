"""Compare the compiled and pure-Python basis-sign kernels.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import time

from neighborly import kernels


def workloads(rng):
    yield "moment curve d=4 n=12", [[t**k for k in range(5)] for t in range(12)], 5
    yield "random ints r=5 n=14", [[rng.randint(-50, 50) for _ in range(5)] for _ in range(14)], 5
    yield "random ints r=3 n=30", [[rng.randint(-1000, 1000) for _ in range(3)] for _ in range(30)], 3
    yield "big ints r=4 n=12 (overflow path)", [[rng.randint(-10**12, 10**12) for _ in range(4)] for _ in range(12)], 4


def best_of(func, rows, r, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        func(rows, r)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if kernels._compiled is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    rng = random.Random(0)
    print(f"{'workload':40} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for name, rows, r in workloads(rng):
        assert kernels.basis_signs_python(rows, r) == kernels.basis_signs_compiled(rows, r)
        py = best_of(kernels.basis_signs_python, rows, r, args.repeat)
        cy = best_of(kernels.basis_signs_compiled, rows, r, args.repeat)
        print(f"{name:40} {py * 1e3:12.2f} {cy * 1e3:12.2f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
