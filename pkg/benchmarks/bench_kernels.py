#!/usr/bin/env python3
"""Time the numba and numpy permanent/determinant kernels.

    python benchmarks/bench_kernels.py [--max-n 14] [--repeat 20]

Reports seconds per call (best of ``--repeat``).  Smaller is better.
"""

import argparse
import timeit

import numpy as np

from qspace.kernels import determinant_numba, determinant_numpy, permanent_numba, permanent_numpy


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=14)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    # compile outside the timed region
    permanent_numba(np.ones((2, 2)))
    determinant_numba(np.ones((2, 2)))
    determinant_numba(np.ones((8, 8)))

    kernels = [
        ("permanent", permanent_numba, permanent_numpy),
        ("determinant", determinant_numba, determinant_numpy),
    ]
    print(f"{'kernel':<12} {'n':>3} {'numba [s]':>12} {'numpy [s]':>12} {'speedup':>8}")
    for name, fast, slow in kernels:
        for n in range(1, args.max_n + 1):
            if name == "determinant" and n > 10:
                break
            a = (rng.random((n, n)) < 0.5).astype(np.float64)
            number = max(1, 2000 >> n)
            t_nb = min(timeit.repeat(lambda: fast(a), number=number, repeat=args.repeat)) / number
            t_np = min(timeit.repeat(lambda: slow(a), number=number, repeat=args.repeat)) / number
            assert fast(a) == slow(a)
            print(f"{name:<12} {n:>3} {t_nb:>12.3e} {t_np:>12.3e} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()
