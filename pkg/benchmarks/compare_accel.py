"""Time the numba kernels against their pure-numpy fallbacks.

Usage: python benchmarks/compare_accel.py [--dim 8192] [--batch 784] [--reps 5]

Imports both kernel modules directly, so no environment flag is needed.
"""

import argparse
import time

import numpy as np

from hyperspace.accel import _numba_kernels as nb
from hyperspace.accel import _numpy_kernels as plain


def timeit(fn, reps):
    fn()  # warm-up (numba compilation, cache fill)
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dim", type=int, default=8192)
    ap.add_argument("--batch", type=int, default=784)
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    spec = np.exp(1j * rng.uniform(-np.pi, np.pi, (args.batch, args.dim)))
    exps = rng.uniform(0, 20, args.batch)
    phases = rng.uniform(-np.pi, np.pi, args.dim)
    cx = np.tile(np.arange(28.0), 28)
    cy = np.repeat(np.arange(28.0), 28)
    px, py = rng.uniform(0, 27, (2, 10_000))

    cases = [
        (f"fft {args.batch}x{args.dim}", lambda m: m.fft(spec)),
        (f"ifft {args.batch}x{args.dim}", lambda m: m.ifft(spec)),
        (f"phasor_matrix {args.batch}x{args.dim}", lambda m: m.phasor_matrix(exps, phases)),
        ("min_dist 784x10000", lambda m: m.min_dist_to_points(cx, cy, px, py)),
    ]
    print(f"{'kernel':34s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fn in cases:
        t_nb = timeit(lambda: fn(nb), args.reps)
        t_np = timeit(lambda: fn(plain), args.reps)
        print(f"{name:34s} {t_nb * 1e3:9.2f}ms {t_np * 1e3:9.2f}ms {t_np / t_nb:7.2f}x")


if __name__ == "__main__":
    main()
