#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the NumPy reference.

Run after building the extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py
"""

import math
import time

from shintani.kernels import BACKEND, reference

try:
    from shintani.kernels import _fast
except ImportError:
    _fast = None


def timeit(fn, *args, repeat=3):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def bench_box_sums():
    cases = [
        ("box n=2 M=3000", [0.3, 2.0], [[1.0, 1.0], [0.1716, 5.8284]], 2.0, 3000),
        ("box n=3 M=320", [1.0, 0.5, 2.0],
         [[1.0, 1.0, 1.0], [0.2827, 0.4264, 8.2909], [0.1206, 3.5321, 2.3473]],
         2.0, 320),
        ("box n=3 M=320 s=1.7", [1.0, 0.5, 2.0],
         [[1.0, 1.0, 1.0], [0.2827, 0.4264, 8.2909], [0.1206, 3.5321, 2.3473]],
         1.7, 320),
    ]
    for name, z, gens, s, radius in cases:
        ref_val, ref_t = timeit(reference.box_sum, z, gens, s, radius)
        if _fast is not None:
            fast_val, fast_t = timeit(_fast.box_sum, z, gens, s, radius)
            rel = abs(ref_val - fast_val) / abs(ref_val)
            print(f"{name:24s} reference {ref_t * 1e3:9.1f} ms   "
                  f"fast {fast_t * 1e3:9.1f} ms   x{ref_t / fast_t:5.1f}   "
                  f"rel diff {rel:.2e}")
        else:
            print(f"{name:24s} reference {ref_t * 1e3:9.1f} ms   (no extension built)")


def bench_splitting():
    def sieve(limit):
        import numpy as np
        mask = np.ones(limit + 1, dtype=bool)
        mask[:2] = False
        for p in range(2, int(limit ** 0.5) + 1):
            if mask[p]:
                mask[p * p:: p] = False
        return [int(p) for p in np.flatnonzero(mask)]

    primes = sieve(500_000)
    for name, poly in (("split quad P=5e5", (-2, 0, 1)),
                       ("split cubic P=5e5", (-1, -3, 0, 1)),
                       ("split quartic P=5e5", (1, 1, -3, -1, 1))):
        ref_out, ref_t = timeit(reference.splitting_counts, poly, primes, repeat=1)
        if _fast is not None:
            fast_out, fast_t = timeit(_fast.splitting_counts, poly, primes, repeat=1)
            same = ref_out == fast_out
            print(f"{name:24s} reference {ref_t * 1e3:9.1f} ms   "
                  f"fast {fast_t * 1e3:9.1f} ms   x{ref_t / fast_t:5.1f}   "
                  f"agree {same}")
        else:
            print(f"{name:24s} reference {ref_t * 1e3:9.1f} ms   (no extension built)")


if __name__ == "__main__":
    print(f"selected backend: {BACKEND}")
    bench_box_sums()
    bench_splitting()
