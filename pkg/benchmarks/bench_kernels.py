#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--n 1000000] [--repeats 5]

Times the pointwise nonlinear-phase rotation (the split-step hot loop) and
the three inequality-sweep kernels, plus a full Strang step at N = 4096 with
each backend's phase kernel.
"""

import argparse
import time

import numpy as np

from lognls._kernels import _numpy as np_impl

try:
    from lognls._kernels import _compiled as cy_impl
except ImportError:
    cy_impl = None


def best_of(repeats, fn, *args, **kwargs):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args, **kwargs)
        best = min(best, time.perf_counter() - start)
    return best


def sample_cloud(n, seed, lo=1e-6, hi=1e3):
    rng = np.random.default_rng(seed)
    moduli = np.exp(rng.uniform(np.log(lo), np.log(hi), n))
    return moduli * np.exp(1j * rng.uniform(0, 2 * np.pi, n))


def strang_step(backend, values, symbol, dt):
    half, _ = backend.nl_phase(values, 0.5 * dt, 1.0, 0.0, 2.0, 0.0, 0)
    half = np.fft.ifft(symbol * np.fft.fft(half))
    full, _ = backend.nl_phase(half, 0.5 * dt, 1.0, 0.0, 2.0, 0.0, 0)
    return full


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1_000_000,
                        help="sample count for the sweep kernels")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    z = sample_cloud(args.n, 0)
    w = sample_cloud(args.n, 1)
    z_disk = sample_cloud(args.n, 2, lo=1e-200, hi=1.0)
    w_disk = sample_cloud(args.n, 3, lo=1e-200, hi=1.0)
    field = sample_cloud(4096, 4, lo=1e-2, hi=1e1)
    symbol = np.exp(-1j * np.linspace(0, 50, 4096) ** 2)

    cases = [
        ("nl_phase (exact)", lambda b: b.nl_phase(z, 1e-3, 1.0, 0.0, 2.0, 0.0, 0)),
        ("nl_phase (shifted + power)",
         lambda b: b.nl_phase(z, 1e-3, 1.0, -1.0, 2.0, 1e-4, 1)),
        ("ch_sweep", lambda b: b.ch_sweep(z, w, 1.0)),
        ("g1_sweep (delta=0.1)", lambda b: b.g1_sweep(z_disk, w_disk, 0.1, 1.0)),
        ("g2_sweep", lambda b: b.g2_sweep(z, w, 1.0)),
        ("strang step (N=4096)",
         lambda b: [strang_step(b, field, symbol, 1e-3) for _ in range(100)]),
    ]

    print(f"samples: {args.n:,}; best of {args.repeats} repeats")
    header = f"{'kernel':30s} {'numpy':>12s} {'compiled':>12s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_np = best_of(args.repeats, call, np_impl)
        if cy_impl is None:
            print(f"{name:30s} {t_np * 1e3:10.2f}ms {'n/a':>12s} {'n/a':>9s}")
            continue
        t_cy = best_of(args.repeats, call, cy_impl)
        print(f"{name:30s} {t_np * 1e3:10.2f}ms {t_cy * 1e3:10.2f}ms "
              f"{t_np / t_cy:8.2f}x")
    if cy_impl is None:
        print("\ncompiled backend unavailable; build it with "
              "`pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
