"""Timing comparison of the two sweep-kernel backends.

Runs the relaxation, interface and layered-stack kernels on sized-up
grids against both implementations and prints best-of-N wall times.
The first numba call compiles, so each kernel is warmed up before the
timed repeats.

    python3 benchmarks/bench_kernels.py [--scale N] [--repeats R]
"""
import argparse
import time

import numpy as np

from intrabody._kernels import numba_backend, numpy_backend


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads(scale):
    rng = np.random.default_rng(0)

    omega = 2.0 * np.pi * np.logspace(10.0, 13.0, 200_000 * scale)
    deltas = np.array([126.2, 1.7])
    taus = np.array([14.4e-12, 0.1e-12])

    theta = np.linspace(0.0, np.deg2rad(89.9), 200_000 * scale)
    cos_t = np.cos(theta)
    sin2_t = np.sin(theta) ** 2
    n21sq = (1.91144471134061 - 0.5651372424572838j) ** 2

    nf = 5_000 * scale
    m = 4
    lam0 = np.linspace(3e-4, 3e-3, nf)
    n_in = rng.uniform(1.0, 2.2, nf) - 1j * rng.uniform(0.0, 0.5, nf)
    n_out = rng.uniform(1.0, 2.2, nf) - 1j * rng.uniform(0.0, 0.5, nf)
    n_layers = rng.uniform(1.0, 2.2, (nf, m)) - 1j * rng.uniform(0.0, 0.5, (nf, m))
    thick = rng.uniform(1e-5, 2e-3, m)
    q = n_in * np.sin(0.6)

    return {
        "debye_grid": (omega, 2.1, deltas, taus),
        "fresnel_sweep": (n21sq, cos_t, sin2_t),
        "stack_sweep": (lam0, q, n_in, n_layers, thick, n_out, False),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=int, default=1, help="grid size multiplier")
    ap.add_argument("--repeats", type=int, default=5, help="timed repeats, best kept")
    args = ap.parse_args()

    work = _workloads(args.scale)
    backends = (numpy_backend, numba_backend)

    print(f"{'kernel':<14} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, params in work.items():
        times = {}
        for be in backends:
            fn = getattr(be, name)
            fn(*params)  # warmup; compiles the numba variant
            times[be.BACKEND] = _best_of(lambda: fn(*params), args.repeats)
        ratio = times["numpy"] / times["numba"]
        print(
            f"{name:<14} {times['numpy']*1e3:>8.1f}ms {times['numba']*1e3:>8.1f}ms "
            f"{ratio:>8.1f}x"
        )


if __name__ == "__main__":
    main()
