"""Benchmark the jitted objective kernels against the pure-numpy fallback.

Times the nonlocality grid evaluation (the hot loop of every pair
minimization) at several grid sizes, on a mid-mixedness two-qubit state.

    python3 benchmarks/bench_kernels.py [--repeats 5]

Set QREALITY_DISABLE_NUMBA=1 to confirm the package falls back cleanly; this
script always times both backends when numba is importable.
"""

import argparse
import time

import numpy as np

from qreality import kernels
from qreality.linalg import partial_trace
from qreality.measures import entropy, mutual_information
from qreality.optimize import OptimizerConfig, minimize_pair
from qreality.states import werner

GRID_SIDES = [(13, 12), (25, 24), (37, 36)]


def time_grid(backend, axes, r1, r2, tmat, s_rho, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        kernels.nonlocality_grid(axes, axes, r1, r2, tmat, s_rho, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rho = werner(0.5)
    r1, r2, tmat = kernels.bloch_correlations(rho.mat)
    s_rho = entropy(rho)

    backends = ["numpy"]
    if kernels.NUMBA_ENABLED:
        backends.insert(0, "numba")
        # trigger compilation outside the timed region
        warm, _, _ = kernels.axis_grid(3, 2)
        kernels.nonlocality_grid(warm, warm, r1, r2, tmat, s_rho, backend="numba")
    else:
        print("numba unavailable or disabled; timing the numpy fallback only")

    print(f"active backend: {kernels.backend()}")
    print(f"{'grid':>12} {'cells':>10}", *(f"{b:>12}" for b in backends))
    for n_theta, n_phi in GRID_SIDES:
        axes, _, _ = kernels.axis_grid(n_theta, n_phi)
        cells = axes.shape[0] ** 2
        times = [time_grid(b, axes, r1, r2, tmat, s_rho, args.repeats)
                 for b in backends]
        label = f"{n_theta}x{n_phi}"
        print(f"{label:>12} {cells:>10}",
              *(f"{t * 1e3:>10.1f}ms" for t in times))

    start = time.perf_counter()
    result = minimize_pair(rho, "nonlocality", OptimizerConfig())
    elapsed = time.perf_counter() - start
    print(f"\nfull pair minimization (default config, {kernels.backend()}): "
          f"{elapsed * 1e3:.0f}ms, value {result.value:.6f}, "
          f"{result.evaluations} evaluations")

    mi = mutual_information(rho)
    s_env = entropy(partial_trace(rho, 1))
    axes, _, _ = kernels.axis_grid(25, 24)
    for backend in backends:
        start = time.perf_counter()
        for _ in range(args.repeats):
            kernels.single_discord_grid(axes, r1, r2, tmat, mi, s_env,
                                        backend=backend)
        per = (time.perf_counter() - start) / args.repeats
        print(f"single-side grid ({backend}): {per * 1e3:.2f}ms")


if __name__ == "__main__":
    main()
