"""Benchmark the compiled propagation kernels against the NumPy fallback.

Run after installing the package:

    python3 benchmarks/bench_kernels.py

Workloads mirror the toolkit's hot paths: single 9x9 Hermitian exponentials,
four-segment schedule products (one gate simulation) and the population
integral behind the Rydberg-time metric, plus an end-to-end Monte-Carlo-
style batch of perturbed gates.
"""

import time

import numpy as np

from rydgate._kernels import available_backends


def _random_workload(seed=7, n=9, n_segments=4):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n_segments, n, n)) + 1j * rng.normal(size=(n_segments, n, n))
    hams = np.ascontiguousarray((m + np.conj(np.swapaxes(m, 1, 2))) / 2)
    durations = np.ascontiguousarray(rng.uniform(0.5, 2.0, size=n_segments))
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi = np.ascontiguousarray(psi / np.linalg.norm(psi))
    weights = np.ascontiguousarray(rng.uniform(0.0, 2.0, size=n))
    return hams, durations, psi, weights


def _best_of(fn, repeats=5, min_time=0.05):
    best = float("inf")
    for _ in range(repeats):
        calls = 0
        start = time.perf_counter()
        while True:
            fn()
            calls += 1
            elapsed = time.perf_counter() - start
            if elapsed >= min_time:
                break
        best = min(best, elapsed / calls)
    return best


def build_cases(backend):
    hams, durations, psi, weights = _random_workload()
    single = hams[0]

    def batch():
        for k in range(50):
            backend.sequence_product(hams, durations * (1.0 + 0.001 * k))

    return {
        "expm_hermitian (9x9)": lambda: backend.expm_hermitian(single, 1.3),
        "sequence_product (4 segments)": lambda: backend.sequence_product(hams, durations),
        "population_integral (4 x 256)": lambda: backend.weighted_population_integral(
            hams, durations, psi, weights, 256
        ),
        "50-gate batch": batch,
    }


def main():
    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    results = {}
    for name, backend in backends.items():
        for case, fn in build_cases(backend).items():
            results.setdefault(case, {})[name] = _best_of(fn)

    width = max(len(case) for case in results)
    header = f"{'case':<{width}}  " + "".join(f"{name:>14}" for name in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for case, timings in results.items():
        row = f"{case:<{width}}  " + "".join(
            f"{timings[name] * 1e6:>12.1f}us" for name in backends
        )
        if "compiled" in timings and "pure" in timings:
            row += f"{timings['pure'] / timings['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
