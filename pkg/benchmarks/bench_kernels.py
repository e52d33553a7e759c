"""Compare the compiled and pure-Python clearing kernels.

    python benchmarks/bench_kernels.py [--markets 20000] [--repeat 3]

Times three workloads per backend: batch clearing of random markets, the full
preset run set, and a pair of threshold searches.
"""

import argparse
import time

import numpy as np

from cgs import _backend, presets
from cgs.analysis import threshold_income_elasticity
from cgs.engine import run_scenario

FIELDS = ("q0", "p0", "sigma", "d0", "eps_o", "s_eff", "gamma", "cost", "sp0", "eps_p")


def random_markets(n, seed=0):
    rng = np.random.default_rng(seed)
    cols = [rng.uniform(1, 40, n), rng.uniform(1, 20, n), rng.uniform(0.1, 5, n),
            rng.uniform(0.5, 40, n), -rng.uniform(0, 1.5, n), rng.uniform(1e3, 1e5, n),
            rng.uniform(1e-6, 2e-4, n), rng.uniform(0, 5e-3, n), rng.uniform(5e-4, 5e-3, n),
            -rng.uniform(0, 2, n)]
    return [np.ascontiguousarray(c) for c in cols]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(markets):
    def batch():
        _backend.clear_many(*markets, 0.0, 1e-9, 200)

    def runset():
        for name in presets.PRESETS:
            run_scenario(presets.expand_preset(name))

    def thresholds():
        for name in ("rapid", "slow"):
            threshold_income_elasticity(presets.expand_preset(name), (0.5, 10.0), 1e-4)

    return {"batch clear": batch, "preset run set": runset, "threshold pair": thresholds}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--markets", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    markets = random_markets(args.markets)
    presets.calibrated_demand_side()
    backends = ["python"]
    try:
        _backend.kernels("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernel not built; timing the pure-Python kernel only")

    saved = _backend.clear_price, _backend.clear_many
    timings = {}
    try:
        for name in backends:
            _backend.clear_price, _backend.clear_many = _backend.kernels(name)
            for label, fn in workloads(markets).items():
                timings[label, name] = best_of(fn, args.repeat)
    finally:
        _backend.clear_price, _backend.clear_many = saved

    print(f"{'workload':18s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label in workloads(markets):
        py = timings[label, "python"]
        cy = timings.get((label, "cython"))
        if cy is None:
            print(f"{label:18s} {py:9.4f}s {'-':>10s} {'-':>8s}")
        else:
            print(f"{label:18s} {py:9.4f}s {cy:9.4f}s {py / cy:7.1f}x")
    print(f"({args.markets} random markets, best of {args.repeat})")


if __name__ == "__main__":
    main()
