#!/usr/bin/env python3
"""Benchmark the compiled event-loop kernel against the pure-Python fallback.

Runs the same configuration through both kernels, reports events/second and
the speedup, and verifies the two reports are bit-identical.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --n 256 --f 16 --horizon 5000
"""

import argparse
import time

import numpy as np

from drone_gossip import HAVE_COMPILED_KERNEL, fully_connected_config, run


def time_kernel(cfg, kernel):
    start = time.perf_counter()
    report = run(cfg, kernel=kernel)
    elapsed = time.perf_counter() - start
    return report, elapsed


def reports_identical(a, b):
    return (
        np.array_equal(a.per_node_avg_age, b.per_node_avg_age)
        and a.drone_age_histogram == b.drone_age_histogram
        and a.final_state.rng_state == b.final_state.rng_state
        and all(np.array_equal(x, y) for x, y in zip(a.renewal_samples, b.renewal_samples))
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=128)
    parser.add_argument("--f", type=int, default=8)
    parser.add_argument("--horizon", type=float, default=2000.0)
    parser.add_argument("--lambda-d", type=float, default=2.0)
    parser.add_argument("--lambda-m", type=float, default=4.0)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    cfg = fully_connected_config(
        args.n, args.f, lambda_d=args.lambda_d, lambda_m=args.lambda_m,
        horizon=args.horizon, seed=args.seed,
    )
    report_py, t_py = time_kernel(cfg, "python")
    events = report_py.num_events
    print(f"workload: n={args.n} f={args.f} horizon={args.horizon} -> {events} events")
    print(f"python   kernel: {t_py:8.3f} s  ({events / t_py:12,.0f} events/s)")

    if not HAVE_COMPILED_KERNEL:
        print("compiled kernel: not built (pip install -e . to build it)")
        return 1

    report_cy, t_cy = time_kernel(cfg, "compiled")
    print(f"compiled kernel: {t_cy:8.3f} s  ({events / t_cy:12,.0f} events/s)")
    print(f"speedup: {t_py / t_cy:.1f}x")
    print(f"bit-identical reports: {reports_identical(report_py, report_cy)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
