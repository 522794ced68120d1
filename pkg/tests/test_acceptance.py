"""Acceptance suite: one test and one printed verdict line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
Every tolerance is pinned here; seeds are fixed so each verdict is
reproducible.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

import drone_gossip as dg
from drone_gossip.config import NetworkConfig
from drone_gossip.ctmc import MobilityKind, MobilitySpec, build_generator, stationary_distribution
from drone_gossip.metrics import total_variation, trend_ratio_check
from drone_gossip.phasetype import (
    build_subgenerator,
    fully_connected_moments,
    renewal_moments,
    solve_mean_vector,
)
from drone_gossip.rng import derive_stream_seed

from _oracles import TraceReplay

TREND_BAND = (0.6, 1.67)


def verdict(criterion: int, ok: bool, detail: str) -> None:
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {criterion} failed: {detail}"


def seed_averaged_age(cfg: NetworkConfig, reps: int, base_seed: int) -> float:
    ages = [
        float(dg.run(cfg.with_seed(derive_stream_seed(base_seed, r))).per_node_avg_age.mean())
        for r in range(reps)
    ]
    return float(np.mean(ages))


def test_criterion_1_drone_age_law():
    cfg = dg.fully_connected_config(
        2, 1, lambda_e=1.0, lambda_s=1.0, lambda_gossip=0.0, lambda_d=1.0,
        lambda_m=1.0, horizon=1e5, burn_in_fraction=0.2, seed=424242,
    )
    empirical = dg.measure_drone_age(dg.run(cfg))
    support = max(empirical) + 60
    analytic = {k: 0.5 ** (k + 1) for k in range(support)}
    tv = total_variation(empirical, analytic)
    verdict(1, tv < 0.01, f"drone-age pmf vs geometric: TV={tv:.5f} < 0.01")


def renewal_case(kind: MobilityKind, f: int, lam_m: float, seed: int):
    horizon = f * 1.05e5 / 0.8
    cfg = NetworkConfig(
        n=f, f=f, lambda_e=0.0, lambda_s=1.0, lambda_gossip=0.0, lambda_d=1.0,
        mobility=MobilitySpec(kind, f, lam_m), horizon=horizon, seed=seed,
    )
    mean, var, count = dg.measure_renewals(dg.run(cfg), 0)
    assert count >= 10**5
    return mean, var


def test_criterion_2_renewal_mean():
    cases = [(MobilityKind.FULLY_CONNECTED, f) for f in (2, 4, 10)]
    cases.append((MobilityKind.RING, 5))
    details = []
    ok = True
    for i, (kind, f) in enumerate(cases):
        analytic = float(f)  # 1 / (pi_1 * lambda_d) with uniform pi, lambda_d = 1
        means = {}
        for lam_m in (0.5, 10.0):
            mean, _ = renewal_case(kind, f, lam_m, 500 + i)
            rel = abs(mean - analytic) / analytic
            ok &= rel <= 0.02
            means[lam_m] = mean
        invariance = abs(means[0.5] - means[10.0]) / analytic
        ok &= invariance <= 0.02
        details.append(f"{kind.value} f={f}: rel<=2%, lam_m-invariance {invariance:.3%}")
    verdict(2, ok, "; ".join(details))


def test_criterion_3_renewal_variance():
    analytic = fully_connected_moments(2, 1.0, 1.0)
    ok = analytic.variance == 6.0
    # linear solve vs closed form, f = 1..100, random rates
    worst = 0.0
    rng = np.random.default_rng(33)
    for f in range(1, 101):
        lam_m = float(rng.uniform(0.1, 10.0))
        lam_d = float(rng.uniform(0.1, 10.0))
        closed = fully_connected_moments(f, lam_m, lam_d)
        gen = build_generator(MobilitySpec(MobilityKind.FULLY_CONNECTED, f, lam_m))
        solved = renewal_moments(build_subgenerator(gen, lam_d, 0))
        worst = max(worst, abs(solved.variance - closed.variance) / closed.variance)
    ok &= worst <= 1e-10
    # simulated variance within 5% at >= 1e5 samples
    _, sim_var = renewal_case(MobilityKind.FULLY_CONNECTED, 2, 1.0, 77)
    sim_rel = abs(sim_var - 6.0) / 6.0
    ok &= sim_rel <= 0.05
    verdict(3, ok, f"analytic 6, solve-vs-closed worst rel {worst:.2e} <= 1e-10, sim rel {sim_rel:.3%} <= 5%")


def test_criterion_4_solve_structure():
    rng = np.random.default_rng(44)
    worst_spread = 0.0
    worst_value = 0.0
    for f in range(2, 101):
        lam_m = float(rng.uniform(0.1, 10.0))
        lam_d = float(rng.uniform(0.1, 10.0))
        gen = build_generator(MobilitySpec(MobilityKind.FULLY_CONNECTED, f, lam_m))
        x = solve_mean_vector(build_subgenerator(gen, lam_d, 0))
        worst_spread = max(worst_spread, float(np.ptp(x[1:])) / abs(x[1]) if f > 2 else 0.0)
        expected = f / lam_d + (f - 1) / lam_m
        worst_value = max(worst_value, abs(x[1] - expected) / expected)
    ok = worst_spread <= 1e-10 and worst_value <= 1e-10
    verdict(4, ok, f"x_2..x_f spread {worst_spread:.2e}, x_2 closed-form dev {worst_value:.2e}, both <= 1e-10")


def test_criterion_5_dual_bottleneck_trends():
    # (a) bandwidth-constrained: age tracks f/lambda_d + ln(n/f)
    measured, predictor = [], []
    for n in (64, 256, 1024):
        f = int(round(math.sqrt(n)))
        cfg = dg.fully_connected_config(
            n, f, lambda_e=1.0, lambda_s=1.0, lambda_gossip=1.0,
            lambda_d=float(f), lambda_m=float(n), horizon=2000.0,
        )
        measured.append((float(n), seed_averaged_age(cfg, 3, 1000 + n)))
        predictor.append(f / float(f) + math.log(n / f))
    ok_a = trend_ratio_check(measured, predictor, TREND_BAND)

    # (b) mobility-constrained: age insensitive to lambda_d, inverse in lambda_m
    ages = {}
    for lam_m, lam_d in ((1.0, 10.0), (1.0, 100.0), (0.5, 10.0)):
        cfg = dg.fully_connected_config(
            64, 8, lambda_e=1.0, lambda_s=1.0, lambda_gossip=1.0,
            lambda_d=lam_d, lambda_m=lam_m, horizon=20_000.0,
        )
        ages[(lam_m, lam_d)] = seed_averaged_age(cfg, 3, 777)
    lam_d_change = abs(ages[(1.0, 100.0)] - ages[(1.0, 10.0)]) / ages[(1.0, 10.0)]
    halving_factor = ages[(0.5, 10.0)] / ages[(1.0, 10.0)]
    ok_b = lam_d_change < 0.20 and 1.5 <= halving_factor <= 2.5
    verdict(
        5,
        ok_a and ok_b,
        f"bandwidth trend in band {TREND_BAND}: {ok_a}; lambda_d change {lam_d_change:.1%} < 20%, "
        f"lambda_m halving factor {halving_factor:.2f} in [1.5, 2.5]",
    )


def test_criterion_6_degenerate_cases():
    # f = 1: age tracks ln n
    measured, predictor = [], []
    for n in (64, 256, 1024):
        cfg = dg.fully_connected_config(
            n, 1, lambda_e=1.0, lambda_s=1.0, lambda_gossip=1.0,
            lambda_d=1.0, lambda_m=1.0, horizon=2000.0,
        )
        measured.append((float(n), seed_averaged_age(cfg, 3, 2000 + n)))
        predictor.append(math.log(n))
    ok_single = trend_ratio_check(measured, predictor, TREND_BAND)

    # f = n: age tracks n / min(lambda_m, lambda_d)
    measured, predictor = [], []
    for n in (64, 256, 1024):
        cfg = dg.fully_connected_config(
            n, n, lambda_e=1.0, lambda_s=1.0, lambda_gossip=0.0,
            lambda_d=1.0, lambda_m=1.0, horizon=200.0 * n,
        )
        measured.append((float(n), seed_averaged_age(cfg, 3, 3000 + n)))
        predictor.append(float(n))
    ok_cellular = trend_ratio_check(measured, predictor, TREND_BAND)
    verdict(6, ok_single and ok_cellular, f"f=1 tracks ln n: {ok_single}; f=n tracks n/min(rates): {ok_cellular}")


def test_criterion_7_dissemination_lag():
    lags, logs = [], []
    for size in (8, 64, 512):
        cfg = dg.fully_connected_config(
            size, 1, lambda_e=1.0, lambda_s=1.0, lambda_gossip=2.0,
            lambda_d=0.05, lambda_m=1.0, horizon=6000.0,
        )
        per_rep = []
        for r in range(3):
            report = dg.run(cfg.with_seed(derive_stream_seed(size, r)))
            mean, count = dg.measure_dissemination_lag(report, 0)
            assert count > 100
            per_rep.append(mean)
        lags.append(float(np.mean(per_rep)))
        logs.append(math.log(size))
    ratios = [
        (lags[i + 1] / lags[i]) / (logs[i + 1] / logs[i]) for i in range(len(lags) - 1)
    ]
    ok = all(0.8 <= r <= 1.2 for r in ratios)
    verdict(7, ok, f"lag growth vs ln(n/f) growth ratios {['%.3f' % r for r in ratios]} in [0.8, 1.2]")


def test_criterion_8_age_accounting_oracle():
    ok = True
    for seed in range(20):
        cfg = dg.fully_connected_config(
            8, 2, lambda_e=1.0, lambda_s=1.0, lambda_gossip=1.0,
            lambda_d=2.0, lambda_m=3.0, horizon=100.0, seed=9000 + seed,
        )
        report = dg.run(cfg, collect_trace=True)
        oracle = TraceReplay(cfg.n, cfg.f, cfg.horizon, cfg.burn_in_fraction * cfg.horizon).run(
            report.trace
        )
        ok &= oracle["acc_source"] == report.final_state.source_age_integral
        ok &= bool(np.array_equal(oracle["acc_node"], report.final_state.node_age_integrals))
        ok &= bool(np.array_equal(oracle["per_node_avg_age"], report.per_node_avg_age))
        ok &= bool(np.array_equal(oracle["min_cell_age_avg"], report.min_cell_age_avg))
    verdict(8, ok, "lazy accounting == full-vector replay bit-for-bit, n=8, horizon=100, 20 seeds")


def test_criterion_9_determinism(tmp_path):
    config = {
        "n": 8, "f": 2, "lambda_e": 1.0, "lambda_s": 1.0, "lambda_gossip": 1.0,
        "lambda_d": 1.0, "mobility": {"kind": "fully_connected", "num_cells": 2, "move_rate": 2.0},
        "horizon": 500.0, "seed": 31337,
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        result = subprocess.run(
            [
                sys.executable, "-m", "drone_gossip", "simulate",
                "--config", str(config_path), "--output", str(out), "--quiet",
            ],
            capture_output=True, text=True,
        )
        assert result.returncode == 0, result.stderr
        outputs.append((out.with_suffix(".csv").read_bytes(), out.with_suffix(".json").read_bytes()))
    ok = outputs[0] == outputs[1]
    verdict(9, ok, "identical (config, seed) -> byte-identical CSV and JSON, twice in a row")
