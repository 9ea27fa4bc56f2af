"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (and directly when this file is run as a script).
"""

import math
import time

import numpy as np
import pytest

from floatloc import (
    Instance,
    adversarial_instance,
    brute_force_optimum,
    drift_response,
    exact_optimum,
    fit_disturbance,
    initial_allocation_raw,
    max_drift,
    optimize,
    partition,
    quantile_of,
    random_baseline,
    simulate_drift,
    verify_worst_case,
    wakeup_period,
    worst_case_value,
)
from floatloc.drift import DEMO_PARAMS, SLOW_PARAMS, DriftParams

from conftest import ACCEPTANCE_LINES, random_instance


def record(tag, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def drift_params(m, c, k, d=1.0):
    return DriftParams(mass=m, viscous=c, k_bias=1.0, k_torque=k + 1.0, current=1.0, disturbance=d)


REGIMES = {
    "underdamped": drift_params(1.0, 0.4, 4.0),
    "critical": drift_params(1.0, 2.0, 1.0),
    "overdamped": drift_params(2.0, 5.0, 1.5),
    "k_eff=0": drift_params(1.5, 0.8, 0.0),
    "k_eff<0": drift_params(1.0, 1.0, -0.5),
}


def test_c1_allocation_identities():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst_sum, worst_rel = 0.0, 0.0
    for _ in range(1000):
        inst = random_instance(rng, length=(100.0, 1e4), bumps=(0, 6), floating=(1, 10))
        bs = partition(inst)
        raw = initial_allocation_raw(bs, inst.num_floating)
        worst_sum = max(worst_sum, abs(raw.total - inst.num_floating))
        target = inst.total_length / (inst.num_floating + len(bs))
        for b, s in zip(bs, raw.implied_spacings(bs)):
            if b.area > 0:
                worst_rel = max(worst_rel, abs(s - target) / target)
    elapsed = time.perf_counter() - start
    ok = worst_sum <= 1e-9 and worst_rel <= 1e-9 and elapsed < 1.0
    record(
        "C1 allocation identities",
        ok,
        f"max |sum-NFLs|={worst_sum:.2e}, max rel spacing err={worst_rel:.2e}, {elapsed:.2f}s",
    )
    assert ok


def test_c2_oracle_equivalence():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        inst = random_instance(rng, bumps=(0, 5), floating=(1, 8))
        e = exact_optimum(inst).optimum_value
        b = brute_force_optimum(inst).optimum_value
        worst = max(worst, abs(e - b) / b)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 30.0
    record("C2 exact == brute force", ok, f"max rel diff={worst:.2e} over 500, {elapsed:.2f}s")
    assert ok


def test_c3_heuristic_soundness_and_quality():
    rng = np.random.default_rng(3)
    ratios, above, under_bound = [], 0, 0
    for _ in range(1000):
        inst = random_instance(rng, bumps=(0, 6), floating=(1, 10))
        h = optimize(inst).objective_controllable
        o = exact_optimum(inst).optimum_value
        if h > o * (1 + 1e-9):
            above += 1
        # reported only: nothing guarantees the heuristic clears the worst-case bound
        if h < worst_case_value(inst.total_length, inst.num_floating, inst.num_bumps) * (1 - 1e-9):
            under_bound += 1
        ratios.append(h / o)
    ratios = np.array(ratios)
    frac = float(np.mean(ratios >= 0.95))
    qs = np.quantile(ratios, [0.0, 0.01, 0.05, 0.5])
    ok = above == 0 and frac >= 0.95
    record(
        "C3 heuristic <= optimum, >=0.95x on >=95%",
        ok,
        f"above optimum: {above}/1000; within 5%: {frac:.1%}; optimal: {np.mean(ratios > 1 - 1e-9):.1%}; "
        f"ratio min/p1/p5/median = {qs[0]:.3f}/{qs[1]:.3f}/{qs[2]:.3f}/{qs[3]:.3f}; "
        f"below worst-case bound: {under_bound}/1000",
    )
    assert ok


def test_c4_cdf_quantile_against_random_placements():
    rng = np.random.default_rng(4)
    start = time.perf_counter()
    quantiles = []
    for i in range(100):
        k = int(rng.choice([3, 4]))
        inst = Instance(0.0, 1000.0, rng.uniform(0, 1000, k).tolist(), 6)
        h = optimize(inst).objective_controllable
        sample = random_baseline(inst, 100_000, seed=1000 + i)
        quantiles.append(quantile_of(h, sample))
    elapsed = time.perf_counter() - start
    quantiles = np.array(quantiles)
    hits = int(np.sum(quantiles >= 0.99))
    ok = hits >= 90 and elapsed < 300
    record(
        "C4 heuristic quantile >= 0.99 vs 1e5 random placements",
        ok,
        f"{hits}/100 instances, min quantile={quantiles.min():.5f}, {elapsed:.1f}s",
    )
    assert ok


def test_c5_worst_case_bound():
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    below = 0
    for _ in range(1000):
        inst = random_instance(rng, bumps=(0, 5), floating=(1, 8))
        bound = worst_case_value(inst.total_length, inst.num_floating, inst.num_bumps)
        if exact_optimum(inst).optimum_value < bound * (1 - 1e-9):
            below += 1
    adv_err = 0.0
    for n in range(1, 9):
        for k in range(1, 6):
            v = worst_case_value(1000.0, n, k)
            got = exact_optimum(adversarial_instance(1000.0, n, k)).optimum_value
            adv_err = max(adv_err, abs(got - v) / v)
    grid_gaps = []
    for n, k, grid in [(1, 1, 1000), (2, 1, 1000), (3, 1, 1000), (6, 1, 1000), (1, 2, 200), (2, 2, 200), (6, 2, 200)]:
        rep = verify_worst_case(1000.0, n, k, grid)
        grid_gaps.append(abs(rep.verified_min - rep.formula_value) / rep.grid_resolution)
    elapsed = time.perf_counter() - start
    ok = below == 0 and adv_err <= 1e-9 and max(grid_gaps) <= 1.0 and elapsed < 120
    record(
        "C5 worst-case bound",
        ok,
        f"(a) violations {below}/1000; (b) max rel err {adv_err:.1e}; "
        f"(c) max |grid-formula|/(Ls/grid)={max(grid_gaps):.3f}; {elapsed:.1f}s",
    )
    assert ok


def test_c6_closed_form_matches_rk4():
    worst = {}
    for name, p in REGIMES.items():
        trace = simulate_drift(p, 10.0, 1e-4)
        closed = drift_response(p, trace.times)
        err = np.abs(closed - trace.positions) / np.maximum(1.0, np.abs(closed))
        worst[name] = float(err.max())
    lin = 0.0
    t = np.linspace(0, 10, 1000)
    for p in REGIMES.values():
        base = drift_response(p, t)
        for alpha in (0.5, 2.0, 10.0):
            scaled = drift_response(p.with_disturbance(alpha * p.disturbance), t)
            nz = base != 0
            lin = max(lin, float(np.max(np.abs(scaled[nz] - alpha * base[nz]) / np.abs(alpha * base[nz]))))
    ok = max(worst.values()) <= 1e-6 and lin <= 1e-9
    detail = ", ".join(f"{k}={v:.1e}" for k, v in worst.items())
    record("C6 closed form vs RK4 (dt=1e-4)", ok, f"{detail}; linearity rel err={lin:.1e}")
    assert ok


def test_c7_wakeup_solver():
    t_star = wakeup_period(DEMO_PARAMS, 0.5)
    hit = abs(max_drift(DEMO_PARAMS, t_star) - 0.5)
    # independent check: first RK4 sample at or above the clearance
    trace = simulate_drift(DEMO_PARAMS, 3.0, 1e-4)
    t_rk4 = trace.times[np.argmax(trace.positions >= 0.5)]
    infinite = wakeup_period(DEMO_PARAMS, 1.5)
    ok = (
        hit <= 1e-6
        and abs(t_star - 1.6783) <= 1e-3
        and abs(t_star - t_rk4) <= 1e-4
        and infinite == math.inf
    )
    record(
        "C7 wake-up period",
        ok,
        f"T*={t_star:.6f} (RK4 crossing {t_rk4:.4f}), |max_drift(T*)-0.5|={hit:.1e}, clearance 1.5 -> {infinite}",
    )
    assert ok


def test_c8_calibration_loop():
    d = fit_disturbance(SLOW_PARAMS, 60.0, 2000.0)
    params = SLOW_PARAMS.with_disturbance(d)
    t_star = wakeup_period(params, 2000.0)
    ok = abs(t_star - 60.0) <= 1e-3
    record("C8 fit d to 2000 tracks @60s -> wake-up period", ok, f"d={d:.4f}, T*={t_star:.6f}s")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
