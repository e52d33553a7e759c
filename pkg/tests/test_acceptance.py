"""Exit criteria, one test each; a PASS/FAIL line per criterion is printed at the end."""

import math
import time

import numpy as np
import pytest

from cgs import _backend, presets
from cgs.analysis import classify_regime, sweep, threshold_income_elasticity
from cgs.demand import DemandParams, ai_service_demand
from cgs.efficiency import EfficiencyTrajectory, Rapid, Slow, gamma_at
from cgs.engine import Equilibrium, ExogenousPrice, calibrate_baseline, run_scenario
from cgs.output import RESULT_HEADER, read_result_csv, write_results
from cgs.units import ej_to_twh

from conftest import simple_config

REPORT = []
ANCHORS = ((2030, 1.5), (2050, 3.0))


def report(number, title, ok, detail):
    REPORT.append(f"[AC{number}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


def test_ac1_unit_anchors():
    a, b = ej_to_twh(1.5), ej_to_twh(3.0)
    ok = abs(a - 416.67) <= 0.01 and abs(b - 833.33) <= 0.01
    report(1, "unit anchors", ok, f"1.5 EJ -> {a:.4f} TWh, 3.0 EJ -> {b:.4f} TWh")


def test_ac2_baseline_reproduction():
    t0 = time.perf_counter()
    cal = calibrate_baseline(presets.template(), *ANCHORS)
    res = run_scenario(cal.config)
    elapsed = time.perf_counter() - t0
    e30, e50 = res.at(2030).electricity, res.at(2050).electricity
    share = res.at(2050).ai_share
    ok = (isinstance(cal.config.mode, Equilibrium)
          and abs(e30 / 1.5 - 1) <= 0.005 and abs(e50 / 3.0 - 1) <= 0.005
          and abs(share - 0.10) <= 0.01 and elapsed < 1.0)
    report(2, "baseline reproduction", ok,
           f"E2030={e30:.6f} E2050={e50:.6f} share2050={share:.4f} in {elapsed:.3f}s")


def test_ac3_price_elasticity_band(baseline):
    t0 = time.perf_counter()
    members = sweep(baseline, "price_elasticity", [-0.2, -0.7, -1.2])
    elapsed = time.perf_counter() - t0
    worst = max(m.max_abs_deviation for m in members)
    report(3, "price-elasticity band", worst <= 0.05 and elapsed < 1.0,
           f"max |dE/E| = {worst:.4%} in {elapsed:.3f}s")


def test_ac4_income_elasticity_amplification(baseline):
    t0 = time.perf_counter()
    base = run_scenario(baseline)
    high = run_scenario(baseline.with_demand(income_elasticity=3.5))
    elapsed = time.perf_counter() - t0
    factor = high.at(2050).electricity / base.at(2050).electricity
    closed = baseline.drivers.gdp_pc_index[2050] ** (3.5 - 1.6)
    ok = 2.0 <= factor <= 3.0 and factor <= closed and elapsed < 1.0
    report(4, "income-elasticity amplification", ok,
           f"E2050 factor {factor:.4f} (exogenous closed form {closed:.4f}) in {elapsed:.3f}s")


def test_ac5_regime_thresholds():
    t0 = time.perf_counter()
    tpl = presets.template()
    cal = calibrate_baseline(tpl.replace(mode=ExogenousPrice.constant(tpl.grid.years, 5.0)),
                             *ANCHORS)
    g = cal.gdp_growth_rate
    log_income = 25 * math.log1p(g)
    found, oracle = {}, {}
    for name, traj in (("slow", EfficiencyTrajectory(Slow(1.8), 3.83e-5)),
                       ("rapid", EfficiencyTrajectory(Rapid(2.34, 2035), 3.83e-5))):
        template = simple_config(trajectory=traj, growth=g, income_elasticity=1.6,
                                 price_elasticity=0.0, name=name)
        gamma_ratio = gamma_at(traj, 2025, 2025) / gamma_at(traj, 2025, 2050)
        oracle[name] = math.log(gamma_ratio) / log_income
        found[name] = threshold_income_elasticity(template, (0.5, 8.0), 1e-3)
    elapsed = time.perf_counter() - t0
    ok = (all(abs(found[k].threshold_income_elasticity - oracle[k]) <= 1e-3 for k in found)
          and abs(oracle["slow"] - 2.713) <= 1e-3
          and found["rapid"].threshold_income_elasticity > found["slow"].threshold_income_elasticity
          and elapsed < 2.0)
    report(5, "regime thresholds", ok,
           "slow {:.4f} (oracle {:.4f}), rapid {:.4f} (oracle {:.4f}) in {:.3f}s".format(
               found["slow"].threshold_income_elasticity, oracle["slow"],
               found["rapid"].threshold_income_elasticity, oracle["rapid"], elapsed))


def test_ac6_property_suites():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2026)
    failures = []

    worst = 0.0
    for _ in range(1000):
        args = (rng.uniform(1, 40), rng.uniform(1, 20), rng.uniform(0.1, 5), rng.uniform(0.5, 40),
                -rng.uniform(0, 1.5), rng.uniform(1e3, 1e5), rng.uniform(1e-6, 2e-4),
                rng.uniform(0, 5e-3), rng.uniform(5e-4, 5e-3), -rng.uniform(0, 2))
        status, _, sup, oth, ai, *_ = _backend.clear_price(*map(float, args), 0.0, 1e-9, 200)
        if status != _backend.OK:
            failures.append("clearing status")
            break
        worst = max(worst, abs(sup - oth - ai) / sup)
    if worst > 1e-9:
        failures.append(f"clearing residual {worst:.2e}")

    for _ in range(500):
        ei, ep = rng.uniform(0, 4), -rng.uniform(0, 2)
        p = DemandParams(ei, ep, 1.0)
        steps = rng.uniform(0.5, 2.0, size=(int(rng.integers(1, 15)), 2))
        s, y, q = 1.0, 1.0, 1.0
        for gy, gp in steps:
            s *= gy**ei * gp**ep
            y *= gy
            q *= gp
        if abs(s / ai_service_demand(p, y, q) - 1) > 1e-12:
            failures.append("path independence")
            break

    for _ in range(500):
        t = int(rng.integers(2025, 2090))
        period = int(rng.integers(1, 6))
        rapid = EfficiencyTrajectory(Rapid(float(period), 2100), 3.83e-5)
        if abs(gamma_at(rapid, 2025, t + period) * 2 / gamma_at(rapid, 2025, t) - 1) > 1e-12:
            failures.append("rapid halving")
            break
        f = rng.uniform(1.01, 5.0)
        slow = EfficiencyTrajectory(Slow(f), 3.83e-5)
        if abs(gamma_at(slow, 2025, t + 10) / gamma_at(slow, 2025, t) * f - 1) > 1e-12:
            failures.append("slow decade law")
            break

    for name in ("baseline", "rapid", "slow", "ie_3.5", "pe_1.2"):
        cfg = presets.expand_preset(name)
        eq = run_scenario(cfg)
        exo = run_scenario(cfg.replace(mode=ExogenousPrice(eq.series("elec_price"))))
        for a, b in zip(eq.records, exo.records):
            if abs(b.electricity / a.electricity - 1) > 1e-9:
                failures.append(f"mode consistency {name}")

    res = run_scenario(presets.expand_preset("rapid"))
    ref = classify_regime(res)
    for k in rng.uniform(1e-3, 1e3, 50):
        scaled = type(res)(res.config_name, tuple(
            type(r)(**{**r.__dict__, "electricity": k * r.electricity}) for r in res.records))
        if classify_regime(scaled) != ref:
            failures.append("classification scale invariance")
            break

    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 10.0
    report(6, "property suites", ok,
           f"max clearing residual {worst:.1e}, failures={failures or 'none'} in {elapsed:.2f}s")


def test_ac7_end_to_end(tmp_path):
    presets.calibrated_demand_side.cache_clear()
    t0 = time.perf_counter()
    names = ["baseline", "rapid", "slow", "pe_0.2", "pe_1.2", "ie_2.5", "ie_3.5"]
    results = [run_scenario(presets.expand_preset(n)) for n in names]
    thresholds = [threshold_income_elasticity(presets.expand_preset(n), (0.5, 10.0), 1e-3)
                  for n in ("rapid", "slow")]
    write_results(results, tmp_path)
    elapsed = time.perf_counter() - t0
    problems = []
    for res in results:
        path = tmp_path / f"{res.config_name}.csv"
        if path.read_text().splitlines()[0] != ",".join(RESULT_HEADER):
            problems.append(f"header {path.name}")
        _, records = read_result_csv(path)
        for a, b in zip(res.records, records):
            for field in ("gamma", "service", "electricity", "electricity_twh", "elec_price",
                          "service_price", "total_elec", "ai_share", "emissions"):
                x, y = getattr(a, field), getattr(b, field)
                if abs(y - x) > 1e-9 * abs(x):
                    problems.append(f"{res.config_name}.{field}")
    ok = not problems and elapsed < 5.0 and len(thresholds) == 2
    report(7, "end-to-end", ok,
           f"{len(results)} runs + {len(thresholds)} thresholds in {elapsed:.3f}s "
           f"({_backend.BACKEND} kernels), round-trip problems={problems or 'none'}")
