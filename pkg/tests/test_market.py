import dataclasses
import numpy as np
import pytest
from scipy.optimize import brentq

from cgs import _backend
from cgs.demand import CostParams, DemandParams, MacroDrivers
from cgs.efficiency import EfficiencyTrajectory, Fixed
from cgs.errors import ConfigError, SolverError
from cgs.market import SupplyParams, clear_market, supply


def bisect_oracle(f, lo, hi, n=200):
    flo = f(lo)
    for _ in range(n):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def market(q0=10.0, d0=8.0, eps_o=-0.3, sigma=1.0, ai=2.0, eps_p=0.0, eps_i=1.6,
           income=1.0, gamma=7.7e-5, cost=0.0015, p0=5.0, sp0=None):
    traj = EfficiencyTrajectory(Fixed(), gamma)
    if sp0 is None:
        sp0 = cost + gamma * p0
    demand = DemandParams(eps_i, eps_p, ai / gamma, sp0)
    drivers = MacroDrivers({2025: 1.0, 2030: income}, {2025: d0, 2030: d0}, eps_o)
    sup = SupplyParams({2025: q0, 2030: q0}, p0, sigma)
    return traj, demand, drivers, CostParams(cost), sup


def solve(year=2030, tol=None, **kw):
    traj, demand, drivers, costs, sup = market(**kw)
    return clear_market(year, traj, demand, drivers, costs, sup, 2025, tol=tol)


def test_supply_curve():
    sup = SupplyParams({2025: 10.0}, 5.0, 1.0)
    assert supply(sup, 2025, 5.0) == 10.0
    assert supply(sup, 2025, 7.5) == pytest.approx(15.0, rel=1e-15)
    assert supply(SupplyParams({2025: 10.0}, 5.0, 0.5), 2025, 20.0) == pytest.approx(20.0, rel=1e-15)
    with pytest.raises(ConfigError):
        supply(sup, 2030, 5.0)


def test_degenerate_pinned_ai_load():
    # 10 x = 8 x**-0.3 + 2, root x = 1
    x = bisect_oracle(lambda x: 10 * x - 8 * x**-0.3 - 2, 1e-3, 1e3)
    assert x == pytest.approx(1.0, abs=1e-12)
    sol = solve(tol=1e-12)
    assert sol.elec_price == pytest.approx(5.0 * x, rel=1e-11)
    assert abs(sol.residual) <= 1e-12
    assert sol.ai_electricity == pytest.approx(2.0, rel=1e-15)


def test_balanced_base_point():
    sol = solve(year=2025, q0=10.0, d0=8.0, ai=2.0, eps_p=-0.7)
    assert sol.elec_price == pytest.approx(5.0, rel=1e-9)


def test_more_other_demand_raises_price():
    lo = solve(eps_p=-0.7, d0=8.0)
    hi = solve(eps_p=-0.7, d0=16.0)
    assert hi.elec_price > lo.elec_price


def test_clearing_identity():
    sol = solve(ai=3.0, eps_p=-0.7, income=1.4)
    assert sol.supplied == pytest.approx(sol.ai_electricity + sol.other_electricity + sol.residual,
                                         rel=1e-15)
    assert abs(sol.residual) <= 1e-9 * sol.supplied
    assert sol.elec_price > 0


def test_not_bracketed():
    # inelastic demand and supply that cannot reach it even at 1e8 x base price
    with pytest.raises(SolverError) as info:
        solve(q0=1e-30, sigma=0.01, eps_o=0.0, ai=2.0)
    assert info.value.bracket is not None
    assert info.value.signs == (-1.0, -1.0)


def test_max_iter():
    with pytest.raises(SolverError):
        traj, demand, drivers, costs, sup = market(ai=3.0, eps_p=-0.7)
        clear_market(2030, traj, demand, drivers, costs, sup, 2025, max_iter=3)


def test_unresolved_inputs():
    traj, demand, drivers, costs, sup = market()
    with pytest.raises(ConfigError):
        clear_market(2030, traj, dataclasses.replace(demand, base_service_price=None),
                     drivers, costs, sup, 2025)
    with pytest.raises(ConfigError):
        clear_market(2030, traj, demand, drivers, costs, SupplyParams(), 2025)
    with pytest.raises(ConfigError):
        clear_market(2030, traj, demand, drivers, costs, sup, 2025, tol=0.0)


def test_exogenous_price_limit():
    sol = solve(sigma=1e6, ai=3.0, eps_p=-0.7, income=1.3, q0=12.0, d0=8.0)
    assert sol.elec_price == pytest.approx(5.0, rel=1e-6)
    # base-price closed form: base AI load * income**eps_i * (price ratio 1)**eps_p
    assert sol.ai_electricity == pytest.approx(3.0 * 1.3**1.6, rel=1e-6)


def test_inelastic_ai_invariant_to_supply_elasticity():
    values = {solve(sigma=s, ai=2.5, eps_p=0.0, income=1.7).ai_electricity
              for s in (0.05, 0.3, 1.0, 4.0, 50.0)}
    assert len(values) == 1


def random_markets(n, seed):
    rng = np.random.default_rng(seed)
    return dict(
        q0=rng.uniform(1.0, 40.0, n),
        p0=rng.uniform(1.0, 20.0, n),
        sigma=rng.uniform(0.1, 5.0, n),
        d0=rng.uniform(0.5, 40.0, n),
        eps_o=-rng.uniform(0.0, 1.5, n),
        s_eff=rng.uniform(1e3, 1e5, n),
        gamma=rng.uniform(1e-6, 2e-4, n),
        cost=rng.uniform(0.0, 0.005, n),
        sp0=rng.uniform(5e-4, 5e-3, n),
        eps_p=-rng.uniform(0.0, 2.0, n),
    )


def excess_oracle(m, i):
    def g(p):
        x = p / m["p0"][i]
        ai = m["s_eff"][i] * ((m["cost"][i] + m["gamma"][i] * p) / m["sp0"][i]) ** m["eps_p"][i]
        return m["q0"][i] * x ** m["sigma"][i] - m["d0"][i] * x ** m["eps_o"][i] - ai * m["gamma"][i]
    return g


def run_random(m, i, clear):
    return clear(*(float(m[k][i]) for k in ("q0", "p0", "sigma", "d0", "eps_o", "s_eff",
                                            "gamma", "cost", "sp0", "eps_p")),
                 0.0, 1e-9, 200)


def test_random_markets_against_brentq():
    m = random_markets(1000, 7)
    for i in range(1000):
        status, price, sup, oth, ai, lo, hi, glo, ghi, _ = run_random(m, i, _backend.clear_price)
        assert status == _backend.OK
        assert abs(sup - oth - ai) <= 1e-9 * sup
        assert glo <= 0 <= ghi
        g = excess_oracle(m, i)
        ref = brentq(g, lo, hi, xtol=1e-15, rtol=1e-14, maxiter=500)
        # residual 1e-9 of supply over a slope of order supply/price bounds the price error
        assert price == pytest.approx(ref, rel=1e-8)


def test_backends_agree():
    pytest.importorskip("cgs._ckernels")
    m = random_markets(300, 11)
    py_clear, py_many = _backend.kernels("python")
    c_clear, c_many = _backend.kernels("cython")
    for i in range(300):
        a = run_random(m, i, py_clear)
        b = run_random(m, i, c_clear)
        assert a[0] == b[0]
        assert a[1] == pytest.approx(b[1], rel=1e-12)
    cols = [np.ascontiguousarray(m[k]) for k in ("q0", "p0", "sigma", "d0", "eps_o", "s_eff",
                                                 "gamma", "cost", "sp0", "eps_p")]
    pa, sa = py_many(*cols, 0.0, 1e-9, 200)
    pb, sb = c_many(*cols, 0.0, 1e-9, 200)
    assert sa == sb
    assert np.allclose(pa, pb, rtol=1e-12, atol=0)


def test_strictly_increasing_excess_supply():
    m = random_markets(50, 3)
    for i in range(50):
        g = excess_oracle(m, i)
        grid = np.geomspace(m["p0"][i] * 1e-2, m["p0"][i] * 1e2, 200)
        vals = np.array([g(p) for p in grid])
        assert np.all(np.diff(vals) > 0)
