"""Scenario runs over the time grid and two-anchor baseline calibration."""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .demand import (
    CostParams,
    DemandParams,
    MacroDrivers,
    ai_service_demand,
    constant_growth_index,
    other_demand,
    service_price,
)
from .efficiency import EfficiencyTrajectory, Fixed, gamma_at
from .emissions import EmissionsParams
from .errors import CalibrationError, CGSError, ConfigError, SolverError
from .market import SupplyParams, balanced_supply, clear_market
from .units import PeriodRecord, TimeGrid, ej_to_twh

log = logging.getLogger(__name__)

# clearing to 1e-9 of supply leaves ~1e-10 relative noise on E, so the
# calibration loops cannot meaningfully resolve anything tighter
_LEVEL_RTOL = 1e-10


@dataclass(frozen=True)
class Equilibrium:
    kind = "equilibrium"


@dataclass(frozen=True)
class ExogenousPrice:
    """Electricity price path fixed by table (1975$/GJ), no market feedback."""

    prices: Mapping[int, float]
    kind = "exogenous_price"

    def __post_init__(self):
        for year, p in self.prices.items():
            if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 0):
                raise ConfigError(f"mode.prices[{year}] must be positive, got {p!r}")

    @classmethod
    def constant(cls, years, price):
        return cls({t: float(price) for t in years})


Mode = Union[Equilibrium, ExogenousPrice]


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    grid: TimeGrid
    trajectory: EfficiencyTrajectory
    demand: DemandParams
    costs: CostParams
    drivers: MacroDrivers
    supply: SupplyParams
    emissions: EmissionsParams
    mode: Mode = field(default_factory=Equilibrium)

    def validate(self) -> "ScenarioConfig":
        if not isinstance(self.name, str) or not self.name:
            raise ConfigError("scenario name must be a non-empty string")
        years = self.grid.years
        self.trajectory.check_grid(years)
        self.drivers.check_grid(years)
        self.supply.check_grid(years)
        self.emissions.check_grid(years)
        if isinstance(self.mode, ExogenousPrice):
            for year in years:
                if year not in self.mode.prices:
                    raise ConfigError(f"mode.prices is missing grid year {year}")
        return self

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    def with_demand(self, **changes) -> "ScenarioConfig":
        return self.replace(demand=dataclasses.replace(self.demand, **changes))


@dataclass(frozen=True)
class ScenarioResult:
    config_name: str
    records: tuple

    @property
    def years(self) -> list[int]:
        return [r.year for r in self.records]

    def series(self, attr: str) -> dict[int, float]:
        return {r.year: getattr(r, attr) for r in self.records}

    @property
    def electricity(self) -> dict[int, float]:
        return self.series("electricity")

    def at(self, year: int) -> PeriodRecord:
        for r in self.records:
            if r.year == year:
                return r
        raise KeyError(year)


def resolve(config: ScenarioConfig) -> tuple[DemandParams, SupplyParams]:
    """Fill derived defaults: base service price and balanced supply table."""
    base = config.grid.base_year
    gamma0 = gamma_at(config.trajectory, base, base)
    demand = config.demand
    if demand.base_service_price is None:
        sp0 = service_price(gamma0, config.supply.base_price, config.costs)
        demand = dataclasses.replace(demand, base_service_price=sp0)
    supply = config.supply
    if supply.base_quantity is None:
        supply = balanced_supply(
            config.drivers, config.grid.years, demand.base_service * gamma0, supply
        )
    return demand, supply


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    config.validate()
    base = config.grid.base_year
    demand, supply_params = resolve(config)
    p_ref = supply_params.base_price
    records = []
    for year in config.grid.years:
        gamma = gamma_at(config.trajectory, base, year)
        try:
            if isinstance(config.mode, ExogenousPrice):
                price = float(config.mode.prices[year])
                other = other_demand(config.drivers, year, price / p_ref)
            else:
                sol = clear_market(
                    year, config.trajectory, demand, config.drivers, config.costs,
                    supply_params, base,
                )
                price = sol.elec_price
                other = sol.other_electricity
        except SolverError as exc:
            if exc.year is None:
                exc.year = year
            raise
        except CGSError as exc:
            raise type(exc)(f"{config.name} {year}: {exc}") from exc
        sp = service_price(gamma, price, config.costs)
        s = ai_service_demand(
            demand, config.drivers.gdp_pc_index[year], sp / demand.base_service_price
        )
        e = s * gamma
        total = e + other
        records.append(
            PeriodRecord(
                year=year,
                gamma=gamma,
                service=s,
                electricity=e,
                electricity_twh=ej_to_twh(e),
                elec_price=price,
                service_price=sp,
                total_elec=total,
                ai_share=e / total,
                emissions=e * config.emissions.carbon_intensity[year],
            )
        )
    log.debug("ran %s over %d periods", config.name, len(records))
    return ScenarioResult(config.name, tuple(records))


@dataclass(frozen=True)
class Calibration:
    base_service: float
    gdp_growth_rate: float
    config: ScenarioConfig
    achieved: dict

    def residuals(self, anchors) -> dict[int, float]:
        return {y: self.achieved[y] / e - 1.0 for y, e in anchors}


def with_growth(config: ScenarioConfig, base_service: float, growth: float) -> ScenarioConfig:
    drivers = dataclasses.replace(
        config.drivers, gdp_pc_index=constant_growth_index(config.grid.years, growth)
    )
    return config.replace(
        drivers=drivers, demand=dataclasses.replace(config.demand, base_service=base_service)
    )


def calibrate_baseline(
    template: ScenarioConfig,
    anchor1: tuple[int, float],
    anchor2: tuple[int, float],
    *,
    growth_bracket: tuple[float, float] = (0.0, 0.08),
    rtol: float = 0.005,
    max_rounds: int = 50,
) -> Calibration:
    """Fit base-year service and per-capita GDP growth to two electricity anchors.

    The outer loop bisects the growth rate on the anchor ratio E(t2)/E(t1),
    which rises with growth when income elasticity is positive. For each probe
    the base service level is rescaled until E(t1) hits its target; that is a
    single step under exogenous prices and a short fixed-point iteration under
    market clearing.
    """
    if not isinstance(template.trajectory.variant, Fixed):
        raise ConfigError("calibration requires a fixed-intensity trajectory")
    (y1, t1), (y2, t2) = anchor1, anchor2
    if y2 <= y1:
        raise ConfigError(f"second anchor year {y2} must follow the first {y1}")
    for y, t in ((y1, t1), (y2, t2)):
        if y not in template.grid:
            raise ConfigError(f"anchor year {y} is not on the grid")
        if not t > 0:
            raise ConfigError(f"anchor target for {y} must be positive, got {t!r}")
    target_ratio = t2 / t1
    state = {"s0": template.demand.base_service}

    def fit_level(g):
        s0 = state["s0"]
        for _ in range(max_rounds):
            res = run_scenario(with_growth(template, s0, g))
            e1 = res.at(y1).electricity
            if abs(e1 / t1 - 1.0) <= _LEVEL_RTOL:
                break
            s0 *= t1 / e1
        else:
            res = run_scenario(with_growth(template, s0, g))
        state["s0"] = s0
        return s0, res

    def ratio(g):
        s0, res = fit_level(g)
        return res.at(y2).electricity / res.at(y1).electricity, s0, res

    lo, hi = growth_bracket
    r_lo, s0, res = ratio(lo)
    if target_ratio <= r_lo:
        g = lo
    else:
        r_hi, s0, res = ratio(hi)
        if target_ratio > r_hi:
            raise CalibrationError(
                f"anchor ratio {target_ratio:.6g} exceeds the ratio {r_hi:.6g} reachable "
                f"at growth {hi}",
                residuals={y2: r_hi / target_ratio - 1.0},
            )
        for _ in range(200):
            g = 0.5 * (lo + hi)
            r, s0, res = ratio(g)
            if abs(r / target_ratio - 1.0) <= _LEVEL_RTOL or hi - lo <= 1e-15:
                break
            if r < target_ratio:
                lo = g
            else:
                hi = g
    s0, res = fit_level(g)
    achieved = {y1: res.at(y1).electricity, y2: res.at(y2).electricity}
    residuals = {y1: achieved[y1] / t1 - 1.0, y2: achieved[y2] / t2 - 1.0}
    if any(abs(r) > rtol for r in residuals.values()):
        raise CalibrationError(
            "calibration missed anchors: "
            + ", ".join(f"{y}: {r:+.3%}" for y, r in residuals.items()),
            residuals=residuals,
        )
    log.info("calibrated %s: base_service=%.6g YF, growth=%.6g", template.name, s0, g)
    return Calibration(s0, g, with_growth(template, s0, g), achieved)
