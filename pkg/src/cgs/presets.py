"""Built-in scenarios along the efficiency and elasticity axes.

Every preset shares the demand side of the calibrated baseline (base service
level and GDP growth fitted to 1.5 EJ in 2030 and 3.0 EJ in 2050 under market
clearing) and varies one axis.
"""

from __future__ import annotations

import functools

from .demand import CostParams, DemandParams, MacroDrivers, constant_growth_index
from .efficiency import (
    BASELINE_GAMMA0,
    TRAJECTORY_GAMMA0,
    EfficiencyTrajectory,
    Fixed,
    Rapid,
    Slow,
)
from .emissions import EmissionsParams
from .engine import Equilibrium, ScenarioConfig, calibrate_baseline
from .market import SupplyParams
from .units import TimeGrid

DEFAULT_GRID = TimeGrid(2025, 2050, 5)
BASELINE_ANCHORS = ((2030, 1.5), (2050, 3.0))

# non-AI demand: 14.5 EJ in 2025 rising 0.5 EJ/yr (27 EJ in 2050), which puts
# a 3 EJ AI load at ~10% of the 2050 total
OTHER_DEMAND_2025 = 14.5
OTHER_DEMAND_SLOPE = 0.5

_GUESS_BASE_SERVICE = 1.6e4  # YF/yr
_GUESS_GROWTH = 0.0219


def default_other_demand(years) -> dict[int, float]:
    return {t: OTHER_DEMAND_2025 + OTHER_DEMAND_SLOPE * (t - 2025) for t in years}


def template(grid: TimeGrid = DEFAULT_GRID, *, base_service=_GUESS_BASE_SERVICE,
             growth=_GUESS_GROWTH, name="baseline") -> ScenarioConfig:
    """Uncalibrated baseline: fixed intensity, default drivers and supply."""
    years = grid.years
    return ScenarioConfig(
        name=name,
        grid=grid,
        trajectory=EfficiencyTrajectory(Fixed(), BASELINE_GAMMA0),
        demand=DemandParams(income_elasticity=1.6, price_elasticity=-0.7,
                            base_service=base_service),
        costs=CostParams(),
        drivers=MacroDrivers(
            gdp_pc_index=constant_growth_index(years, growth),
            other_demand_base=default_other_demand(years),
        ),
        supply=SupplyParams(),
        emissions=EmissionsParams.flat(years),
        mode=Equilibrium(),
    )


@functools.lru_cache(maxsize=None)
def calibrated_demand_side() -> tuple[float, float]:
    """(base_service, gdp_growth_rate) for the default baseline."""
    cal = calibrate_baseline(template(), *BASELINE_ANCHORS)
    return cal.base_service, cal.gdp_growth_rate


def _baseline(grid):
    s0, g = calibrated_demand_side()
    return template(grid, base_service=s0, growth=g)


def _rapid(grid):
    cfg = _baseline(grid)
    return cfg.replace(name="rapid", trajectory=EfficiencyTrajectory(Rapid(), TRAJECTORY_GAMMA0))


def _slow(grid):
    cfg = _baseline(grid)
    return cfg.replace(name="slow", trajectory=EfficiencyTrajectory(Slow(), TRAJECTORY_GAMMA0))


def _demand_variant(name, **changes):
    def build(grid):
        return _baseline(grid).with_demand(**changes).replace(name=name)
    return build


PRESETS = {
    "baseline": ("fixed intensity 7.7e-5 EJ/YF, income elasticity 1.6, price elasticity -0.7",
                 _baseline),
    "rapid": ("performance doubling every 2.34 yr until 2035, gamma0 3.83e-5", _rapid),
    "slow": ("performance x1.8 per decade, gamma0 3.83e-5", _slow),
    "pe_0.2": ("baseline with price elasticity -0.2", _demand_variant("pe_0.2", price_elasticity=-0.2)),
    "pe_1.2": ("baseline with price elasticity -1.2", _demand_variant("pe_1.2", price_elasticity=-1.2)),
    "ie_2.5": ("baseline with income elasticity 2.5", _demand_variant("ie_2.5", income_elasticity=2.5)),
    "ie_3.5": ("baseline with income elasticity 3.5", _demand_variant("ie_3.5", income_elasticity=3.5)),
}


def expand_preset(name: str, grid: TimeGrid = DEFAULT_GRID) -> ScenarioConfig:
    from .errors import ConfigError

    try:
        _, build = PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; choose from {', '.join(PRESETS)}"
        ) from None
    return build(grid).validate()
