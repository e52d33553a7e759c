import pytest

from cgs import presets
from cgs.demand import CostParams, DemandParams, MacroDrivers, constant_growth_index
from cgs.efficiency import EfficiencyTrajectory, Fixed
from cgs.emissions import EmissionsParams
from cgs.engine import ExogenousPrice, ScenarioConfig
from cgs.market import SupplyParams
from cgs.units import TimeGrid

# closed forms evaluated at 40 digits with mpmath
EXOGENOUS_CALIBRATED_GROWTH = 0.02189714865411667823  # 2**(1/32) - 1
SLOW_THRESHOLD_ORACLE = 2.7135901009758400481
RAPID_THRESHOLD_ORACLE = 5.4700854700854700855


def simple_config(*, growth=0.0, income_elasticity=0.0, price_elasticity=0.0,
                  trajectory=None, base_service=1.0e4, price=5.0, grid=None, name="simple"):
    grid = grid or TimeGrid(2025, 2050, 5)
    years = grid.years
    return ScenarioConfig(
        name=name,
        grid=grid,
        trajectory=trajectory or EfficiencyTrajectory(Fixed(), 7.7e-5),
        demand=DemandParams(income_elasticity, price_elasticity, base_service),
        costs=CostParams(),
        drivers=MacroDrivers(constant_growth_index(years, growth),
                             presets.default_other_demand(years)),
        supply=SupplyParams(),
        emissions=EmissionsParams.flat(years),
        mode=ExogenousPrice.constant(years, price),
    )


@pytest.fixture(scope="session")
def baseline():
    return presets.expand_preset("baseline")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(REPORT):
            terminalreporter.write_line(line)
