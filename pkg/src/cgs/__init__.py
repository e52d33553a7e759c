"""Partial-equilibrium scenarios for AI computing electricity demand.

Service demand responds to income and price through constant elasticities,
electricity is service times a compute energy intensity trajectory, and a
single electricity market clears each period.
"""

from ._backend import BACKEND
from .analysis import (
    RegimeClassification,
    SweepMember,
    ThresholdResult,
    classify_regime,
    emissions_series,
    sweep,
    threshold_income_elasticity,
)
from .config import RunManifest, load_config
from .demand import CostParams, DemandParams, MacroDrivers, ai_service_demand, other_demand, service_price
from .efficiency import Custom, EfficiencyTrajectory, Fixed, Rapid, Slow, gamma_at
from .emissions import EmissionsParams
from .engine import (
    Calibration,
    Equilibrium,
    ExogenousPrice,
    ScenarioConfig,
    ScenarioResult,
    calibrate_baseline,
    run_scenario,
)
from .errors import (
    CalibrationError,
    CGSError,
    ConfigError,
    DomainError,
    SolverError,
    SweepError,
    ThresholdError,
)
from .market import MarketSolution, SupplyParams, clear_market, supply
from .output import write_results
from .presets import PRESETS, expand_preset
from .units import PeriodRecord, TimeGrid, ej_to_twh, periods, twh_to_ej

__version__ = "0.1.0"
