"""Constant-elasticity demand for AI compute service and for other electricity use."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import ConfigError, DomainError

DEFAULT_NON_ENERGY_COST = 0.0015  # 1975$/PF
DEFAULT_OTHER_PRICE_ELASTICITY = -0.3


def _positive(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{name} must be a finite number, got {value!r}")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class DemandParams:
    """AI service demand parameters.

    ``base_service`` is the base-year service level in YF/yr. When
    ``base_service_price`` is None it is derived at run time as the service
    price at the base-year intensity and base electricity price, so the base
    year sits at a price ratio of one.
    """

    income_elasticity: float = 1.6
    price_elasticity: float = -0.7
    base_service: float = 1.0
    base_service_price: Optional[float] = None

    def __post_init__(self):
        if not self.income_elasticity >= 0:
            raise ConfigError(
                f"demand.income_elasticity must be >= 0, got {self.income_elasticity!r}"
            )
        if not self.price_elasticity <= 0:
            raise ConfigError(
                f"demand.price_elasticity must be <= 0, got {self.price_elasticity!r}"
            )
        _positive("demand.base_service", self.base_service)
        if self.base_service_price is not None:
            _positive("demand.base_service_price", self.base_service_price)


@dataclass(frozen=True)
class CostParams:
    non_energy_cost: float = DEFAULT_NON_ENERGY_COST

    def __post_init__(self):
        if not (math.isfinite(self.non_energy_cost) and self.non_energy_cost >= 0):
            raise ConfigError(
                f"costs.non_energy_cost must be >= 0, got {self.non_energy_cost!r}"
            )


@dataclass(frozen=True)
class MacroDrivers:
    """Exogenous drivers per grid year.

    gdp_pc_index is per-capita GDP relative to the base year; other_demand_base
    is non-AI electricity demand (EJ/yr) at the base electricity price.
    """

    gdp_pc_index: Mapping[int, float]
    other_demand_base: Mapping[int, float]
    other_price_elasticity: float = DEFAULT_OTHER_PRICE_ELASTICITY

    def __post_init__(self):
        if not self.other_price_elasticity <= 0:
            raise ConfigError(
                "drivers.other_price_elasticity must be <= 0, got "
                f"{self.other_price_elasticity!r}"
            )
        for table in ("gdp_pc_index", "other_demand_base"):
            for year, value in getattr(self, table).items():
                _positive(f"drivers.{table}[{year}]", value)

    def check_grid(self, years) -> None:
        years = list(years)
        for table in ("gdp_pc_index", "other_demand_base"):
            values = getattr(self, table)
            for year in years:
                if year not in values:
                    raise ConfigError(f"drivers.{table} is missing grid year {year}")
        base = self.gdp_pc_index[years[0]]
        if abs(base - 1.0) > 1e-12:
            raise ConfigError(
                f"drivers.gdp_pc_index[{years[0]}] must be 1.0 at the base year, got {base!r}"
            )


def constant_growth_index(years, growth_rate: float) -> dict[int, float]:
    """``(1 + g) ** (t - base)`` for each year; the first year is the base."""
    years = list(years)
    return {t: (1.0 + growth_rate) ** (t - years[0]) for t in years}


def linear_path(years, start: float, end: float) -> dict[int, float]:
    years = list(years)
    span = years[-1] - years[0]
    return {t: start + (end - start) * (t - years[0]) / span for t in years}


def service_price(gamma: float, elec_price: float, costs: CostParams) -> float:
    """AI service price in 1975$/PF: non-energy cost plus gamma times electricity price."""
    if gamma < 0 or elec_price < 0:
        raise DomainError(
            f"gamma and elec_price must be non-negative, got {gamma!r}, {elec_price!r}"
        )
    return costs.non_energy_cost + gamma * elec_price


def ai_service_demand(params: DemandParams, income_ratio: float, price_ratio: float) -> float:
    if not (income_ratio > 0 and price_ratio > 0):
        raise DomainError(
            f"income and price ratios must be positive, got {income_ratio!r}, {price_ratio!r}"
        )
    return (
        params.base_service
        * income_ratio**params.income_elasticity
        * price_ratio**params.price_elasticity
    )


def other_demand(drivers: MacroDrivers, year: int, elec_price_ratio: float) -> float:
    if not elec_price_ratio > 0:
        raise DomainError(f"electricity price ratio must be positive, got {elec_price_ratio!r}")
    try:
        base = drivers.other_demand_base[year]
    except KeyError:
        raise ConfigError(f"drivers.other_demand_base has no entry for {year}") from None
    return base * elec_price_ratio**drivers.other_price_elasticity
