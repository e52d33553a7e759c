"""Electricity supply curve and single-market clearing per period."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from . import _backend
from .demand import CostParams, DemandParams, MacroDrivers
from .efficiency import EfficiencyTrajectory, gamma_at
from .errors import ConfigError, SolverError

DEFAULT_BASE_PRICE = 5.0  # 1975$/GJ
DEFAULT_SUPPLY_ELASTICITY = 1.0
DEFAULT_RTOL = 1e-9
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True)
class SupplyParams:
    """Constant-elasticity supply ``base_quantity[t] * (P / base_price) ** sigma``.

    A ``base_quantity`` of None means balanced growth: resolved per run so the
    base year clears at ``base_price`` and capacity then grows in step with
    non-AI demand (see :func:`balanced_supply`).
    """

    base_quantity: Optional[Mapping[int, float]] = None
    base_price: float = DEFAULT_BASE_PRICE
    supply_elasticity: float = DEFAULT_SUPPLY_ELASTICITY

    def __post_init__(self):
        if not (math.isfinite(self.base_price) and self.base_price > 0):
            raise ConfigError(f"supply.base_price must be positive, got {self.base_price!r}")
        if not (self.supply_elasticity > 0 and math.isfinite(self.supply_elasticity)):
            raise ConfigError(
                f"supply.supply_elasticity must be positive, got {self.supply_elasticity!r}"
            )
        if self.base_quantity is not None:
            for year, q in self.base_quantity.items():
                if not (isinstance(q, (int, float)) and math.isfinite(q) and q > 0):
                    raise ConfigError(f"supply.base_quantity[{year}] must be positive, got {q!r}")

    def check_grid(self, years) -> None:
        if self.base_quantity is None:
            return
        for year in years:
            if year not in self.base_quantity:
                raise ConfigError(f"supply.base_quantity is missing grid year {year}")


@dataclass(frozen=True)
class MarketSolution:
    elec_price: float
    supplied: float
    ai_electricity: float
    other_electricity: float
    residual: float
    iterations: int


def balanced_supply(
    drivers: MacroDrivers, years, base_ai_electricity: float, params: SupplyParams
) -> SupplyParams:
    """Fill in a balanced-growth supply table.

    ``q[t] = other_base[t] * (1 + E_ai0 / other_base[t0])``: the base year clears
    at the base price exactly, later years scale with non-AI demand.
    """
    years = list(years)
    other0 = drivers.other_demand_base[years[0]]
    scale = 1.0 + base_ai_electricity / other0
    table = {t: drivers.other_demand_base[t] * scale for t in years}
    return SupplyParams(table, params.base_price, params.supply_elasticity)


def supply(params: SupplyParams, year: int, price: float) -> float:
    if params.base_quantity is None:
        raise ConfigError("supply.base_quantity must be resolved before evaluating supply")
    try:
        q0 = params.base_quantity[year]
    except KeyError:
        raise ConfigError(f"supply.base_quantity has no entry for {year}") from None
    return q0 * (price / params.base_price) ** params.supply_elasticity


def clear_market(
    year: int,
    traj: EfficiencyTrajectory,
    demand_params: DemandParams,
    drivers: MacroDrivers,
    costs: CostParams,
    supply_params: SupplyParams,
    base_year: int,
    tol: Optional[float] = None,
    max_iter: int = DEFAULT_MAX_ITER,
) -> MarketSolution:
    """Find the electricity price where supply meets AI plus other demand.

    AI demand is evaluated through the full chain: electricity price, service
    price, price ratio against ``base_service_price``, constant-elasticity
    service demand, times gamma. ``tol`` is an absolute residual in EJ; when
    None the residual must be within 1e-9 of supply. Bisection also stops once
    the bracket is narrower than 1e-12 of the price.
    """
    if tol is not None and not tol > 0:
        raise ConfigError(f"tol must be positive, got {tol!r}")
    if demand_params.base_service_price is None:
        raise ConfigError("demand.base_service_price must be resolved before clearing")
    if supply_params.base_quantity is None:
        raise ConfigError("supply.base_quantity must be resolved before clearing")
    try:
        q0 = supply_params.base_quantity[year]
        d0 = drivers.other_demand_base[year]
        income = drivers.gdp_pc_index[year]
    except KeyError:
        raise ConfigError(f"a driver or supply table has no entry for {year}") from None
    gamma = gamma_at(traj, base_year, year)
    s_eff = demand_params.base_service * income**demand_params.income_elasticity
    atol, rtol = (tol, 0.0) if tol is not None else (0.0, DEFAULT_RTOL)

    status, price, sup, oth, ai, lo, hi, glo, ghi, iterations = _backend.clear_price(
        float(q0),
        supply_params.base_price,
        supply_params.supply_elasticity,
        float(d0),
        drivers.other_price_elasticity,
        s_eff,
        gamma,
        costs.non_energy_cost,
        demand_params.base_service_price,
        demand_params.price_elasticity,
        atol,
        rtol,
        int(max_iter),
    )
    if status == _backend.NOT_BRACKETED:
        raise SolverError(
            f"{year}: market root not bracketed in [{lo:.6g}, {hi:.6g}] "
            f"(excess supply {glo:+.3e} / {ghi:+.3e})",
            bracket=(lo, hi),
            signs=(math.copysign(1.0, glo), math.copysign(1.0, ghi)),
            year=year,
        )
    if status == _backend.MAX_ITER:
        raise SolverError(
            f"{year}: bisection did not converge in {iterations} iterations, "
            f"last bracket [{lo:.12g}, {hi:.12g}]",
            bracket=(lo, hi),
            year=year,
        )
    return MarketSolution(
        elec_price=price,
        supplied=sup,
        ai_electricity=ai,
        other_electricity=oth,
        residual=sup - oth - ai,
        iterations=iterations,
    )

