"""Sensitivity sweeps, regime classification and income-elasticity thresholds."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .efficiency import Slow
from .emissions import EmissionsParams, emissions_series
from .engine import ScenarioConfig, ScenarioResult, run_scenario
from .errors import CGSError, ConfigError, DomainError, SweepError, ThresholdError

__all__ = [
    "EmissionsParams",
    "RegimeClassification",
    "SweepMember",
    "ThresholdResult",
    "classify_regime",
    "emissions_series",
    "sweep",
    "threshold_income_elasticity",
]

log = logging.getLogger(__name__)

SWEEP_PARAMETERS = (
    "income_elasticity",
    "price_elasticity",
    "supply_elasticity",
    "improvement_factor",
)

EFFICIENCY_DOMINANT = "efficiency_dominant"
DEMAND_DOMINANT = "demand_dominant"
MIXED = "mixed"

_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class SweepMember:
    value: float
    result: ScenarioResult
    deviation: dict  # year -> (E_v - E_base) / E_base

    @property
    def max_abs_deviation(self) -> float:
        return max(abs(d) for d in self.deviation.values())


@dataclass(frozen=True)
class RegimeClassification:
    kind: str
    crossover_year: Optional[int] = None


@dataclass(frozen=True)
class ThresholdResult:
    trajectory_name: str
    threshold_income_elasticity: float
    search_bracket: tuple
    achieved_tolerance: float
    iterations: int = 0


def apply_parameter(template: ScenarioConfig, parameter: str, value: float) -> ScenarioConfig:
    if parameter in ("income_elasticity", "price_elasticity"):
        return template.with_demand(**{parameter: value})
    if parameter == "supply_elasticity":
        return template.replace(
            supply=dataclasses.replace(template.supply, supply_elasticity=value)
        )
    if parameter == "improvement_factor":
        traj = template.trajectory
        if not isinstance(traj.variant, Slow):
            raise ConfigError("improvement_factor sweeps need a slow trajectory template")
        variant = dataclasses.replace(traj.variant, improvement_factor_per_decade=value)
        return template.replace(trajectory=dataclasses.replace(traj, variant=variant))
    raise ConfigError(
        f"unknown sweep parameter {parameter!r}; choose from {', '.join(SWEEP_PARAMETERS)}"
    )


def sweep(template: ScenarioConfig, parameter: str, values: Sequence[float],
          base_result: Optional[ScenarioResult] = None) -> list[SweepMember]:
    """Run the template once per value, holding every other field fixed.

    Members come back sorted by value; deviations are against the template run.
    """
    if not values:
        raise ConfigError("sweep needs at least one value")
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigError(
            f"unknown sweep parameter {parameter!r}; choose from {', '.join(SWEEP_PARAMETERS)}"
        )
    base = base_result if base_result is not None else run_scenario(template)
    e_base = base.electricity
    members = []
    for value in sorted(values):
        try:
            cfg = apply_parameter(template, parameter, value)
            cfg = cfg.replace(name=f"{template.name}[{parameter}={value:g}]")
            res = run_scenario(cfg)
        except CGSError as exc:
            raise SweepError(f"sweep {parameter}={value!r} failed: {exc}", value=value) from exc
        dev = {t: (e - e_base[t]) / e_base[t] for t, e in res.electricity.items()}
        members.append(SweepMember(value, res, dev))
        log.info("sweep %s=%g: max |dev| %.4f", parameter, value, members[-1].max_abs_deviation)
    return members


def classify_regime(result: ScenarioResult) -> RegimeClassification:
    """Label an electricity path as efficiency-dominant, demand-dominant or mixed.

    Changes smaller than 1e-12 of the level are ties and take the previous
    sign. A mixed path reports the turning-point year, the first year from
    which electricity moves against its initial direction. A perfectly flat
    path counts as efficiency-dominant (demand never outweighs efficiency).
    """
    records = result.records
    if len(records) < 2:
        raise DomainError("regime classification needs at least two periods")
    e = [r.electricity for r in records]
    years = [r.year for r in records]

    signs = []
    prev = 0
    for a, b in zip(e, e[1:]):
        d = b - a
        if abs(d) <= _TIE_RTOL * max(abs(a), abs(b)):
            s = prev
        else:
            s = 1 if d > 0 else -1
        signs.append(s)
        prev = s

    if all(s >= 0 for s in signs) and e[-1] > e[0]:
        return RegimeClassification(DEMAND_DOMINANT)
    if all(s <= 0 for s in signs) and e[-1] <= e[0]:
        return RegimeClassification(EFFICIENCY_DOMINANT)

    initial = next(s for s in signs if s != 0)
    for i, s in enumerate(signs):
        if s != 0 and s != initial:
            return RegimeClassification(MIXED, years[i])
    # unreachable for finite series: a path that never reverses is monotone
    raise AssertionError("non-monotone path without a sign change")


def _is_demand_dominant(result: ScenarioResult) -> bool:
    return result.records[-1].electricity > result.records[0].electricity


def threshold_income_elasticity(template: ScenarioConfig, bracket=(0.5, 8.0),
                                tol: float = 1e-3) -> ThresholdResult:
    """Smallest income elasticity at which end-year electricity exceeds the base year.

    Bisects on the indicator ``E(end) > E(base)`` until the bracket is no wider
    than ``tol`` and returns its midpoint.
    """
    lo, hi = map(float, bracket)
    if not tol > 0:
        raise ConfigError(f"tol must be positive, got {tol!r}")
    if not 0 <= lo < hi:
        raise ConfigError(f"threshold bracket must satisfy 0 <= low < high, got {bracket!r}")

    def indicator(eps):
        return _is_demand_dominant(run_scenario(template.with_demand(income_elasticity=eps)))

    at_lo, at_hi = indicator(lo), indicator(hi)
    if at_lo or not at_hi:
        raise ThresholdError(
            f"{template.name}: bracket ({lo:g}, {hi:g}) does not straddle the threshold "
            f"(demand-dominant at low={at_lo}, at high={at_hi})",
            indicators=(at_lo, at_hi),
        )
    n = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if indicator(mid):
            hi = mid
        else:
            lo = mid
        n += 1
    return ThresholdResult(template.name, 0.5 * (lo + hi), (float(bracket[0]), float(bracket[1])),
                           hi - lo, n)
