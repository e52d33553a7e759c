"""Compute energy intensity trajectories, gamma(t) in EJ per YottaFLOP."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

from .errors import ConfigError, DomainError

BASELINE_GAMMA0 = 7.7e-5
TRAJECTORY_GAMMA0 = 3.83e-5


@dataclass(frozen=True)
class Fixed:
    kind = "fixed"


@dataclass(frozen=True)
class Rapid:
    """Performance doubles every ``doubling_period_years`` until ``saturation_year``."""

    doubling_period_years: float = 2.34
    saturation_year: int = 2035
    kind = "rapid"

    def __post_init__(self):
        if not self.doubling_period_years > 0:
            raise ConfigError(
                f"rapid.doubling_period_years must be positive, got {self.doubling_period_years!r}"
            )


@dataclass(frozen=True)
class Slow:
    """Performance improves by a constant factor every ten years."""

    improvement_factor_per_decade: float = 1.8
    kind = "slow"

    def __post_init__(self):
        if not self.improvement_factor_per_decade > 1:
            raise ConfigError(
                "slow.improvement_factor_per_decade must exceed 1, got "
                f"{self.improvement_factor_per_decade!r}"
            )


@dataclass(frozen=True)
class Custom:
    table: Mapping[int, float] = field(default_factory=dict)
    kind = "custom"

    def __post_init__(self):
        for year, value in self.table.items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"custom gamma for {year} must be positive, got {value!r}")


Variant = Union[Fixed, Rapid, Slow, Custom]


@dataclass(frozen=True)
class EfficiencyTrajectory:
    variant: Variant = field(default_factory=Fixed)
    gamma0: float = BASELINE_GAMMA0

    def __post_init__(self):
        if not (math.isfinite(self.gamma0) and self.gamma0 > 0):
            raise ConfigError(f"trajectory.gamma0 must be positive, got {self.gamma0!r}")

    @property
    def kind(self) -> str:
        return self.variant.kind

    def check_grid(self, years) -> None:
        if isinstance(self.variant, Custom):
            for year in years:
                if year not in self.variant.table:
                    raise ConfigError(f"custom gamma table is missing grid year {year}")


def gamma_at(traj: EfficiencyTrajectory, base_year: int, t: int) -> float:
    if t < base_year:
        raise DomainError(f"year {t} precedes base year {base_year}")
    v = traj.variant
    if isinstance(v, Fixed):
        return traj.gamma0
    if isinstance(v, Rapid):
        # clamping the exponent makes post-saturation values exactly equal
        elapsed = min(t, v.saturation_year) - base_year
        return traj.gamma0 * 2.0 ** (-max(elapsed, 0) / v.doubling_period_years)
    if isinstance(v, Slow):
        return traj.gamma0 * v.improvement_factor_per_decade ** (-(t - base_year) / 10.0)
    if isinstance(v, Custom):
        try:
            return float(v.table[t])
        except KeyError:
            raise ConfigError(f"custom gamma table is missing year {t}") from None
    raise ConfigError(f"unknown trajectory variant {v!r}")


def gamma_path(traj: EfficiencyTrajectory, years) -> dict[int, float]:
    years = list(years)
    return {t: gamma_at(traj, years[0], t) for t in years}
