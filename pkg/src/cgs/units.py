"""Time grid, unit constants and the per-period output record.

Service output is measured in YottaFLOP per year (1 YF = 1e24 FLOP), energy in
EJ, prices in 1975 dollars. Because 1 YF = 1e9 PF and 1 EJ = 1e9 GJ, an
intensity in EJ/YF times an electricity price in $/GJ is directly an energy
cost in $/PF.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, DomainError

TWH_PER_EJ = 1000.0 / 3.6
EJ_PER_TWH = 3.6 / 1000.0
PF_PER_YF = 1e9
GJ_PER_EJ = 1e9
FLOP_PER_YF = 1e24
FLOP_PER_PF = 1e15


def ej_to_twh(e: float) -> float:
    if e < 0:
        raise DomainError(f"energy must be non-negative, got {e!r} EJ")
    return e * 1000.0 / 3.6


def twh_to_ej(e: float) -> float:
    if e < 0:
        raise DomainError(f"energy must be non-negative, got {e!r} TWh")
    return e * 3.6 / 1000.0


@dataclass(frozen=True)
class TimeGrid:
    """Evenly spaced model periods, ``base_year`` through ``end_year`` inclusive."""

    base_year: int = 2025
    end_year: int = 2050
    step_years: int = 5

    def __post_init__(self):
        for name in ("base_year", "end_year", "step_years"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"grid.{name} must be an integer, got {value!r}")
        if self.step_years <= 0:
            raise ConfigError(f"grid.step_years must be positive, got {self.step_years}")
        if self.end_year <= self.base_year:
            raise ConfigError(
                f"grid.end_year ({self.end_year}) must exceed base_year ({self.base_year})"
            )
        if (self.end_year - self.base_year) % self.step_years:
            raise ConfigError(
                f"grid span {self.end_year - self.base_year} is not a multiple of "
                f"step_years={self.step_years}"
            )

    @property
    def years(self) -> list[int]:
        return list(range(self.base_year, self.end_year + 1, self.step_years))

    def __contains__(self, year) -> bool:
        return (
            self.base_year <= year <= self.end_year
            and (year - self.base_year) % self.step_years == 0
        )


def periods(grid: TimeGrid) -> list[int]:
    return grid.years


@dataclass(frozen=True)
class PeriodRecord:
    """Equilibrium outputs for one grid year.

    Units: gamma EJ/YF, service YF/yr, electricity and total_elec EJ/yr,
    elec_price 1975$/GJ, service_price 1975$/PF, emissions MtCO2/yr.
    """

    year: int
    gamma: float
    service: float
    electricity: float
    electricity_twh: float
    elec_price: float
    service_price: float
    total_elec: float
    ai_share: float
    emissions: float
