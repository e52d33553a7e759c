"""Power-sector emissions accounting for the AI load (illustrative intensities)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigError

# placeholder; not an empirical estimate
DEFAULT_CARBON_INTENSITY = 55.0  # MtCO2/EJ


@dataclass(frozen=True)
class EmissionsParams:
    carbon_intensity: Mapping[int, float]

    def __post_init__(self):
        for year, ci in self.carbon_intensity.items():
            if not (isinstance(ci, (int, float)) and math.isfinite(ci) and ci >= 0):
                raise ConfigError(
                    f"emissions.carbon_intensity[{year}] must be >= 0, got {ci!r}"
                )

    @classmethod
    def flat(cls, years, value=DEFAULT_CARBON_INTENSITY):
        return cls({t: float(value) for t in years})

    def check_grid(self, years) -> None:
        for year in years:
            if year not in self.carbon_intensity:
                raise ConfigError(f"emissions.carbon_intensity is missing grid year {year}")


def emissions_series(result, params: EmissionsParams) -> dict[int, float]:
    """MtCO2 per grid year: AI electricity times carbon intensity."""
    out = {}
    for rec in result.records:
        try:
            ci = params.carbon_intensity[rec.year]
        except KeyError:
            raise ConfigError(f"emissions.carbon_intensity is missing grid year {rec.year}") from None
        out[rec.year] = rec.electricity * ci
    return out
