"""JSON run manifests: parsing, preset expansion and validation.

See ``docs/config_schema.md`` for the field reference. Scenarios are either a
preset name or an object; objects start from a preset (``"baseline"`` unless
``"preset"`` says otherwise) and override whole fields section by section.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .demand import CostParams, DemandParams, MacroDrivers, constant_growth_index, linear_path
from .efficiency import Custom, EfficiencyTrajectory, Fixed, Rapid, Slow
from .emissions import EmissionsParams
from .engine import Equilibrium, ExogenousPrice, ScenarioConfig
from .errors import ConfigError
from .market import SupplyParams
from .presets import DEFAULT_GRID, PRESETS, expand_preset
from .units import TimeGrid


@dataclass(frozen=True)
class RunManifest:
    scenarios: tuple
    output_dir: Path
    formats: tuple = ("csv",)


_TOP_KEYS = {"scenarios", "output_dir", "formats"}
_SCENARIO_KEYS = {
    "name", "preset", "grid", "trajectory", "demand", "costs", "drivers", "supply",
    "emissions", "mode",
}


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ConfigError(f"{where}: unknown field(s) {', '.join(extra)}")


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where} must be finite")
    return float(value)


def _integer(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where} must be an integer, got {value!r}")
    return value


def _year_table(value, where):
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must be an object mapping years to numbers")
    out = {}
    for key, v in value.items():
        try:
            year = int(key)
        except ValueError:
            raise ConfigError(f"{where}: key {key!r} is not a year") from None
        out[year] = _number(v, f"{where}[{key}]")
    return out


def _series(value, years, where):
    """A number (flat), a year table, or ``{"linear": [start, end]}`` over the grid."""
    if isinstance(value, dict) and set(value) == {"linear"}:
        pair = value["linear"]
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ConfigError(f"{where}.linear must be [start, end]")
        return linear_path(years, _number(pair[0], f"{where}.linear[0]"),
                           _number(pair[1], f"{where}.linear[1]"))
    if isinstance(value, dict):
        table = _year_table(value, where)
        for year in years:
            if year not in table:
                raise ConfigError(f"{where} is missing grid year {year}")
        return table
    v = _number(value, where)
    return {t: v for t in years}


def _grid(obj, where):
    _check_keys(obj, {"base_year", "end_year", "step_years"}, where)
    kw = {k: _integer(v, f"{where}.{k}") for k, v in obj.items()}
    return TimeGrid(**{**dataclasses.asdict(DEFAULT_GRID), **kw})


def _trajectory(obj, base, years, where):
    _check_keys(obj, {"kind", "gamma0", "doubling_period_years", "saturation_year",
                      "improvement_factor_per_decade", "table"}, where)
    kind = obj.get("kind", base.kind)
    gamma0 = _number(obj["gamma0"], f"{where}.gamma0") if "gamma0" in obj else base.gamma0
    if kind == "fixed":
        variant = Fixed()
    elif kind == "rapid":
        d = base.variant if isinstance(base.variant, Rapid) else Rapid()
        variant = Rapid(
            _number(obj.get("doubling_period_years", d.doubling_period_years),
                    f"{where}.doubling_period_years"),
            _integer(obj.get("saturation_year", d.saturation_year), f"{where}.saturation_year"),
        )
    elif kind == "slow":
        d = base.variant if isinstance(base.variant, Slow) else Slow()
        variant = Slow(_number(obj.get("improvement_factor_per_decade",
                                       d.improvement_factor_per_decade),
                               f"{where}.improvement_factor_per_decade"))
    elif kind == "custom":
        if "table" not in obj:
            raise ConfigError(f"{where}.table is required for a custom trajectory")
        table = _year_table(obj["table"], f"{where}.table")
        variant = Custom(table)
        if "gamma0" not in obj and years[0] in table:
            gamma0 = table[years[0]]
    else:
        raise ConfigError(f"{where}.kind must be fixed, rapid, slow or custom, got {kind!r}")
    return EfficiencyTrajectory(variant, gamma0)


def _demand(obj, base, where):
    _check_keys(obj, {"income_elasticity", "price_elasticity", "base_service",
                      "base_service_price"}, where)
    kw = {}
    for key, value in obj.items():
        if key == "base_service_price" and value is None:
            kw[key] = None
        else:
            kw[key] = _number(value, f"{where}.{key}")
    return dataclasses.replace(base, **kw)


def _costs(obj, base, where):
    _check_keys(obj, {"non_energy_cost"}, where)
    if "non_energy_cost" in obj:
        return CostParams(_number(obj["non_energy_cost"], f"{where}.non_energy_cost"))
    return base


def _drivers(obj, base, years, where):
    _check_keys(obj, {"gdp_growth_rate", "gdp_pc_index", "other_demand_base",
                      "other_price_elasticity"}, where)
    if "gdp_growth_rate" in obj and "gdp_pc_index" in obj:
        raise ConfigError(f"{where}: give either gdp_growth_rate or gdp_pc_index, not both")
    gdp = base.gdp_pc_index
    if "gdp_growth_rate" in obj:
        gdp = constant_growth_index(years, _number(obj["gdp_growth_rate"],
                                                   f"{where}.gdp_growth_rate"))
    elif "gdp_pc_index" in obj:
        gdp = _series(obj["gdp_pc_index"], years, f"{where}.gdp_pc_index")
    other = base.other_demand_base
    if "other_demand_base" in obj:
        other = _series(obj["other_demand_base"], years, f"{where}.other_demand_base")
    elasticity = base.other_price_elasticity
    if "other_price_elasticity" in obj:
        elasticity = _number(obj["other_price_elasticity"], f"{where}.other_price_elasticity")
    return MacroDrivers(gdp, other, elasticity)


def _supply(obj, base, years, where):
    _check_keys(obj, {"base_quantity", "base_price", "supply_elasticity"}, where)
    kw = {}
    if "base_quantity" in obj:
        q = obj["base_quantity"]
        kw["base_quantity"] = None if q is None else _series(q, years, f"{where}.base_quantity")
    for key in ("base_price", "supply_elasticity"):
        if key in obj:
            kw[key] = _number(obj[key], f"{where}.{key}")
    return dataclasses.replace(base, **kw)


def _emissions(obj, years, where):
    _check_keys(obj, {"carbon_intensity"}, where)
    return EmissionsParams(_series(obj["carbon_intensity"], years, f"{where}.carbon_intensity"))


def _mode(obj, years, where):
    _check_keys(obj, {"kind", "prices"}, where)
    kind = obj.get("kind", "equilibrium")
    if kind == "equilibrium":
        if "prices" in obj:
            raise ConfigError(f"{where}.prices only applies to exogenous_price mode")
        return Equilibrium()
    if kind == "exogenous_price":
        if "prices" not in obj:
            raise ConfigError(f"{where}.prices is required for exogenous_price mode")
        return ExogenousPrice(_series(obj["prices"], years, f"{where}.prices"))
    raise ConfigError(f"{where}.kind must be equilibrium or exogenous_price, got {kind!r}")


def scenario_from_dict(obj, where="scenario") -> ScenarioConfig:
    """Build one scenario from a preset name or a JSON object."""
    if isinstance(obj, str):
        return expand_preset(obj)
    _check_keys(obj, _SCENARIO_KEYS, where)
    preset = obj.get("preset", "baseline")
    if preset not in PRESETS:
        raise ConfigError(f"{where}.preset: unknown preset {preset!r}")
    grid = _grid(obj["grid"], f"{where}.grid") if "grid" in obj else DEFAULT_GRID
    years = grid.years
    cfg = expand_preset(preset, grid)
    name = obj.get("name", preset)
    if not isinstance(name, str) or not name:
        raise ConfigError(f"{where}.name must be a non-empty string")
    changes = {"name": name}
    if "trajectory" in obj:
        changes["trajectory"] = _trajectory(obj["trajectory"], cfg.trajectory, years,
                                            f"{where}.trajectory")
    if "demand" in obj:
        changes["demand"] = _demand(obj["demand"], cfg.demand, f"{where}.demand")
    if "costs" in obj:
        changes["costs"] = _costs(obj["costs"], cfg.costs, f"{where}.costs")
    if "drivers" in obj:
        changes["drivers"] = _drivers(obj["drivers"], cfg.drivers, years, f"{where}.drivers")
    if "supply" in obj:
        changes["supply"] = _supply(obj["supply"], cfg.supply, years, f"{where}.supply")
    if "emissions" in obj:
        changes["emissions"] = _emissions(obj["emissions"], years, f"{where}.emissions")
    if "mode" in obj:
        changes["mode"] = _mode(obj["mode"], years, f"{where}.mode")
    try:
        return cfg.replace(**changes).validate()
    except ConfigError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def manifest_from_dict(doc, default_output_dir=".") -> RunManifest:
    _check_keys(doc, _TOP_KEYS, "manifest")
    scenarios = doc.get("scenarios")
    if not isinstance(scenarios, list):
        raise ConfigError("manifest.scenarios must be a list")
    if not scenarios:
        raise ConfigError("manifest.scenarios must not be empty")
    configs = []
    seen = set()
    for i, item in enumerate(scenarios):
        cfg = scenario_from_dict(item, f"scenarios[{i}]")
        if cfg.name in seen:
            raise ConfigError(f"scenarios[{i}]: duplicate scenario name {cfg.name!r}")
        seen.add(cfg.name)
        configs.append(cfg)
    out = doc.get("output_dir", default_output_dir)
    if not isinstance(out, str):
        raise ConfigError("manifest.output_dir must be a string path")
    formats = doc.get("formats", ["csv"])
    if not (isinstance(formats, list) and formats and set(formats) <= {"csv"}):
        raise ConfigError("manifest.formats must be a non-empty subset of ['csv']")
    return RunManifest(tuple(configs), Path(out), tuple(formats))


def load_config(path) -> RunManifest:
    """Read and validate a JSON manifest; every failure is a :class:`ConfigError`."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    try:
        return manifest_from_dict(doc)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    except (TypeError, AttributeError, KeyError, RecursionError) as exc:
        raise ConfigError(f"{path}: malformed configuration ({exc})") from None
