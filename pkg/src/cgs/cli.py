"""Command-line entry point: ``cgs run|calibrate|sweep|threshold|presets``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import _backend
from .analysis import classify_regime, sweep, threshold_income_elasticity
from .config import load_config
from .engine import ExogenousPrice, calibrate_baseline, run_scenario
from .errors import ConfigError, DomainError, SolverError
from .output import fmt, write_result, write_results, write_sweep, write_thresholds
from .presets import PRESETS

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SOLVER = 2

log = logging.getLogger("cgs")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _setup_logging():
    level = os.environ.get("CGS_LOG", "error").strip().lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")
    if level not in levels:
        log.error("CGS_LOG=%r not one of error, info, debug; using error", level)


def _anchor(text):
    try:
        year, value = text.split("=")
        return int(year), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"anchor must look like YEAR=EJ, got {text!r}")


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _pick(manifest, name):
    if name is None:
        return manifest.scenarios[0]
    for cfg in manifest.scenarios:
        if cfg.name == name:
            return cfg
    raise ConfigError(f"no scenario named {name!r} in the config")


def _out(args, manifest):
    return Path(args.output) if args.output else manifest.output_dir


def cmd_run(args):
    manifest = load_config(args.config)
    results = [run_scenario(cfg) for cfg in manifest.scenarios]
    paths = write_results(results, _out(args, manifest))
    for res in results:
        regime = classify_regime(res)
        last = res.records[-1]
        print(f"{res.config_name}: E{last.year}={fmt(last.electricity)} EJ "
              f"share={last.ai_share:.2%} regime={regime.kind}"
              + (f" crossover={regime.crossover_year}" if regime.crossover_year else ""))
    log.info("wrote %d files", len(paths))
    return EXIT_OK


def cmd_calibrate(args):
    manifest = load_config(args.config)
    template = _pick(manifest, args.scenario)
    if args.exogenous_price:
        template = template.replace(
            mode=ExogenousPrice.constant(template.grid.years, template.supply.base_price))
    if len(args.anchor) != 2:
        raise ConfigError("calibrate needs exactly two --anchor YEAR=EJ values")
    a1, a2 = sorted(args.anchor)
    cal = calibrate_baseline(template, a1, a2)
    print(f"scenario={template.name} base_service_yf={fmt(cal.base_service)} "
          f"gdp_growth_rate={fmt(cal.gdp_growth_rate)}")
    for year, target in (a1, a2):
        got = cal.achieved[year]
        print(f"  E{year}={fmt(got)} EJ target={fmt(target)} ({got / target - 1:+.2e})")
    if args.output:
        write_result(run_scenario(cal.config), args.output)
    return EXIT_OK


def cmd_sweep(args):
    manifest = load_config(args.config)
    template = _pick(manifest, args.scenario)
    members = sweep(template, args.param, args.values)
    path = write_sweep(template.name, args.param, members, _out(args, manifest))
    for m in members:
        print(f"{args.param}={m.value:g}: E{m.result.records[-1].year}="
              f"{fmt(m.result.records[-1].electricity)} EJ max|dev|={m.max_abs_deviation:.4f}")
    log.info("wrote %s", path)
    return EXIT_OK


def cmd_threshold(args):
    manifest = load_config(args.config)
    if len(args.bracket) != 2:
        raise ConfigError("--bracket needs two values LOW,HIGH")
    found = [threshold_income_elasticity(cfg, tuple(args.bracket), args.tol)
             for cfg in manifest.scenarios]
    write_thresholds(found, _out(args, manifest))
    for t in found:
        print(f"{t.trajectory_name}: threshold income elasticity "
              f"{t.threshold_income_elasticity:.4f} (width {t.achieved_tolerance:.1e})")
    return EXIT_OK


def cmd_presets(args):
    for name, (description, _) in PRESETS.items():
        print(f"{name:10s} {description}")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="cgs", description="AI compute electricity demand scenarios")
    p.add_argument("--version", action="version", version="%(prog)s 0.1.0 (" +
                   _backend.BACKEND + " kernels)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_config(sp):
        sp.add_argument("-c", "--config", required=True, help="JSON run manifest")
        sp.add_argument("-o", "--output", help="output directory (overrides manifest)")

    sp = sub.add_parser("run", help="run every scenario in a manifest")
    with_config(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("calibrate", help="fit base service and GDP growth to two anchors")
    with_config(sp)
    sp.add_argument("--anchor", type=_anchor, action="append", default=[],
                    help="YEAR=EJ target; give twice")
    sp.add_argument("--scenario", help="scenario name (default: first)")
    sp.add_argument("--exogenous-price", action="store_true",
                    help="calibrate at a constant base electricity price")
    sp.set_defaults(func=cmd_calibrate)

    sp = sub.add_parser("sweep", help="one-parameter sensitivity sweep")
    with_config(sp)
    sp.add_argument("--param", required=True)
    sp.add_argument("--values", type=_floats, required=True)
    sp.add_argument("--scenario", help="template scenario name (default: first)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("threshold", help="income-elasticity regime threshold per scenario")
    with_config(sp)
    sp.add_argument("--bracket", type=_floats, default=[0.5, 8.0])
    sp.add_argument("--tol", type=float, default=1e-3)
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("presets", help="list built-in scenarios")
    sp.set_defaults(func=cmd_presets)
    return p


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
