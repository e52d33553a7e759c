"""CSV serialization of scenario, sweep and threshold results."""

from __future__ import annotations

import csv
from pathlib import Path

from .analysis import classify_regime
from .units import PeriodRecord

RESULT_HEADER = (
    "scenario", "year", "gamma_ej_per_yf", "service_yf", "elec_ej", "elec_twh",
    "elec_price_1975usd_gj", "service_price_1975usd_pf", "total_elec_ej", "ai_share",
    "emissions_mt",
)
_RECORD_FIELDS = (
    "gamma", "service", "electricity", "electricity_twh", "elec_price", "service_price",
    "total_elec", "ai_share", "emissions",
)
SUMMARY_HEADER = ("scenario", "E2030", "E2050", "share2050", "regime", "crossover_year")
SWEEP_HEADER = ("scenario", "parameter", "value", "year", "elec_ej", "service_yf",
                "deviation")
THRESHOLD_HEADER = ("scenario", "threshold_income_elasticity", "bracket_low",
                    "bracket_high", "achieved_tolerance")


def fmt(x) -> str:
    """Ten significant digits."""
    return format(float(x), ".10g")


def _write(path: Path, header, rows):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    return path


def write_result(result, output_dir) -> Path:
    rows = [
        [result.config_name, rec.year] + [fmt(getattr(rec, f)) for f in _RECORD_FIELDS]
        for rec in sorted(result.records, key=lambda r: r.year)
    ]
    return _write(Path(output_dir) / f"{result.config_name}.csv", RESULT_HEADER, rows)


def summary_rows(results):
    rows = []
    for res in results:
        e = res.electricity
        share = res.series("ai_share")
        regime = classify_regime(res)
        rows.append([
            res.config_name,
            fmt(e[2030]) if 2030 in e else "",
            fmt(e[2050]) if 2050 in e else "",
            fmt(share[2050]) if 2050 in share else "",
            regime.kind,
            "" if regime.crossover_year is None else regime.crossover_year,
        ])
    return rows


def write_results(results, manifest_or_dir) -> list[Path]:
    """One CSV per scenario plus ``summary.csv``; returns the written paths."""
    results = list(results)
    if not results:
        raise ValueError("no results to write")
    out = getattr(manifest_or_dir, "output_dir", manifest_or_dir)
    paths = [write_result(r, out) for r in results]
    paths.append(_write(Path(out) / "summary.csv", SUMMARY_HEADER, summary_rows(results)))
    return paths


def write_sweep(template_name, parameter, members, output_dir) -> Path:
    rows = []
    for m in members:
        for rec in m.result.records:
            rows.append([template_name, parameter, fmt(m.value), rec.year,
                         fmt(rec.electricity), fmt(rec.service), fmt(m.deviation[rec.year])])
    return _write(Path(output_dir) / f"sweep_{parameter}.csv", SWEEP_HEADER, rows)


def write_thresholds(thresholds, output_dir) -> Path:
    rows = [[t.trajectory_name, fmt(t.threshold_income_elasticity), fmt(t.search_bracket[0]),
             fmt(t.search_bracket[1]), fmt(t.achieved_tolerance)] for t in thresholds]
    return _write(Path(output_dir) / "threshold.csv", THRESHOLD_HEADER, rows)


def read_result_csv(path) -> tuple[str, list[PeriodRecord]]:
    """Parse a per-scenario CSV back into records."""
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != RESULT_HEADER:
            raise ValueError(f"{path}: unexpected header {header}")
        name = None
        records = []
        for row in reader:
            name = row[0]
            values = [float(v) for v in row[2:]]
            records.append(PeriodRecord(int(row[1]), *values))
    return name, records
