"""Writing scenario and sweep results to disk.

Numbers are written with ``repr`` (shortest round-trip decimal) and nothing
time-dependent goes into a file, so identical runs give identical bytes.
"""

from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np

from .errors import ConfigError, ExportError
from .scenarios import ScenarioReport

SWEEP_COLUMNS = ("axis_value", "replicate", "seed", "gini", "top_1pct", "top_10pct",
                 "median_mean", "share_below_100")


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _json_ready(obj):
    if isinstance(obj, dict):
        return {str(k): _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    return obj


def metric_rows(report: ScenarioReport) -> List[tuple]:
    rows = []
    if report.final_metrics is not None:
        rows += report.final_metrics.as_rows()
    if report.dilution:
        rows += [("dilution_rows", len(report.dilution))]
    else:
        rows += [("steps_run", report.steps_run), ("converged_at", report.converged_at),
                 ("max_conservation_error", report.max_conservation_error)]
    eq = report.equilibrium
    if eq is not None:
        rows += [("B_star", eq.B_star), ("B_star_floor", eq.B_star_floor), ("interior", eq.interior),
                 ("attention_per_builder_eq", eq.attention_per_builder), ("profit_at_eq", eq.profit_at_eq),
                 ("outside_absorption", eq.outside_absorption)]
    if report.welfare is not None:
        rows += [("B_social", report.welfare.B_social), ("excess_entry", report.welfare.excess_entry)]
    for c in report.target_checks:
        rows += [(f"target_{c.name}_observed", c.observed), (f"target_{c.name}_pass", c.passed)]
    return rows


def report_dict(report: ScenarioReport) -> dict:
    d = {
        "config": report.config.to_dict(),
        "metrics": dict(metric_rows(report)),
        "target_checks": [
            {"name": c.name, "observed": c.observed, "target": c.target,
             "window": [c.window.lo, c.window.hi], "window_text": str(c.window), "pass": c.passed}
            for c in report.target_checks
        ],
        "warnings": list(report.warnings),
    }
    if report.dilution:
        d["dilution"] = [{"B": r.B, "avg_attention": r.avg_attention, "profit": r.profit} for r in report.dilution]
    if report.error is not None:
        d["error"] = report.error
    return _json_ready(d)


def _prepare(destination) -> Path:
    dest = Path(destination)
    try:
        dest.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ExportError(f"cannot create {dest}: {exc}") from exc
    if not os.access(dest, os.W_OK):
        raise ExportError(f"{dest} is not writable")
    return dest


def _export_one(report: ScenarioReport, fmt_name: str, dest: Path) -> List[Path]:
    written = []
    if fmt_name == "json":
        path = dest / "metrics.json"
        path.write_text(json.dumps(report_dict(report), indent=2, sort_keys=False) + "\n")
    else:
        path = dest / "metrics.csv"
        _write_csv(path, ("name", "value"), metric_rows(report))
    written.append(path)
    if report.dilution:
        path = dest / "dilution.csv"
        _write_csv(path, ("B", "avg_attention", "profit"), report.dilution)
        written.append(path)
    if "lorenz" in report.curves:
        c = report.curves["lorenz"]
        path = dest / "lorenz.csv"
        _write_csv(path, ("cum_population", "cum_share"), zip(c.x, c.y))
        written.append(path)
    if "rank" in report.curves:
        c = report.curves["rank"]
        keep = c.y > 0
        path = dest / "rank.csv"
        _write_csv(path, ("rank", "attention"), zip(c.x[keep].astype(int), c.y[keep]))
        written.append(path)
    if report.final_state is not None:
        q = report.qualities if report.qualities is not None else np.full(report.final_state.B, np.nan)
        path = dest / "final_state.csv"
        _write_csv(path, ("builder_id", "quality", "attention"),
                   zip(range(1, report.final_state.B + 1), q, report.final_state.x))
        written.append(path)
    return written


def sweep_summary_rows(reports: Sequence[ScenarioReport]):
    for r in reports:
        yield (r.axis_value, r.replicate, r.seed, r.metric("gini"), r.metric("top_share_0.01"),
               r.metric("top_share_0.1"), r.metric("median_mean"), r.metric("share_below_100.0"))


def export_results(results: Union[ScenarioReport, Sequence[ScenarioReport]], format: str = "csv",
                   destination: Union[str, os.PathLike] = ".") -> List[Path]:
    """Write one report into ``destination``, or a sweep as ``sweep_summary.csv``
    plus one ``point<i>_rep<r>`` subdirectory per report. Returns the paths written."""
    if format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {format!r}")
    dest = _prepare(destination)
    try:
        if isinstance(results, ScenarioReport):
            return _export_one(results, format, dest)
        written = []
        path = dest / "sweep_summary.csv"
        _write_csv(path, SWEEP_COLUMNS, sweep_summary_rows(results))
        written.append(path)
        values = []
        for r in results:
            if r.axis_value not in values:
                values.append(r.axis_value)
        for r in results:
            sub = _prepare(dest / f"point{values.index(r.axis_value):03d}_rep{r.replicate or 0}")
            written += _export_one(r, format, sub)
        return written
    except OSError as exc:
        raise ExportError(str(exc)) from exc
