"""One-axis parameter sweeps with replicate seeds.

Replicate ``r`` uses the base seed for ``r = 0`` and a derived seed otherwise.
Seeds never depend on the position of a value in the sweep, so every axis
value sees the same quality draw and reordering the values only reorders the
reports.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .config import ScenarioConfig, resolve_path
from .errors import ConfigError, SatsimError
from .sampling import derive_seed
from .scenarios import ScenarioReport, run_scenario


@dataclass(frozen=True)
class SweepSpec:
    base: ScenarioConfig
    axis: str
    values: Sequence[float]
    seeds_per_point: int = 1
    scale_steps_with_delta: bool = False

    def __post_init__(self):
        if len(self.values) == 0:
            raise ConfigError("sweep needs at least one value")
        if self.seeds_per_point < 1:
            raise ConfigError("seeds_per_point must be >= 1")
        if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in self.values):
            raise ConfigError("sweep values must be numbers")
        check_axis(self.base, self.axis)

    def replicate_seed(self, replicate: int) -> int:
        base = self.base.seed if self.base.seed is not None else 0
        return base if replicate == 0 else derive_seed(base, "replicate", replicate)

    def point_config(self, value, replicate: int) -> ScenarioConfig:
        cfg = self.base.with_value(self.axis, value)
        if self.scale_steps_with_delta:
            # keep the total reallocated mass equal to the base run's
            d0, t0 = self.base.dynamics.delta, self.base.dynamics.steps
            cfg = cfg.with_value("dynamics.steps", int(round(t0 * d0 / cfg.dynamics.delta)))
        if replicate or self.base.seed is not None:
            cfg = cfg.with_value("seed", self.replicate_seed(replicate))
        return cfg


def sweep_threads() -> int:
    env = os.environ.get("SATSIM_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"SATSIM_THREADS must be an integer, got {env!r}") from None
        return max(1, n)
    return os.cpu_count() or 1


def check_axis(base: ScenarioConfig, axis: str) -> None:
    """Raise ``ConfigError`` unless ``axis`` names a numeric field."""
    section, leaf = resolve_path(axis)
    current = base.to_dict() if section is None else base.to_dict().get(section, {})
    v = current.get(leaf)
    if v is not None and (isinstance(v, bool) or not isinstance(v, (int, float))):
        raise ConfigError(f"parameter {axis!r} is not numeric")


def _run_point(spec: SweepSpec, value, replicate: int) -> ScenarioReport:
    try:
        cfg = spec.point_config(value, replicate)
    except SatsimError as exc:
        report = ScenarioReport(config=spec.base, error=f"{type(exc).__name__}: {exc}")
        report.axis_value, report.replicate = value, replicate
        return report
    try:
        report = run_scenario(cfg)
    except SatsimError as exc:
        report = ScenarioReport(config=cfg, error=f"{type(exc).__name__}: {exc}")
    report.axis_value = value
    report.replicate = replicate
    return report


def run_sweep(spec: SweepSpec, max_workers: Optional[int] = None) -> List[ScenarioReport]:
    """One report per ``(value, replicate)``, ordered by value then replicate.

    Points that fail keep their place in the list with ``error`` set.
    """
    jobs = [(v, r) for v in spec.values for r in range(spec.seeds_per_point)]
    workers = min(max_workers or sweep_threads(), len(jobs))
    if workers <= 1:
        return [_run_point(spec, v, r) for v, r in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: _run_point(spec, *job), jobs))
