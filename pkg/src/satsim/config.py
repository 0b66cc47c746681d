"""Scenario configuration: parsing, validation and the built-in scenarios.

A config is one YAML (or JSON) document::

    name: my-run            # optional
    market:   {M: 10000, a: 1, B: 1000, p: 1, k: 1}
    outside:  {z: 100, q0: 0}   # z: symmetric weight, q0: logit weight
    quality:  {distribution: normal, mu: 0, sigma: 1}
    dynamics: {alpha: 1.0, beta: 1, delta: 0.1, steps: 500, mode: deterministic}
    metrics:  {top_fractions: [0.01, 0.1], thresholds: [100], lorenz_points: 100}
    seed: 2025
    runtime_budget_s: 600   # optional
    dilution: {B_list: [100, 500]}   # optional; makes the run analytic

Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import copy
import dataclasses
import io
import math
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import yaml

from .dynamics import DynamicsConfig
from .errors import ConfigError, UnknownKeyError
from .model import MarketParams, OutsideOption, QualityDistribution
from .sampling import _check_seed

_SECTIONS = {
    "market": {"M", "a", "B", "p", "k", "N"},
    "outside": {"z", "q0"},
    "quality": {"distribution", "value", "mu", "sigma", "lo", "hi"},
    "dynamics": {"alpha", "beta", "delta", "steps", "mode", "convergence_tol", "thin"},
    "metrics": {"top_fractions", "thresholds", "lorenz_points"},
    "dilution": {"B_list"},
}
_TOP = {"name", "seed", "runtime_budget_s"} | set(_SECTIONS)
_REQUIRED = ("market", "outside", "quality")


@dataclass(frozen=True)
class MetricsSpec:
    top_fractions: Tuple[float, ...] = (0.01, 0.1)
    thresholds: Tuple[float, ...] = (100.0,)
    lorenz_points: int = 100

    def __post_init__(self):
        if not self.top_fractions or any(not 0 < f <= 1 for f in self.top_fractions):
            raise ConfigError("top_fractions must be non-empty and lie in (0, 1]")
        if any(not math.isfinite(t) for t in self.thresholds):
            raise ConfigError("thresholds must be finite")
        if int(self.lorenz_points) != self.lorenz_points or self.lorenz_points < 1:
            raise ConfigError("lorenz_points must be a positive integer")


@dataclass(frozen=True)
class ScenarioConfig:
    market: MarketParams
    outside: OutsideOption
    quality: QualityDistribution
    dynamics: DynamicsConfig = field(default_factory=DynamicsConfig)
    seed: Optional[int] = None
    metrics: MetricsSpec = field(default_factory=MetricsSpec)
    name: Optional[str] = None
    runtime_budget_s: Optional[float] = None
    dilution_B: Optional[Tuple[float, ...]] = None
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        needs_seed = self.quality.kind != "constant" or self.dynamics.mode == "stochastic"
        if self.seed is None and needs_seed and self.dilution_B is None:
            raise ConfigError("seed is required for random qualities or stochastic dynamics")
        if self.seed is not None:
            _check_seed(self.seed)
        if self.runtime_budget_s is not None and not self.runtime_budget_s > 0:
            raise ConfigError("runtime_budget_s must be positive")

    @property
    def is_dilution(self) -> bool:
        return self.dilution_B is not None

    def to_dict(self) -> dict:
        m = self.market
        market = {"M": m.M, "a": m.a, "B": m.B, "p": m.p, "k": m.k}
        if m.N is not None:
            market["N"] = m.N
        outside = {key: v for key, v in (("z", self.outside.z), ("q0", self.outside.q0)) if v is not None}
        d = self.dynamics
        dynamics = {"alpha": d.alpha, "beta": d.beta, "delta": d.delta, "steps": d.steps,
                    "mode": d.mode, "convergence_tol": d.convergence_tol}
        if d.thin is not None:
            dynamics["thin"] = d.thin
        out = {}
        if self.name is not None:
            out["name"] = self.name
        out.update(market=market, outside=outside, quality=self.quality.to_dict(), dynamics=dynamics,
                   metrics={"top_fractions": list(self.metrics.top_fractions),
                            "thresholds": list(self.metrics.thresholds),
                            "lorenz_points": self.metrics.lorenz_points})
        if self.seed is not None:
            out["seed"] = self.seed
        if self.runtime_budget_s is not None:
            out["runtime_budget_s"] = self.runtime_budget_s
        if self.dilution_B is not None:
            out["dilution"] = {"B_list": list(self.dilution_B)}
        return out

    def with_value(self, path: str, value) -> "ScenarioConfig":
        """Copy with one numeric field replaced, e.g. ``with_value("dynamics.alpha", 0.5)``."""
        section, leaf = resolve_path(path)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"parameter {path!r} must be set to a number, got {value!r}")
        d = self.to_dict()
        node = d if section is None else d.setdefault(section, {})
        node[leaf] = value
        return config_from_dict(d)


_NON_NUMERIC = {"dynamics.mode", "quality.distribution"}


def resolve_path(path: str):
    """Split a numeric parameter path into ``(section or None, key)``."""
    parts = path.split(".")
    if len(parts) == 1 and parts[0] in ("seed", "runtime_budget_s"):
        return None, parts[0]
    if len(parts) == 2 and parts[1] in _SECTIONS.get(parts[0], ()) \
            and parts[0] != "dilution" and path not in _NON_NUMERIC:
        return parts[0], parts[1]
    raise ConfigError(f"parameter path {path!r} does not resolve to a numeric field")


def _num(section: str, key: str, v, integer: bool = False):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        # YAML 1.1 reads 3.8e10 without a dot as a string
        try:
            v = float(v)
        except (TypeError, ValueError):
            raise ConfigError(f"{section}.{key} must be a number, got {v!r}") from None
    if integer:
        if v != int(v):
            raise ConfigError(f"{section}.{key} must be an integer, got {v!r}")
        return int(v)
    return v


def _check_keys(where: str, d, allowed) -> dict:
    if not isinstance(d, dict):
        raise ConfigError(f"{where} must be a mapping")
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise UnknownKeyError(f"unknown key(s) in {where}: {', '.join(map(str, unknown))}")
    return d


def config_from_dict(raw: dict) -> ScenarioConfig:
    raw = _check_keys("config", raw, _TOP)
    for sec in _REQUIRED:
        if sec not in raw:
            raise ConfigError(f"missing section {sec!r}")
    for sec in _SECTIONS:
        if sec in raw:
            _check_keys(sec, raw[sec], _SECTIONS[sec])
    warnings: List[str] = []

    mk = raw["market"]
    for key in ("M", "a", "B"):
        if key not in mk:
            raise ConfigError(f"market.{key} is required")
    market = MarketParams(
        M=_num("market", "M", mk["M"]),
        a=_num("market", "a", mk["a"]),
        B=_num("market", "B", mk["B"], integer=True),
        p=_num("market", "p", mk.get("p", 1.0)),
        k=_num("market", "k", mk.get("k", 1.0)),
        N=_num("market", "N", mk["N"], integer=True) if mk.get("N") is not None else None,
    )

    out = raw["outside"]
    z = _num("outside", "z", out["z"]) if "z" in out else None
    q0 = out.get("q0")
    if q0 is not None:
        q0 = -math.inf if q0 in ("-inf", "-.inf") else _num("outside", "q0", q0)
    if z is not None and q0 is not None:
        warnings.append("outside option gives both z and q0; z sets the starting split and "
                        "equilibrium, q0 the reallocation weight")
    outside = OutsideOption(z=z, q0=q0)

    ql = dict(raw["quality"])
    kind = ql.pop("distribution", None)
    if kind is None:
        raise ConfigError("quality.distribution is required")
    allowed = {"constant": {"value"}, "normal": {"mu", "sigma"}, "uniform": {"lo", "hi"},
               "lognormal": {"mu", "sigma"}}.get(kind)
    if allowed is None:
        raise ConfigError(f"unknown quality distribution {kind!r}")
    _check_keys(f"quality ({kind})", ql, allowed)
    if kind == "uniform" and not {"lo", "hi"} <= set(ql):
        raise ConfigError("uniform quality needs lo and hi")
    quality = QualityDistribution(kind, **{key: _num("quality", key, v) for key, v in ql.items()})

    dy = dict(raw.get("dynamics") or {})
    for key in ("alpha", "beta", "delta", "convergence_tol"):
        if key in dy:
            dy[key] = _num("dynamics", key, dy[key])
    for key in ("steps", "thin"):
        if dy.get(key) is not None:
            dy[key] = _num("dynamics", key, dy[key], integer=True)
    dynamics = DynamicsConfig(**dy)

    me = dict(raw.get("metrics") or {})
    metrics = MetricsSpec(
        top_fractions=tuple(_num("metrics", "top_fractions", f) for f in me.get("top_fractions", (0.01, 0.1))),
        thresholds=tuple(_num("metrics", "thresholds", t) for t in me.get("thresholds", (100.0,))),
        lorenz_points=_num("metrics", "lorenz_points", me.get("lorenz_points", 100), integer=True),
    )

    dilution_B = None
    if "dilution" in raw:
        B_list = raw["dilution"].get("B_list")
        if not B_list:
            raise ConfigError("dilution.B_list must be a non-empty list")
        dilution_B = tuple(_num("dilution", "B_list", b) for b in B_list)
        if any(b < 0 for b in dilution_B):
            raise ConfigError("dilution.B_list entries must be non-negative")

    seed = raw.get("seed")
    if seed is not None:
        seed = _check_seed(_num("config", "seed", seed, integer=True))
    budget = raw.get("runtime_budget_s")
    return ScenarioConfig(
        market=market, outside=outside, quality=quality, dynamics=dynamics, seed=seed,
        metrics=metrics, name=raw.get("name"),
        runtime_budget_s=None if budget is None else _num("config", "runtime_budget_s", budget),
        dilution_B=dilution_B, warnings=tuple(warnings),
    )


BUILTIN = {
    # illustrative reinforcement run; p and k taken from the dilution example
    "illustrative": {
        "name": "illustrative",
        "market": {"M": 10000, "a": 1, "B": 1000, "p": 1, "k": 1},
        "outside": {"z": 100, "q0": 0},
        "quality": {"distribution": "normal", "mu": 0, "sigma": 1},
        "dynamics": {"alpha": 1.0, "beta": 1, "delta": 0.1, "steps": 500, "mode": "deterministic"},
        "metrics": {"top_fractions": [0.01, 0.1], "thresholds": [100], "lorenz_points": 100},
        "seed": 2025,
    },
    "dilution": {
        "name": "dilution",
        "market": {"M": 10000, "a": 1, "B": 9900, "p": 1, "k": 1},
        "outside": {"z": 100},
        "quality": {"distribution": "constant", "value": 0},
        "dilution": {"B_list": [100, 500, 1000, 5000, 9900, 50000]},
    },
    # App Store calibration: A = 3.8e10 annual downloads as M consumers x 1 unit
    "calibration": {
        "name": "calibration",
        "market": {"M": 3.8e10, "a": 1, "B": 800000, "p": 1, "k": 1},
        "outside": {"z": 50000, "q0": 0},
        "quality": {"distribution": "normal", "mu": 0, "sigma": 1.5},
        "dynamics": {"alpha": 0.6, "beta": 1, "delta": 0.1, "steps": 300, "mode": "deterministic"},
        "metrics": {"top_fractions": [0.01, 0.1], "thresholds": [100], "lorenz_points": 1000},
        "seed": 2025,
    },
}


def builtin_config(name: str) -> ScenarioConfig:
    try:
        raw = BUILTIN[name]
    except KeyError:
        raise ConfigError(f"unknown built-in scenario {name!r}; choose from {sorted(BUILTIN)}") from None
    # built-ins set both z and q0 on purpose, so the mixed-form warning is noise here
    return dataclasses.replace(config_from_dict(copy.deepcopy(raw)), warnings=())


def load_config(source) -> ScenarioConfig:
    """Parse a config from a built-in name, text, bytes, a path or a readable stream."""
    if isinstance(source, str) and source in BUILTIN:
        return builtin_config(source)
    if isinstance(source, os.PathLike):
        with open(source, "rb") as fh:
            source = fh.read()
    elif hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        raw = yaml.safe_load(io.StringIO(source))
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping at the top level")
    return config_from_dict(raw)
