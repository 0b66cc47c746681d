"""Reinforcement reallocation of attention.

Each step a fraction ``delta`` of the budget is reassigned. Unit ``i`` (index 0
is the outside option) attracts it with probability proportional to
``x_i**alpha * exp(beta q_i)``. The deterministic path applies the expected
update; the stochastic path draws the reassigned units from a multinomial.

Convention: ``0**alpha`` is 0 for ``alpha > 0`` and 1 for ``alpha == 0``, so a
stock that reaches zero under reinforcement stays there.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.special import logsumexp

from ._bisect import bisect_decreasing
from .errors import (ConfigError, DegenerateStateError, DomainError,
                     SimulationTimeout, UnsupportedRegimeError)
from .model import AttentionState, OutsideOption, log_weights

MAX_FIXED_POINT_ALPHA = 0.95
MAX_SNAPSHOTS = 200


@dataclass(frozen=True)
class DynamicsConfig:
    alpha: float = 1.0
    beta: float = 1.0
    delta: float = 0.1
    steps: int = 500
    mode: str = "deterministic"
    convergence_tol: float = 1e-10
    thin: Optional[int] = None

    def __post_init__(self):
        if not (self.alpha >= 0 and math.isfinite(self.alpha)):
            raise ConfigError(f"alpha must be >= 0, got {self.alpha}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ConfigError(f"beta must be > 0, got {self.beta}")
        if not 0 < self.delta <= 1:
            raise ConfigError(f"delta must lie in (0, 1], got {self.delta}")
        if self.steps < 0 or int(self.steps) != self.steps:
            raise ConfigError(f"steps must be a non-negative integer, got {self.steps}")
        if self.mode not in ("deterministic", "stochastic"):
            raise ConfigError(f"mode must be deterministic or stochastic, got {self.mode!r}")
        if not self.convergence_tol > 0:
            raise ConfigError("convergence_tol must be positive")
        if self.thin is not None and self.thin < 1:
            raise ConfigError("thin must be >= 1")

    @property
    def snapshot_every(self) -> int:
        return self.thin or max(1, math.ceil(self.steps / MAX_SNAPSHOTS))


@dataclass
class Trajectory:
    states: List[AttentionState]
    steps: List[int]
    final: AttentionState
    converged_at: Optional[int] = None
    steps_run: int = 0
    max_conservation_error: float = 0.0  # relative to A
    outside_absorbed: bool = False
    rng_seed: Optional[int] = field(default=None)


def _weights_log(x: np.ndarray, lw: np.ndarray, alpha: float) -> np.ndarray:
    if alpha == 0:
        return lw
    with np.errstate(divide="ignore"):
        return alpha * np.log(x) + lw


def _probabilities(x: np.ndarray, lw: np.ndarray, alpha: float) -> np.ndarray:
    logits = _weights_log(x, lw, alpha)
    top = np.max(logits)
    if top == -np.inf:
        raise DegenerateStateError("every reallocation weight is zero")
    p = np.exp(logits - logsumexp(logits))
    return p / np.sum(p)


def reallocation_probabilities(state: AttentionState, qualities, alpha: float, beta: float,
                               outside: OutsideOption,
                               reference_quality: Optional[float] = None) -> np.ndarray:
    """Probabilities over ``(outside, builder_1..builder_B)`` that sum to one."""
    if alpha < 0 or not beta > 0:
        raise ConfigError("need alpha >= 0 and beta > 0")
    lw = log_weights(qualities, outside, beta, reference_quality)
    if lw.size != state.B + 1:
        raise ConfigError(f"state has {state.B} builders but {lw.size - 1} qualities")
    return _probabilities(state.vector(), lw, alpha)


def mean_field_step(state: AttentionState, probs: np.ndarray, delta: float,
                    A: Optional[float] = None) -> AttentionState:
    """Expected update ``x' = (1-delta) x + delta A p``."""
    A = state.A if A is None else A
    v = (1.0 - delta) * state.vector() + delta * A * np.asarray(probs, dtype=float)
    return AttentionState.from_vector(v, A)


def _loop(initial: AttentionState, lw: np.ndarray, config: DynamicsConfig, advance,
          deadline: Optional[float], stop_on_convergence: bool) -> Trajectory:
    A = initial.A
    x = initial.vector()
    every = config.snapshot_every
    states, steps = [initial], [0]
    converged_at = None
    worst = abs(float(np.sum(x)) - A)
    t = 0
    for t in range(1, config.steps + 1):
        p = _probabilities(x, lw, config.alpha)
        new = advance(x, p)
        change = float(np.max(np.abs(new - x)))
        x = new
        worst = max(worst, abs(float(np.sum(x)) - A))
        if t % every == 0:
            states.append(AttentionState.from_vector(x, A))
            steps.append(t)
        if stop_on_convergence and change < config.convergence_tol * A:
            converged_at = t
            break
        if deadline is not None and time.monotonic() > deadline:
            raise SimulationTimeout(f"runtime budget exceeded after {t} steps")
    final = AttentionState.from_vector(x, A)
    if steps[-1] != t:
        states.append(final)
        steps.append(t)
    return Trajectory(states=states, steps=steps, final=final, converged_at=converged_at,
                      steps_run=t, max_conservation_error=worst / A,
                      outside_absorbed=bool(x[0] == 0 and config.alpha > 0 and lw[0] > -np.inf))


def run_deterministic(initial: AttentionState, qualities, config: DynamicsConfig,
                      outside: OutsideOption, reference_quality: Optional[float] = None,
                      deadline: Optional[float] = None) -> Trajectory:
    """Iterate the mean-field update ``config.steps`` times.

    Stops early once the largest per-entry change falls below
    ``convergence_tol * A`` and records that step in ``converged_at``.
    ``deadline`` is a ``time.monotonic()`` value.
    """
    lw = log_weights(qualities, outside, config.beta, reference_quality)
    if lw.size != initial.B + 1:
        raise ConfigError(f"state has {initial.B} builders but {lw.size - 1} qualities")
    d, A = config.delta, initial.A

    def advance(x, p):
        return (1.0 - d) * x + d * A * p

    return _loop(initial, lw, config, advance, deadline, stop_on_convergence=True)


def run_stochastic(initial: AttentionState, qualities, config: DynamicsConfig,
                   seed: int, outside: OutsideOption,
                   reference_quality: Optional[float] = None,
                   deadline: Optional[float] = None) -> Trajectory:
    """Finite-population version of the update.

    Every stock first loses the fraction ``delta``; then ``U = round(delta A)``
    units are drawn multinomially from the reallocation probabilities, each
    carrying mass ``delta A / U`` so the budget is conserved and the expected
    step equals the mean-field one. Runs all ``config.steps`` steps.
    """
    lw = log_weights(qualities, outside, config.beta, reference_quality)
    if lw.size != initial.B + 1:
        raise ConfigError(f"state has {initial.B} builders but {lw.size - 1} qualities")
    d, A = config.delta, initial.A
    units = int(round(d * A))
    if units < 1:
        raise ConfigError(f"delta*A = {d * A} is below one unit")
    unit_mass = d * A / units
    rng = np.random.Generator(np.random.PCG64(seed))

    def advance(x, p):
        counts = rng.multinomial(units, p)
        return (1.0 - d) * x + unit_mass * counts

    traj = _loop(initial, lw, config, advance, deadline, stop_on_convergence=False)
    traj.rng_seed = seed
    return traj


def effective_sensitivity(beta: float, alpha: float) -> float:
    """Quality sensitivity of the fixed point, ``beta / (1 - alpha)``."""
    if not alpha < 1:
        raise DomainError(f"alpha must be < 1, got {alpha}")
    return beta / (1.0 - alpha)


def solve_fixed_point(qualities, outside: OutsideOption, alpha: float, beta: float, A: float,
                      reference_quality: Optional[float] = None) -> AttentionState:
    """Interior rest point of the mean-field update for ``alpha < 1``.

    Stocks take the form ``x_i = (A w_i / Z)**(1/(1-alpha))``; the normalizer
    ``Z`` is found by bisection on ``log Z`` so that the stocks sum to ``A``.
    """
    if not 0 <= alpha <= MAX_FIXED_POINT_ALPHA:
        raise UnsupportedRegimeError(
            f"fixed-point solver supports 0 <= alpha <= {MAX_FIXED_POINT_ALPHA}, got {alpha}")
    if not A > 0:
        raise ConfigError("A must be positive")
    lw = log_weights(qualities, outside, beta, reference_quality)
    active = lw > -np.inf
    if not np.any(active):
        raise DegenerateStateError("no option has positive weight")
    r = 1.0 / (1.0 - alpha)
    log_a = math.log(A)
    u = (log_a + lw[active]) * r
    n = int(active.sum())

    # log of sum_i x_i as a function of log Z, minus log A; strictly decreasing
    def excess(log_z):
        return float(logsumexp(u - r * log_z)) - log_a

    # excess(c) = 0 lies where c*r is within [max(u), max(u) + log n] - log A
    top = float(np.max(u))
    lo = (top - log_a) / r - 1.0
    hi = (top + math.log(n) - log_a) / r + 1.0
    log_z = bisect_decreasing(excess, lo, hi, rtol=1e-16)
    x = np.zeros_like(lw)
    x[active] = np.exp(u - r * log_z)
    return AttentionState.from_vector(x, A)
