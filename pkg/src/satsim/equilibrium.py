"""Free entry, welfare and attention-growth paths for the symmetric market.

``B*`` is treated as a continuous quantity throughout (``B_star_floor`` is
there for anyone who needs a head count). Welfare uses ``v(s) = log s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence, Union

import numpy as np

from ._bisect import bisect_decreasing
from .errors import ConfigError, DomainError
from .model import builder_profit, symmetric_average


@dataclass(frozen=True)
class EquilibriumResult:
    B_star: float
    B_star_floor: int
    interior: bool
    attention_per_builder: float
    profit_at_eq: float
    outside_absorption: float


@dataclass(frozen=True)
class WelfareResult:
    B_social: float
    W_at_social: float
    W_at_freeentry: Optional[float] = None
    excess_entry: Optional[bool] = None


@dataclass(frozen=True)
class GrowthPath:
    """Free-entry equilibrium tracked along a time grid.

    ``s_path`` holds ``nan`` wherever no builder enters.
    """

    times: np.ndarray
    A_path: np.ndarray
    k_path: np.ndarray
    B_path: np.ndarray
    s_path: np.ndarray


class ComparativeStatics(NamedTuple):
    dB_dA: float
    dB_dp: float
    dB_dk: float
    dB_dz: float


def _check_positive(**kw):
    for name, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise ConfigError(f"{name} must be positive and finite, got {v}")


def entry_viable(p: float, A: float, k: float, z: float) -> bool:
    return k < p * A / z


def equilibrium_entry(p: float, A: float, k: float, z: float) -> EquilibriumResult:
    """Zero-profit builder count ``B* = max(pA/k - z, 0)`` and what it implies."""
    _check_positive(p=p, A=A, k=k, z=z)
    B_star = max(p * A / k - z, 0.0)
    interior = B_star > 0
    if interior:
        # exact zero-profit value rather than p*A/(B*+z), which rounds
        s_bar = zero_profit_attention(k, p)
    else:
        s_bar = symmetric_average(A, 0.0, z)
    return EquilibriumResult(
        B_star=B_star,
        B_star_floor=int(math.floor(B_star)),
        interior=interior,
        attention_per_builder=s_bar,
        profit_at_eq=builder_profit(p, s_bar, k),
        outside_absorption=outside_absorption(B_star, z),
    )


def zero_profit_attention(k: float, p: float) -> float:
    return k / p


def comparative_statics(p: float, A: float, k: float, z: float) -> ComparativeStatics:
    """Partial derivatives of the interior ``B*`` with respect to ``A, p, k, z``."""
    _check_positive(p=p, A=A, k=k, z=z)
    if not entry_viable(p, A, k, z):
        raise DomainError(f"no interior equilibrium: k={k} >= pA/z={p * A / z}")
    return ComparativeStatics(p / k, A / k, -p * A / k**2, -1.0)


def outside_absorption(B: float, z: float) -> float:
    """Fraction of attention the outside option keeps, ``z/(B+z)``."""
    return z / (B + z)


def welfare(B, A: float, z: float):
    """``W(B) = B log(A/(B+z))``; zero at ``B = 0``."""
    B = np.asarray(B, dtype=float)
    w = B * (math.log(A) - np.log(B + z))
    return float(w) if w.ndim == 0 else w


def welfare_marginal(B, A: float, z: float):
    B = np.asarray(B, dtype=float)
    d = math.log(A) - np.log(B + z) - B / (B + z)
    return float(d) if d.ndim == 0 else d


def welfare_optimum(A: float, z: float, p: Optional[float] = None,
                    k: Optional[float] = None) -> WelfareResult:
    """Welfare-maximizing builder count by bisection on ``W'``.

    ``W'`` is strictly decreasing, so the sign change on ``[1e-9, 10A]`` is
    unique. With ``p`` and ``k`` the free-entry count is compared against it.
    """
    _check_positive(A=A, z=z)
    if A <= z:
        B_social = 0.0
    else:
        B_social = bisect_decreasing(lambda b: welfare_marginal(b, A, z), 1e-9, 10.0 * A, rtol=1e-15)
    W_social = welfare(B_social, A, z)
    if p is None or k is None:
        return WelfareResult(B_social, W_social)
    B_star = equilibrium_entry(p, A, k, z).B_star
    return WelfareResult(B_social, W_social, welfare(B_star, A, z), B_star > B_social)


TimeFunction = Union[Callable[[np.ndarray], np.ndarray], Sequence[float], np.ndarray]


def _sample(f: TimeFunction, times: np.ndarray, name: str) -> np.ndarray:
    vals = np.asarray(f(times) if callable(f) else f, dtype=float)
    vals = np.broadcast_to(vals, times.shape).astype(float)
    if not np.all(vals > 0):
        raise ConfigError(f"{name}(t) must be positive on every sample time")
    return vals


def growth_trajectory(A0: float, p: float, z: float, g: TimeFunction, k: TimeFunction,
                      times: Sequence[float]) -> GrowthPath:
    """Equilibrium entry when attention grows as ``A0 g(t)`` and costs move as ``k(t)``.

    ``g`` and ``k`` are callables of the time array or values already sampled
    on ``times``.
    """
    _check_positive(A0=A0, p=p, z=z)
    t = np.asarray(times, dtype=float)
    g_vals = _sample(g, t, "g")
    k_vals = _sample(k, t, "k")
    A_path = A0 * g_vals
    B_path = np.maximum(p * A_path / k_vals - z, 0.0)
    s_path = np.where(B_path > 0, k_vals / p, np.nan)
    return GrowthPath(times=t, A_path=A_path, k_path=k_vals, B_path=B_path, s_path=s_path)
