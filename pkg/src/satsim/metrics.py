"""Concentration statistics over builder attention vectors.

All functions take the builder vector only; the outside option is not a
producer and is excluded by the callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateStateError, DomainError

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


@dataclass(frozen=True)
class CurveData:
    x: np.ndarray
    y: np.ndarray

    @property
    def points(self):
        return list(zip(self.x.tolist(), self.y.tolist()))

    def __len__(self):
        return self.x.size


@dataclass(frozen=True)
class ConcentrationReport:
    gini: float
    top_shares: Dict[float, float]
    median_mean: float
    share_below: Dict[float, float]
    n: int
    total: float

    def as_rows(self):
        """Flat ``(name, value)`` pairs in a fixed order."""
        rows = [("gini", self.gini)]
        rows += [(f"top_share_{f!r}", v) for f, v in sorted(self.top_shares.items())]
        rows.append(("median_mean", self.median_mean))
        rows += [(f"share_below_{t!r}", v) for t, v in sorted(self.share_below.items())]
        rows += [("n", self.n), ("total", self.total)]
        return rows


class AnalyticConcentration(NamedTuple):
    gini: float
    median_mean: float


def _as_values(values) -> np.ndarray:
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise DegenerateStateError("empty vector")
    if np.any(v < 0) or not np.all(np.isfinite(v)):
        raise DegenerateStateError("values must be finite and non-negative")
    return v


def _sorted_positive_total(values):
    v = np.sort(_as_values(values))
    total = float(np.sum(v))
    if not total > 0:
        raise DegenerateStateError("values sum to zero")
    return v, total


def gini(values) -> float:
    """Sorted-rank Gini: ``2 sum(i x_(i)) / (n sum x) - (n+1)/n`` on ascending order."""
    v, total = _sorted_positive_total(values)
    n = v.size
    ranks = np.arange(1, n + 1, dtype=float)
    g = 2.0 * float(np.dot(ranks, v)) / (n * total) - (n + 1.0) / n
    # exact equality gives 0 up to rounding
    return max(g, 0.0)


def top_share(values, fraction: float) -> float:
    """Share of the total held by the ``ceil(fraction * n)`` largest entries."""
    if not 0 < fraction <= 1:
        raise DomainError(f"fraction must lie in (0, 1], got {fraction}")
    v, total = _sorted_positive_total(values)
    m = max(1, math.ceil(fraction * v.size - 1e-9))
    return min(float(np.sum(v[-m:])) / total, 1.0)


def median_mean_ratio(values) -> float:
    v = np.sort(_as_values(values))
    mean = float(np.mean(v))
    if not mean > 0:
        raise DegenerateStateError("mean is zero")
    return float(v[(v.size - 1) // 2]) / mean


def share_below(values, threshold: float) -> float:
    v = _as_values(values)
    return float(np.count_nonzero(v < threshold)) / v.size


def concentration_report(values, top_fractions: Sequence[float] = (0.01, 0.1),
                         thresholds: Sequence[float] = (100.0,)) -> ConcentrationReport:
    v = _as_values(values)
    return ConcentrationReport(
        gini=gini(v),
        top_shares={float(f): top_share(v, f) for f in top_fractions},
        median_mean=median_mean_ratio(v),
        share_below={float(t): share_below(v, t) for t in thresholds},
        n=int(v.size),
        total=float(np.sum(v)),
    )


def lorenz_curve(values, npoints: int) -> CurveData:
    """Cumulative value share against cumulative population share.

    Sampled at ``npoints + 1`` evenly spaced population quantiles, endpoints
    included, by linear interpolation of the exact step-wise curve.
    """
    if npoints < 1:
        raise DomainError("npoints must be >= 1")
    v, total = _sorted_positive_total(values)
    n = v.size
    exact_x = np.arange(n + 1) / n
    exact_y = np.concatenate(([0.0], np.cumsum(v) / total))
    exact_y[-1] = 1.0
    x = np.linspace(0.0, 1.0, npoints + 1)
    y = np.interp(x, exact_x, exact_y)
    return CurveData(x, y)


def lorenz_gini(curve: CurveData) -> float:
    """``1 - 2 * area`` under a Lorenz curve, trapezoidal rule."""
    return 1.0 - 2.0 * float(_trapezoid(curve.y, curve.x))


def rank_distribution(values) -> CurveData:
    """``(rank, value)`` with rank 1 the largest; zeros are kept."""
    v = _as_values(values)
    y = np.sort(v)[::-1]
    return CurveData(np.arange(1, y.size + 1, dtype=float), y)


def estimate_tail_exponent(values, top_fraction: float) -> float:
    """Least-squares slope of ``log value`` against ``log rank`` over the top ranks."""
    if not 0 < top_fraction <= 1:
        raise DomainError(f"top_fraction must lie in (0, 1], got {top_fraction}")
    curve = rank_distribution(values)
    m = max(1, math.ceil(top_fraction * len(curve) - 1e-9))
    r, y = curve.x[:m], curve.y[:m]
    keep = y > 0
    if np.count_nonzero(keep) < 10:
        raise DegenerateStateError("need at least 10 positive values in the top fraction")
    slope, _ = np.polyfit(np.log(r[keep]), np.log(y[keep]), 1)
    return float(slope)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def analytic_concentration(beta: float, sigma: float, alpha: float) -> AnalyticConcentration:
    """Closed-form Gini and median/mean of a log-normal with scale ``beta sigma / (1 - alpha)``."""
    if not alpha < 1:
        raise DomainError(f"alpha must be < 1, got {alpha}")
    if sigma < 0 or not beta > 0:
        raise DomainError("need sigma >= 0 and beta > 0")
    s = beta * sigma / (1.0 - alpha)
    return AnalyticConcentration(2.0 * normal_cdf(s / math.sqrt(2.0)) - 1.0, math.exp(-0.5 * s * s))
