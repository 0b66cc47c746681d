"""Primitive types and single-period formulas of the attention market.

Attention is a conserved budget ``A = M * a`` split between ``B`` builders and
an outside option (index 0 wherever a full vector is used). All exponential
sums go through log-sum-exp so that ``beta * q`` in the hundreds is harmless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.special import logsumexp

from .errors import ConfigError, NumericalRangeError

# exp(x) overflows double precision above this
_LOG_MAX = math.log(np.finfo(float).max)

CONSERVATION_RTOL = 1e-12

DISTRIBUTIONS = ("constant", "normal", "uniform", "lognormal")


@dataclass(frozen=True)
class MarketParams:
    """Supply and demand primitives.

    Parameters
    ----------
    M : int
        Number of consumers.
    a : float
        Attention budget per consumer per period.
    B : int
        Number of builders.
    p : float
        Monetization rate (value per unit of attention).
    k : float
        Fixed entry cost. Marginal cost is identically zero.
    N : int, optional
        Total population. Informational only; no formula uses it.
    """

    M: float
    a: float
    B: int
    p: float = 1.0
    k: float = 1.0
    N: Optional[int] = None

    def __post_init__(self):
        if not self.M >= 1:
            raise ConfigError(f"M must be >= 1, got {self.M}")
        for name in ("a", "p", "k"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ConfigError(f"{name} must be positive and finite, got {v}")
        if self.B < 0 or int(self.B) != self.B:
            raise ConfigError(f"B must be a non-negative integer, got {self.B}")
        if self.N is not None and (self.M > self.N or self.B > self.N):
            raise ConfigError(f"M and B cannot exceed N={self.N}")
        if not math.isfinite(self.A):
            raise ConfigError("aggregate attention M*a is not finite")

    @property
    def A(self) -> float:
        return aggregate_attention(self.M, self.a)


@dataclass(frozen=True)
class OutsideOption:
    """The do-nothing alternative, given as a weight ``z``, a quality ``q0``, or both.

    ``z`` is the outside weight relative to a builder of the reference quality.
    It sets the symmetric split ``A z/(B+z)`` used for starting states and the
    free-entry formulas. The logit weight in allocation and reallocation is
    ``exp(beta q0)`` when ``q0`` is given, else ``z exp(beta q_ref)``.
    ``q0 = -inf`` means there is no outside option at all.
    """

    z: Optional[float] = None
    q0: Optional[float] = None

    def __post_init__(self):
        if self.z is None and self.q0 is None:
            raise ConfigError("outside option needs z or q0")
        if self.z is not None and not (self.z > 0 and math.isfinite(self.z)):
            raise ConfigError(f"z must be positive and finite, got {self.z}")
        if self.q0 is not None and (math.isnan(self.q0) or self.q0 == math.inf):
            raise ConfigError(f"q0 must be finite or -inf, got {self.q0}")

    @classmethod
    def none(cls) -> "OutsideOption":
        return cls(q0=-math.inf)

    @property
    def absent(self) -> bool:
        return self.q0 == -math.inf

    def log_weight(self, beta: float, reference_quality: float = 0.0) -> float:
        if self.q0 is None:
            return math.log(self.z) + beta * reference_quality
        return beta * self.q0 if self.q0 != -math.inf else -math.inf

    def weight(self, beta: float, reference_quality: float = 0.0) -> float:
        """Effective weight relative to a builder of ``reference_quality``."""
        if self.z is not None:
            return self.z
        if self.q0 == -math.inf:
            return 0.0
        return outside_weight(self.q0, reference_quality, beta)


@dataclass(frozen=True)
class QualityDistribution:
    kind: str
    value: float = 0.0
    mu: float = 0.0
    sigma: float = 1.0
    lo: float = -1.0
    hi: float = 1.0

    def __post_init__(self):
        if self.kind not in DISTRIBUTIONS:
            raise ConfigError(f"unknown quality distribution {self.kind!r}; expected one of {DISTRIBUTIONS}")
        if self.kind in ("normal", "lognormal") and not self.sigma >= 0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")
        if self.kind == "uniform" and not self.lo < self.hi:
            raise ConfigError(f"uniform requires lo < hi, got [{self.lo}, {self.hi}]")
        for v in (self.value, self.mu, self.sigma, self.lo, self.hi):
            if not math.isfinite(v):
                raise ConfigError("distribution parameters must be finite")

    @classmethod
    def constant(cls, value: float) -> "QualityDistribution":
        return cls("constant", value=value)

    @classmethod
    def normal(cls, mu: float = 0.0, sigma: float = 1.0) -> "QualityDistribution":
        return cls("normal", mu=mu, sigma=sigma)

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "QualityDistribution":
        return cls("uniform", lo=lo, hi=hi)

    @classmethod
    def lognormal(cls, mu: float = 0.0, sigma: float = 1.0) -> "QualityDistribution":
        return cls("lognormal", mu=mu, sigma=sigma)

    @property
    def location(self) -> float:
        """Reference quality against which an outside weight ``z`` is quoted."""
        return {
            "constant": self.value,
            "normal": self.mu,
            "uniform": 0.5 * (self.lo + self.hi),
            "lognormal": math.exp(self.mu),
        }[self.kind]

    def to_dict(self) -> dict:
        keys = {
            "constant": ("value",),
            "normal": ("mu", "sigma"),
            "uniform": ("lo", "hi"),
            "lognormal": ("mu", "sigma"),
        }[self.kind]
        return {"distribution": self.kind, **{k: getattr(self, k) for k in keys}}


@dataclass(frozen=True)
class QualityModel:
    distribution: QualityDistribution
    realized: np.ndarray
    outside_quality: float = 0.0

    def __post_init__(self):
        q = np.asarray(self.realized, dtype=float)
        if q.ndim != 1:
            raise ConfigError("realized qualities must be a vector")
        if not np.all(np.isfinite(q)):
            raise ConfigError("realized qualities must be finite")
        if self.distribution.kind == "constant" and np.any(q != self.distribution.value):
            raise ConfigError("constant distribution with non-constant draws")
        object.__setattr__(self, "realized", q)

    @property
    def B(self) -> int:
        return self.realized.size

    @property
    def reference_quality(self) -> float:
        return self.distribution.location


@dataclass
class AttentionState:
    """Attention stocks ``(x0, x_1..x_B)``; they always sum to ``A``."""

    x0: float
    x: np.ndarray
    A: float

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.x0 = float(self.x0)
        if not self.A > 0:
            raise ConfigError(f"A must be positive, got {self.A}")
        if self.x0 < 0 or np.any(self.x < 0):
            raise ConfigError("attention stocks must be non-negative")
        total = self.x0 + float(np.sum(self.x))
        if abs(total - self.A) > CONSERVATION_RTOL * self.A:
            raise ConfigError(f"stocks sum to {total!r}, expected A={self.A!r}")

    @classmethod
    def from_vector(cls, v: np.ndarray, A: float) -> "AttentionState":
        v = np.asarray(v, dtype=float)
        return cls(v[0], v[1:].copy(), A)

    @classmethod
    def uniform(cls, A: float, B: int, z: float) -> "AttentionState":
        """Symmetric start: ``A/(B+z)`` per builder, ``zA/(B+z)`` outside."""
        each = A / (B + z)
        return cls(z * each, np.full(B, each), A)

    @property
    def B(self) -> int:
        return self.x.size

    def vector(self) -> np.ndarray:
        return np.concatenate(([self.x0], self.x))

    def total(self) -> float:
        return self.x0 + float(np.sum(self.x))


@dataclass(frozen=True)
class AllocationResult:
    shares: np.ndarray
    outside_share: float
    log_normalizer: float

    @property
    def normalizer(self) -> float:
        """``sum_j exp(beta q_j) + outside weight``; may be ``inf`` where only the log is finite."""
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_normalizer))

    @property
    def total(self) -> float:
        return self.outside_share + float(np.sum(self.shares))


def aggregate_attention(M: float, a: float) -> float:
    return M * a


def _checked_exp(x: float, what: str) -> float:
    if x > _LOG_MAX:
        raise NumericalRangeError(f"{what}: exp({x}) overflows")
    return math.exp(x)


def outside_weight(q0: float, q: float, beta: float) -> float:
    """``exp(beta * (q0 - q))``, the outside option's weight relative to quality ``q``."""
    if not beta > 0:
        raise ConfigError("beta must be positive")
    return _checked_exp(beta * (q0 - q), "outside_weight")


def log_weights(qualities, outside: OutsideOption, beta: float,
                reference_quality: Optional[float] = None) -> np.ndarray:
    """Length ``B+1`` vector of log-weights, outside option first."""
    if isinstance(qualities, QualityModel):
        if reference_quality is None:
            reference_quality = qualities.reference_quality
        q = qualities.realized
    else:
        q = np.asarray(qualities, dtype=float)
    if reference_quality is None:
        reference_quality = 0.0
    if not np.all(np.isfinite(q)):
        raise ConfigError("qualities must be finite")
    out = np.empty(q.size + 1)
    out[0] = outside.log_weight(beta, reference_quality)
    out[1:] = beta * q
    return out


def static_allocation(qualities: Union[QualityModel, Sequence[float], np.ndarray],
                      outside: OutsideOption, beta: float, A: float,
                      reference_quality: Optional[float] = None) -> AllocationResult:
    """Logit split of ``A`` across builders and the outside option.

    ``s_i = A exp(beta q_i) / (sum_j exp(beta q_j) + w0)`` with the outside
    weight ``w0`` from ``outside``. The outside share is ``A - sum(s)`` so the
    result conserves ``A`` to rounding.
    """
    if not beta > 0:
        raise ConfigError("beta must be positive")
    if not A > 0:
        raise ConfigError("A must be positive")
    lw = log_weights(qualities, outside, beta, reference_quality)
    if lw.size == 1 and lw[0] == -np.inf:
        raise ConfigError("no builders and no outside option")
    log_z = float(logsumexp(lw))
    shares = A * np.exp(lw[1:] - log_z)
    outside_share = max(A - float(np.sum(shares)), 0.0) if lw[0] > -np.inf else 0.0
    return AllocationResult(shares=shares, outside_share=outside_share, log_normalizer=log_z)


def symmetric_average(A: float, B: float, z: float) -> float:
    """Average attention per builder under identical qualities, ``A/(B+z)``."""
    return A / (B + z)


def builder_profit(p: float, s, k: float):
    return p * s - k


def attention_ratio(q_i: float, q_j: float, beta: float) -> float:
    """``s_i / s_j`` under logit allocation: ``exp(beta (q_i - q_j))``."""
    if not beta > 0:
        raise ConfigError("beta must be positive")
    return _checked_exp(beta * (q_i - q_j), "attention_ratio")


def entry_elasticity(B: float, z: float) -> float:
    """Elasticity of average attention with respect to ``B``: ``-B/(B+z)``."""
    return -B / (B + z)
