"""Seeded random streams and quality draws.

Every random stream is a PCG64 generator keyed by ``(master seed, purpose tag,
index...)`` through ``numpy.random.SeedSequence``, so streams for different
purposes or sweep replicates never share state.
"""

from __future__ import annotations

import zlib

import numpy as np

from .errors import ConfigError
from .model import QualityDistribution, QualityModel

SEED_MAX = 2**64 - 1


def _check_seed(seed) -> int:
    if seed is None or int(seed) != seed or not 0 <= int(seed) <= SEED_MAX:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def derive_seed(master: int, tag: str, *index: int) -> int:
    key = (zlib.crc32(tag.encode()),) + tuple(int(i) for i in index)
    ss = np.random.SeedSequence(_check_seed(master), spawn_key=key)
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


def make_rng(master: int, tag: str, *index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(master, tag, *index)))


def sample_qualities(spec: QualityDistribution, B: int, seed: int,
                     outside_quality: float = 0.0) -> QualityModel:
    """``B`` i.i.d. quality draws; identical ``(spec, B, seed)`` give identical draws."""
    if B < 0:
        raise ConfigError("B must be non-negative")
    rng = make_rng(seed, "quality")
    if spec.kind == "constant":
        q = np.full(B, spec.value)
    elif spec.kind == "normal":
        q = rng.normal(spec.mu, spec.sigma, size=B)
    elif spec.kind == "uniform":
        q = rng.uniform(spec.lo, spec.hi, size=B)
    else:
        q = rng.lognormal(spec.mu, spec.sigma, size=B)
    return QualityModel(spec, q, outside_quality)
