import io

import numpy as np
import pytest

from satsim import QualityDistribution, builtin_config, load_config, sample_qualities
from satsim.config import config_from_dict
from satsim.errors import ConfigError, UnknownKeyError
from satsim.sampling import derive_seed

MINIMAL = """
market: {M: 500, a: 2, B: 20}
outside: {z: 10}
quality: {distribution: uniform, lo: -2, hi: 2}
dynamics: {alpha: 0.5, steps: 40}
seed: 7
"""


def test_illustrative_builtin():
    c = builtin_config("illustrative")
    m = c.market
    assert (m.M, m.a, m.B, m.A) == (10000, 1, 1000, 10000)
    assert c.outside.z == 100 and c.outside.q0 == 0
    assert (c.quality.kind, c.quality.mu, c.quality.sigma) == ("normal", 0, 1)
    d = c.dynamics
    assert (d.alpha, d.beta, d.delta, d.steps, d.mode) == (1.0, 1, 0.1, 500, "deterministic")


def test_calibration_builtin():
    c = builtin_config("calibration")
    assert c.market.B == 800000 and c.market.A == 3.8e10
    assert c.outside.z == 50000 and c.outside.q0 == 0
    assert (c.quality.kind, c.quality.sigma) == ("normal", 1.5)
    assert (c.dynamics.beta, c.dynamics.delta, c.dynamics.steps) == (1, 0.1, 300)


def test_dilution_builtin():
    c = builtin_config("dilution")
    assert c.is_dilution
    assert c.dilution_B == (100, 500, 1000, 5000, 9900, 50000)
    assert c.market.A == 10000 and c.outside.z == 100 and c.market.p == c.market.k == 1


def test_load_by_name_text_bytes_stream(tmp_path):
    assert load_config("illustrative") == builtin_config("illustrative")
    a = load_config(MINIMAL)
    assert load_config(MINIMAL.encode()) == a
    assert load_config(io.StringIO(MINIMAL)) == a
    path = tmp_path / "c.yaml"
    path.write_text(MINIMAL)
    assert load_config(path) == a
    assert a.market.A == 1000
    assert a.dynamics.beta == 1 and a.dynamics.delta == 0.1
    assert a.metrics.top_fractions == (0.01, 0.1)


def test_round_trip_through_dict():
    for name in ("illustrative", "dilution", "calibration"):
        c = builtin_config(name)
        assert config_from_dict(c.to_dict()) == c


def test_exponent_strings_parse():
    c = load_config(MINIMAL.replace("M: 500", "M: 3.8e10"))
    assert c.market.M == 3.8e10


@pytest.mark.parametrize("edit", [
    ("alpha: 0.5", "alpha: 0.5, delta: 0"),
    ("alpha: 0.5", "alpha: 0.5, delta: 1.5"),
    ("alpha: 0.5", "alpha: -1"),
    ("B: 20", "B: 2.5"),
    ("z: 10", "z: -1"),
    ("lo: -2, hi: 2", "lo: 2, hi: -2"),
    ("M: 500", "M: lots"),
])
def test_validation_errors(edit):
    with pytest.raises(ConfigError):
        load_config(MINIMAL.replace(*edit))


def test_unknown_keys():
    with pytest.raises(UnknownKeyError):
        load_config(MINIMAL.replace("alpha: 0.5", "alpah: 0.5"))
    with pytest.raises(UnknownKeyError):
        load_config(MINIMAL + "extra: 1\n")


def test_malformed():
    with pytest.raises(ConfigError):
        load_config("market: {M: [1, 2")
    with pytest.raises(ConfigError):
        load_config("- just\n- a list\n")
    with pytest.raises(ConfigError):
        load_config(MINIMAL.replace("outside: {z: 10}\n", ""))


def test_seed_requirements():
    with pytest.raises(ConfigError):
        load_config(MINIMAL.replace("seed: 7\n", ""))
    const = MINIMAL.replace("{distribution: uniform, lo: -2, hi: 2}", "{distribution: constant, value: 0}")
    assert load_config(const.replace("seed: 7\n", "")).seed is None
    with pytest.raises(ConfigError):
        load_config(const.replace("seed: 7\n", "").replace("steps: 40", "steps: 40, mode: stochastic"))
    with pytest.raises(ConfigError):
        load_config(MINIMAL.replace("seed: 7", "seed: -3"))
    assert load_config(MINIMAL.replace("seed: 7", f"seed: {2**64 - 1}")).seed == 2**64 - 1


def test_both_outside_forms_warn():
    c = load_config(MINIMAL.replace("{z: 10}", "{z: 10, q0: 0.5}"))
    assert c.warnings


def test_with_value():
    c = builtin_config("illustrative")
    d = c.with_value("dynamics.alpha", 0.25)
    assert d.dynamics.alpha == 0.25 and c.dynamics.alpha == 1.0
    assert c.with_value("seed", 11).seed == 11
    with pytest.raises(ConfigError):
        c.with_value("dynamics.mode", 1)
    with pytest.raises(ConfigError):
        c.with_value("dynamics.nope", 1)
    with pytest.raises(ConfigError):
        c.with_value("dynamics.delta", 0.0)


def test_sample_constant_and_uniform():
    q = sample_qualities(QualityDistribution.constant(0.3), 50, 1).realized
    np.testing.assert_array_equal(q, 0.3)
    for seed in range(5):
        q = sample_qualities(QualityDistribution.uniform(-2, 2), 10_000, seed).realized
        assert q.min() >= -2 and q.max() <= 2


def test_sample_normal_moments():
    q = sample_qualities(QualityDistribution.normal(0, 1), 100_000, 99).realized
    assert abs(q.mean()) < 0.02 and abs(q.std() - 1) < 0.02


def test_sample_lognormal_positive_and_location():
    spec = QualityDistribution.lognormal(0, 1)
    q = sample_qualities(spec, 50_000, 3).realized
    assert q.min() > 0
    assert abs(np.median(np.log(q))) < 0.03
    assert spec.location == 1.0


def test_sampling_reproducible_and_seed_sensitive():
    spec = QualityDistribution.normal(0, 1)
    a = sample_qualities(spec, 1000, 42).realized
    assert a.tobytes() == sample_qualities(spec, 1000, 42).realized.tobytes()
    assert not np.array_equal(a, sample_qualities(spec, 1000, 43).realized)


def test_derive_seed_streams():
    assert derive_seed(1, "quality") == derive_seed(1, "quality")
    seeds = {derive_seed(1, "quality"), derive_seed(1, "dynamics"), derive_seed(2, "quality"),
             derive_seed(1, "replicate", 1), derive_seed(1, "replicate", 2)}
    assert len(seeds) == 5
    assert all(0 <= s < 2**64 for s in seeds)
    assert 0 <= derive_seed(2**64 - 1, "x") < 2**64
