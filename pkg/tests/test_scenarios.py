import numpy as np
import pytest

from satsim import (SweepSpec, builder_profit, builtin_config, load_config, run_fixed_point,
                    run_scenario, run_sweep, symmetric_average)
from satsim.errors import ConfigError, SimulationTimeout, UnsupportedRegimeError
from satsim.scenarios import DILUTION_TABLE, TARGETS, Window, display

SMALL = """
name: small
market: {M: 2000, a: 1, B: 200}
outside: {z: 20, q0: 0}
quality: {distribution: normal, mu: 0, sigma: 1}
dynamics: {alpha: 0.5, steps: 100}
metrics: {lorenz_points: 50}
seed: 5
"""


def test_display_rule():
    assert [display(v) for v in (50.0, 16.6667, 9.0909, 1.9608, 1.0, 0.2, -0.8, 0.9608, 0.0)] == [
        "50.0", "16.7", "9.09", "1.96", "1.00", "0.20", "-0.80", "0.96", "0.00"]
    assert display(-1e-15) == "0.00"


def test_dilution_scenario_matches_table():
    rep = run_scenario(builtin_config("dilution"))
    assert rep.final_metrics is None and rep.steps_run == 0
    assert len(rep.dilution) == len(DILUTION_TABLE)
    for row, (B, s, pi) in zip(rep.dilution, DILUTION_TABLE):
        assert row.B == B
        assert display(row.avg_attention) == s and display(row.profit) == pi
        assert row.avg_attention == symmetric_average(1e4, B, 100.0)
        assert row.profit == builder_profit(1.0, row.avg_attention, 1.0)
    assert rep.equilibrium.B_star == 9900


def test_window():
    w = Window(0.8, 1.0, lo_open=True)
    assert not w.contains(0.8) and w.contains(1.0) and w.contains(0.9)
    assert str(w) == "(0.8, 1.0]"
    assert Window(0.1, 0.35).contains(0.1)


def test_run_scenario_report_fields():
    cfg = load_config(SMALL)
    rep = run_scenario(cfg)
    assert rep.final_state.B == 200 and rep.qualities.shape == (200,)
    assert rep.steps_run <= 100
    assert rep.max_conservation_error < 1e-9
    assert len(rep.curves["lorenz"]) == 51
    assert len(rep.curves["rank"]) == 200
    assert 0 < rep.metric("gini") < 1
    assert rep.equilibrium.B_star == pytest.approx(2000 / 1 - 20)
    assert rep.target_checks == []
    with pytest.raises(KeyError):
        rep.metric("mode")


def test_run_scenario_reproducible():
    cfg = load_config(SMALL)
    a, b = run_scenario(cfg), run_scenario(cfg)
    assert a.final_state.vector().tobytes() == b.final_state.vector().tobytes()
    assert a.final_metrics == b.final_metrics


def test_stochastic_scenario_reproducible():
    cfg = load_config(SMALL.replace("steps: 100", "steps: 30, mode: stochastic"))
    a, b = run_scenario(cfg), run_scenario(cfg)
    assert a.final_state.vector().tobytes() == b.final_state.vector().tobytes()
    c = run_scenario(cfg.with_value("seed", 6))
    assert not np.array_equal(a.final_state.x, c.final_state.x)


def test_runtime_budget():
    cfg = load_config(SMALL.replace("steps: 100", "steps: 1000000, convergence_tol: 1e-300")
                      + "runtime_budget_s: 0.05\n")
    with pytest.raises(SimulationTimeout):
        run_scenario(cfg)


def test_illustrative_monotone_in_alpha(illustrative):
    reps = [run_scenario(illustrative.with_value("dynamics.alpha", a)) for a in (0.0, 0.5, 1.0)]
    g = [r.metric("gini") for r in reps]
    assert g[0] < g[1] < g[2]
    checks = reps[2].target_checks
    assert {c.name for c in checks} == {n for n, _, _ in TARGETS[("illustrative", 1.0)]}
    for c in checks:
        assert c.passed == c.window.contains(c.observed)


def test_fixed_point_scenario(illustrative):
    cfg = illustrative.with_value("dynamics.alpha", 0.5)
    fp = run_fixed_point(cfg)
    dyn = run_scenario(cfg.with_value("dynamics.steps", 3000))
    assert abs(fp.metric("gini") - dyn.metric("gini")) < 1e-6
    with pytest.raises(UnsupportedRegimeError):
        run_fixed_point(illustrative)


def test_sweep_order_and_seeds(illustrative):
    spec = SweepSpec(illustrative, "dynamics.alpha", [0.0, 0.5, 1.0], seeds_per_point=2)
    reps = run_sweep(spec, max_workers=3)
    assert [(r.axis_value, r.replicate) for r in reps] == [
        (0.0, 0), (0.0, 1), (0.5, 0), (0.5, 1), (1.0, 0), (1.0, 1)]
    assert reps[0].seed == 2025 and reps[1].seed != 2025
    assert reps[1].seed == reps[3].seed == reps[5].seed
    for r in range(2):
        g = [rep.metric("gini") for rep in reps if rep.replicate == r]
        assert g[0] < g[1] < g[2]


def test_sweep_permutation_independence(illustrative):
    vals = [0.0, 0.3, 0.8]
    a = run_sweep(SweepSpec(illustrative, "dynamics.alpha", vals), max_workers=1)
    b = run_sweep(SweepSpec(illustrative, "dynamics.alpha", vals[::-1]), max_workers=2)
    for ra, rb in zip(a, b[::-1]):
        assert ra.axis_value == rb.axis_value
        assert ra.final_state.vector().tobytes() == rb.final_state.vector().tobytes()


def test_sweep_delta_robustness(illustrative):
    spec = SweepSpec(illustrative, "dynamics.delta", [0.01, 0.05, 0.1, 0.2, 0.5],
                     scale_steps_with_delta=True)
    reps = run_sweep(spec)
    assert [r.config.dynamics.steps for r in reps] == [5000, 1000, 500, 250, 100]
    g = [r.metric("gini") for r in reps]
    assert max(g) - min(g) < 0.05


def test_sweep_builder_count_symmetric():
    base = load_config("""
market: {M: 10000, a: 1, B: 10}
outside: {z: 100}
quality: {distribution: constant, value: 0}
dynamics: {alpha: 0.0, steps: 20}
""")
    reps = run_sweep(SweepSpec(base, "market.B", [100, 500, 1000]))
    for r in reps:
        assert r.seed is None
        np.testing.assert_allclose(r.final_state.x, 1e4 / (r.axis_value + 100), rtol=1e-12)


def test_sweep_records_errors(illustrative):
    reps = run_sweep(SweepSpec(illustrative, "dynamics.delta", [0.1, 0.0]), max_workers=1)
    assert reps[0].error is None
    assert reps[1].error and "ConfigError" in reps[1].error


def test_sweep_validation(illustrative):
    with pytest.raises(ConfigError):
        SweepSpec(illustrative, "dynamics.alpha", [])
    with pytest.raises(ConfigError):
        SweepSpec(illustrative, "dynamics.mode", [1])
    with pytest.raises(ConfigError):
        SweepSpec(illustrative, "dynamics.nope", [1])


def test_sweep_threads_env(monkeypatch):
    from satsim.sweep import sweep_threads
    monkeypatch.setenv("SATSIM_THREADS", "3")
    assert sweep_threads() == 3
    monkeypatch.setenv("SATSIM_THREADS", "x")
    with pytest.raises(ConfigError):
        sweep_threads()
