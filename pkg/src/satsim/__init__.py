"""Attention-constrained entry: allocation, free entry, reinforcement dynamics
and concentration of outcomes."""

from .config import ScenarioConfig, builtin_config, load_config
from .dynamics import (DynamicsConfig, Trajectory, effective_sensitivity, mean_field_step,
                       reallocation_probabilities, run_deterministic, run_stochastic,
                       solve_fixed_point)
from .equilibrium import (EquilibriumResult, GrowthPath, WelfareResult, comparative_statics,
                          entry_viable, equilibrium_entry, growth_trajectory, outside_absorption,
                          welfare, welfare_optimum, zero_profit_attention)
from .errors import (ConfigError, DegenerateStateError, DomainError, NumericalError,
                     NumericalRangeError, SatsimError, UnsupportedRegimeError)
from .metrics import (ConcentrationReport, CurveData, analytic_concentration, concentration_report,
                      estimate_tail_exponent, gini, lorenz_curve, median_mean_ratio,
                      rank_distribution, share_below, top_share)
from .model import (AllocationResult, AttentionState, MarketParams, OutsideOption,
                    QualityDistribution, QualityModel, aggregate_attention, attention_ratio,
                    builder_profit, entry_elasticity, outside_weight, static_allocation,
                    symmetric_average)
from .sampling import sample_qualities
from .scenarios import ScenarioReport, run_fixed_point, run_scenario
from .sweep import SweepSpec, run_sweep
from .export import export_results

__version__ = "0.1.0"
