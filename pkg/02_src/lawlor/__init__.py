"""
Lawlor criterion machinery.

Lower-bound models q(t), the fastest-vanishing profile ODE, vanishing-angle
bounds and the table of upper bounds.
"""
from .angle_bounds import (
    NoVanishingError,
    ScalingHypothesisError,
    chain_bound,
    dimension_reduction_bound,
    theta_upper_bound,
)
from .angle_table import AngleCell, AngleTable, generate_angle_table, generate_angle_table_async
from .config import ConfigError, SolverSettings, default_settings, get_solver_config, setup_logging
from .models import (
    AngleBound,
    BoundStrategy,
    FailureReason,
    Outcome,
    ProfileState,
    VanishingAngleResult,
)
from .profile_ode import IntegrationError, convergence_check, solve_profile, trace_to_csv
from .qmodel import (
    ExactSpectrum,
    ExpBound,
    FBound,
    QModel,
    QModelDomainError,
    Spectrum,
    equality_spectrum,
    eval_q,
    power_sum,
    q_domain_end,
    q_series,
)
from .runner import Task, TaskResult, TaskRunner

__all__ = [
    "Spectrum",
    "QModel",
    "ExactSpectrum",
    "FBound",
    "ExpBound",
    "QModelDomainError",
    "eval_q",
    "q_domain_end",
    "q_series",
    "power_sum",
    "equality_spectrum",
    "ProfileState",
    "VanishingAngleResult",
    "Outcome",
    "FailureReason",
    "BoundStrategy",
    "AngleBound",
    "solve_profile",
    "convergence_check",
    "trace_to_csv",
    "IntegrationError",
    "chain_bound",
    "theta_upper_bound",
    "dimension_reduction_bound",
    "ScalingHypothesisError",
    "NoVanishingError",
    "AngleCell",
    "AngleTable",
    "generate_angle_table",
    "generate_angle_table_async",
    "SolverSettings",
    "ConfigError",
    "default_settings",
    "get_solver_config",
    "setup_logging",
    "Task",
    "TaskResult",
    "TaskRunner",
]
