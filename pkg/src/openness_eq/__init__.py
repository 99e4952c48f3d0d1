"""Equilibrium solver for the generalist/specialist openness game."""

from .core_model import (
    DomainError,
    Equilibrium,
    GameParams,
    NO_REGULATION,
    RegionLabel,
    Regulation,
    StrategyProfile,
    generalist_cost,
    generalist_utility,
    revenue,
    specialist_cost,
    specialist_utility,
)
from .best_response import (
    G_ABSTAIN,
    OMEGA_LIMIT_ZERO,
    QuadraticCoefficients,
    SpecialistResponse,
    generalist_best_response,
    generalist_candidates,
    generalist_oracle,
    quadratic_coefficients,
    specialist_best_response,
    specialist_oracle,
    specialist_participates,
)
from .bargaining import BargainingRule, bargaining_objective, delta_grid, solve_bargain
from .regulation_analysis import (
    Axis,
    OBJECTIVE_FIELDS,
    ParetoRegionBounds,
    ParetoWeighting,
    SweepCell,
    SweepSpec,
    SweepTable,
    classify_cell,
    indifference_boundary_numeric,
    indifference_penalty,
    pareto_optimal_policies,
    pareto_region_bounds,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BargainingRule",
    "DomainError",
    "Equilibrium",
    "G_ABSTAIN",
    "GameParams",
    "NO_REGULATION",
    "OBJECTIVE_FIELDS",
    "OMEGA_LIMIT_ZERO",
    "ParetoRegionBounds",
    "ParetoWeighting",
    "QuadraticCoefficients",
    "RegionLabel",
    "Regulation",
    "SpecialistResponse",
    "StrategyProfile",
    "SweepCell",
    "SweepSpec",
    "SweepTable",
    "bargaining_objective",
    "classify_cell",
    "delta_grid",
    "generalist_best_response",
    "generalist_candidates",
    "generalist_cost",
    "generalist_oracle",
    "generalist_utility",
    "indifference_boundary_numeric",
    "indifference_penalty",
    "pareto_optimal_policies",
    "pareto_region_bounds",
    "quadratic_coefficients",
    "revenue",
    "run_sweep",
    "solve_bargain",
    "specialist_best_response",
    "specialist_cost",
    "specialist_oracle",
    "specialist_participates",
    "specialist_utility",
]
