"""Exterior Laplace solvers by fundamental-solution and Trefftz collocation.

The package assembles the collocation systems of five related methods,
solves them with its own LU and one-sided Jacobi SVD kernels, and
provides the conditioning sweeps and error metrics used to compare them.
"""

from .analysis import (
    CondProfile,
    ErrorCurve,
    analytic_cond_S_circle,
    analytic_optimal_R0,
    cond_K_comparison,
    cond_sweep_S,
    error_max_on_circle,
    error_pointwise,
    growth_fit,
    optimal_R0_vs_N,
    sk_convergence,
)
from .assembly import MethodParams, TrefftzDims
from .errors import (
    CoincidentPointsError,
    ConfigError,
    DegenerateFitError,
    DimensionMismatchError,
    MmfsError,
    NoConvergenceError,
    NonPositiveRadiusError,
    PointInsideObstacleError,
    SingularMatrixError,
    SourceOutsideObstacleError,
)
from .geometry import (
    Circle,
    CollocationSet,
    CustomRadial,
    Ellipse,
    Epitrochoid,
    SourceSet,
    collocation_points,
    rho,
    rho_extrema,
    source_points,
)
from .linalg import cond2, determinant, lu_solve, singular_values
from .reference import exterior_u, exterior_u_shifted
from .solvers import (
    Basis,
    MethodKind,
    MfsWeights,
    SolveReport,
    TrefftzCoefficients,
    evaluate_report,
    run_method,
    shift_far_field,
    solve_mfs,
    solve_mmfs,
    solve_mtm,
)
from .verify import run_all as verify_all

__all__ = [
    "Basis",
    "Circle",
    "CoincidentPointsError",
    "CollocationSet",
    "CondProfile",
    "ConfigError",
    "CustomRadial",
    "DegenerateFitError",
    "DimensionMismatchError",
    "Ellipse",
    "Epitrochoid",
    "ErrorCurve",
    "MethodKind",
    "MethodParams",
    "MfsWeights",
    "MmfsError",
    "NoConvergenceError",
    "NonPositiveRadiusError",
    "PointInsideObstacleError",
    "SingularMatrixError",
    "SolveReport",
    "SourceOutsideObstacleError",
    "SourceSet",
    "TrefftzCoefficients",
    "TrefftzDims",
    "analytic_cond_S_circle",
    "analytic_optimal_R0",
    "collocation_points",
    "cond2",
    "cond_K_comparison",
    "cond_sweep_S",
    "determinant",
    "error_max_on_circle",
    "error_pointwise",
    "evaluate_report",
    "exterior_u",
    "exterior_u_shifted",
    "growth_fit",
    "lu_solve",
    "optimal_R0_vs_N",
    "rho",
    "rho_extrema",
    "run_method",
    "shift_far_field",
    "singular_values",
    "sk_convergence",
    "solve_mfs",
    "solve_mmfs",
    "solve_mtm",
    "source_points",
    "verify_all",
]

__version__ = "0.1.0"
