"""High-order convolution-quadrature time stepping for subdiffusion problems
with Caputo derivatives, plus the special-function and stability machinery
the schemes rest on."""

from .harness import (
    ConvergenceReport,
    ExperimentConfig,
    convergence_rate,
    discrete_l2_norm,
    example1_problem,
    run_convergence_study,
)
from .spatial import LaplacianOperator, SpectralGrid, cgl_grid, diff_matrix, laplacian_dirichlet
from .special_functions import (
    DomainError,
    EvaluationError,
    dirichlet_eta,
    polylog_series,
    polylog_singular_expansion,
    polylog_tau8,
    riemann_zeta,
)
from .stability import ContourSpec, LocusReport, boundary_locus, expansion_order_fit, sector_check_tau8
from .timestepper import (
    ConfigurationError,
    ProblemSpec,
    SolutionHistory,
    SolverError,
    solve_corrected,
    solve_standard,
)
from .weights import (
    SchemeParams,
    WeightSequence,
    symbol_delta_alpha,
    weights_explicit,
    weights_generic,
    weights_quadrature_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "ContourSpec",
    "ConvergenceReport",
    "DomainError",
    "EvaluationError",
    "ExperimentConfig",
    "LaplacianOperator",
    "LocusReport",
    "ProblemSpec",
    "SchemeParams",
    "SolutionHistory",
    "SolverError",
    "SpectralGrid",
    "WeightSequence",
    "boundary_locus",
    "cgl_grid",
    "convergence_rate",
    "diff_matrix",
    "dirichlet_eta",
    "discrete_l2_norm",
    "example1_problem",
    "expansion_order_fit",
    "laplacian_dirichlet",
    "polylog_series",
    "polylog_singular_expansion",
    "polylog_tau8",
    "riemann_zeta",
    "run_convergence_study",
    "sector_check_tau8",
    "solve_corrected",
    "solve_standard",
    "symbol_delta_alpha",
    "weights_explicit",
    "weights_generic",
    "weights_quadrature_oracle",
]
