"""Space-time Chebyshev pseudospectral solver for the generalized Burgers-Fisher equation."""

__version__ = "0.1.0"

from .analysis import ErrorReport, EnergyTrace, convergence_sweep, energy_check, linf_error
from .assembly import OperatorSet, ResidualSystem, build_operators, build_system, jacobian, residual
from .lift import LiftField, lift_derivatives, lift_value, sample_lift
from .newton import (
    NewtonReport,
    SingularJacobianError,
    Solution,
    SolutionField,
    SolverConfig,
    reconstruct,
    solve,
    solve_problem,
)
from .problem import (
    BoundaryData,
    InvalidProblemError,
    OracleUnavailableError,
    ProblemSpec,
    TransformedCoefficients,
    affine_map,
    affine_unmap,
    benchmark_boundary_data,
    exact_solution,
    transformed_coefficients,
    wave_parameters,
)
from .spectral import (
    DomainError,
    GridSpec,
    InvalidOrderError,
    barycentric_eval,
    barycentric_matrix,
    cgl_grid,
    diff_matrix,
    modal_coefficients,
    second_diff_matrix,
)
