"""Damped Newton-Raphson for G(V) = 0 and the end-to-end solve pipeline."""

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .assembly import ResidualSystem, build_system, jacobian, residual
from .lift import LiftField, sample_lift
from .problem import (
    BoundaryData,
    ProblemSpec,
    TransformedCoefficients,
    benchmark_boundary_data,
    transformed_coefficients,
)
from .spectral import GridSpec, cgl_grid

log = logging.getLogger(__name__)


class SingularJacobianError(RuntimeError):
    def __init__(self, iteration: int, message: str = "Jacobian is numerically singular"):
        super().__init__(f"{message} (iteration {iteration})")
        self.iteration = iteration


@dataclass(frozen=True)
class SolverConfig:
    residual_tolerance: float = 1e-13
    step_tolerance: float = 1e-14
    max_iterations: int = 50
    backtrack_factor: float = 0.5
    max_halvings: int = 20

    def __post_init__(self):
        if not (self.residual_tolerance > 0 and self.step_tolerance > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0 < self.backtrack_factor < 1:
            raise ValueError("backtrack_factor must lie in (0, 1)")


@dataclass
class NewtonReport:
    iterations: int = 0
    residual_norms: list = field(default_factory=list)
    step_norms: list = field(default_factory=list)
    converged: bool = False

    @property
    def final_residual(self) -> float:
        return self.residual_norms[-1]


@dataclass(frozen=True)
class SolutionField:
    """Nodal values flattened space-major, ``values.size == shape[0] * shape[1]``."""

    values: np.ndarray
    shape: tuple

    def __post_init__(self):
        if self.values.size != self.shape[0] * self.shape[1]:
            raise ValueError(f"{self.values.size} values do not fill shape {self.shape}")

    @property
    def grid(self) -> np.ndarray:
        return self.values.reshape(self.shape)


def _lu(J: np.ndarray, iteration: int):
    with warnings.catch_warnings():
        # singularity is judged by the pivot test below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(J, check_finite=False)
    scale = np.abs(J).max()
    if not np.isfinite(lu).all() or np.abs(np.diag(lu)).min() <= 1e-14 * scale:
        raise SingularJacobianError(iteration)
    return lu, piv


def solve(system: ResidualSystem, config: SolverConfig = SolverConfig(), initial=None):
    """Newton iteration from ``V0 = 0`` (i.e. ``U0 = Omega``) with backtracking on ``||G||_inf``.

    Returns ``(SolutionField, NewtonReport)``.  Running out of iterations is
    reported through ``converged=False``; a singular Jacobian raises.
    """
    V = np.zeros(system.size) if initial is None else np.array(initial, dtype=float)
    G = residual(system, V)
    norm = float(np.abs(G).max())
    report = NewtonReport(residual_norms=[norm])

    while norm > config.residual_tolerance and report.iterations < config.max_iterations:
        it = report.iterations
        step = scipy.linalg.lu_solve(_lu(jacobian(system, V), it), G, check_finite=False)
        lam = 1.0
        for _ in range(config.max_halvings + 1):
            trial = V - lam * step
            G_trial = residual(system, trial)
            trial_norm = float(np.abs(G_trial).max())
            if trial_norm < norm:
                break
            lam *= config.backtrack_factor
        else:
            log.debug("line search stalled at iteration %d, residual %.3e", it, norm)
            break
        V, G, norm = trial, G_trial, trial_norm
        step_norm = float(lam * np.abs(step).max())
        report.iterations += 1
        report.residual_norms.append(norm)
        report.step_norms.append(step_norm)
        log.debug("newton %d: |G| = %.3e, |dV| = %.3e, lambda = %g", it + 1, norm, step_norm, lam)
        if step_norm <= config.step_tolerance:
            break

    report.converged = bool(norm <= config.residual_tolerance)
    return SolutionField(V, system.operators.interior_shape), report


def reconstruct(V: SolutionField, lift: LiftField, boundary: BoundaryData,
                space_grid: GridSpec, time_grid: GridSpec) -> SolutionField:
    """Full-grid ``U = V + Omega``; the faces take the prescribed traces directly."""
    U = np.array(lift.omega, dtype=float)
    if V.shape != lift.interior_shape:
        raise ValueError(f"V shape {V.shape} does not match lift interior {lift.interior_shape}")
    U[1:-1, 1:] += V.grid
    U[:, 0] = boundary.h(space_grid.nodes)
    U[0, :] = boundary.g1(time_grid.nodes)
    U[-1, :] = boundary.g2(time_grid.nodes)
    return SolutionField(U.ravel(), U.shape)


@dataclass(frozen=True)
class Solution:
    spec: ProblemSpec
    space_grid: GridSpec
    time_grid: GridSpec
    coeffs: TransformedCoefficients
    boundary: BoundaryData
    system: ResidualSystem
    V: SolutionField
    U: SolutionField
    report: NewtonReport


def solve_problem(spec: ProblemSpec, order: int, config: SolverConfig = SolverConfig(),
                  time_order: int = None, boundary: BoundaryData = None,
                  advection: str = "conservative") -> Solution:
    """Discretise ``spec`` on an ``order`` x ``time_order`` CGL grid and solve.

    ``boundary`` defaults to the travelling-wave traces of ``spec``.
    """
    space_grid = cgl_grid(order)
    time_grid = cgl_grid(order if time_order is None else time_order)
    if boundary is None:
        boundary = benchmark_boundary_data(spec)
    coeffs = transformed_coefficients(spec)
    lift = sample_lift(boundary, space_grid, time_grid)
    system = build_system(lift, coeffs, spec.delta, space_grid, time_grid, advection)
    V, report = solve(system, config)
    U = reconstruct(V, lift, boundary, space_grid, time_grid)
    return Solution(spec, space_grid, time_grid, coeffs, boundary, system, V, U, report)
