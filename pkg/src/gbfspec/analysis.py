"""Error norms against the travelling-wave solution, convergence sweeps and
the discrete energy growth check."""

import logging
from dataclasses import dataclass

import numpy as np

from .newton import SolutionField, SolverConfig, solve_problem
from .problem import ProblemSpec, TransformedCoefficients, affine_map, affine_unmap, exact_solution
from .spectral import GridSpec, barycentric_matrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ErrorReport:
    """``l_inf`` is the max error over interior nodes (i = 1..N-1, j = 1..N).

    ``per_time_slice`` lists ``(t, max_i error)`` for each interior
    collocation time; ``requested`` does the same at caller-chosen
    physical times, evaluating the numerical solution by polynomial
    interpolation in time.
    """

    l_inf: float
    per_time_slice: tuple
    requested: tuple
    N: int
    delta: int

    def at(self, t: float) -> float:
        for time, err in self.requested:
            if time == t:
                return err
        raise KeyError(t)


def slice_values(U: SolutionField, time_grid: GridSpec, t_reference) -> np.ndarray:
    """Numerical solution at reference times, one row per space node."""
    M = barycentric_matrix(time_grid, t_reference)
    return U.grid @ M.T


def linf_error(U: SolutionField, spec: ProblemSpec, space_grid: GridSpec, time_grid: GridSpec,
               report_times=()) -> ErrorReport:
    eta = affine_unmap(space_grid.nodes[1:-1], spec.eta_range)
    t_nodes = affine_unmap(time_grid.nodes, spec.time_range)
    exact = exact_solution(spec, eta[:, None], t_nodes[None, 1:])
    err = np.abs(U.grid[1:-1, 1:] - exact)
    per_slice = err.max(axis=0)

    requested = []
    times = np.asarray(report_times, dtype=float)
    if times.size:
        if times.min() < 0 or times.max() > spec.t_final:
            raise ValueError(f"report times must lie in [0, {spec.t_final}]")
        tau = np.clip(affine_map(times, spec.time_range), -1.0, 1.0)
        tau[times == spec.t_final] = 1.0
        tau[times == 0.0] = -1.0
        values = slice_values(U, time_grid, tau)[1:-1]
        exact_req = exact_solution(spec, eta[:, None], times[None, :])
        slice_err = np.abs(values - exact_req).max(axis=0)
        requested = [(float(t), float(e)) for t, e in zip(times, slice_err)]

    return ErrorReport(
        l_inf=float(err.max()),
        per_time_slice=tuple((float(t), float(e)) for t, e in zip(t_nodes[1:], per_slice)),
        requested=tuple(requested),
        N=space_grid.order,
        delta=spec.delta,
    )


def convergence_sweep(spec: ProblemSpec, orders, config: SolverConfig = SolverConfig(), at_time=None,
                      advection: str = "conservative") -> list:
    """Solve once per order and return ``[(N, error at at_time)]``.

    ``at_time`` defaults to ``spec.t_final``.  A failed solve is logged and
    recorded as NaN so the remaining orders still run.
    """
    orders = list(orders)
    if orders != sorted(orders):
        raise ValueError("orders must be ascending")
    t = spec.t_final if at_time is None else at_time
    out = []
    for n in orders:
        try:
            sol = solve_problem(spec, n, config, advection=advection)
            if not sol.report.converged:
                log.warning("N=%d did not converge (|G| = %.3e)", n, sol.report.final_residual)
            err = linf_error(sol.U, spec, sol.space_grid, sol.time_grid, [t]).requested[0][1]
        except (ArithmeticError, RuntimeError, ValueError) as exc:
            log.warning("N=%d failed: %s", n, exc)
            err = float("nan")
        out.append((n, err))
    return out


@dataclass(frozen=True)
class EnergyTrace:
    times: np.ndarray
    energy: np.ndarray
    bound: np.ndarray

    @property
    def worst_ratio(self) -> float:
        """max_j E(t_j) / bound(t_j); values above 1 violate the estimate."""
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(self.bound > 0, self.energy / self.bound, np.where(self.energy > 0, np.inf, 0.0))
        return float(ratio.max())


def energy_check(U: SolutionField, coeffs: TransformedCoefficients, space_grid: GridSpec,
                 time_grid: GridSpec, t_final: float = None, rtol: float = 1e-8):
    """Check ``E(t_j) <= exp(2 C (t_j - t_0)) E(t_0)`` with ``E = sum_a U^2 w_a``.

    ``t`` in the exponent is the reference time in [-1, 1] that matches the
    transformed coefficient ``C``.  ``times`` in the trace are physical when
    ``t_final`` is given.  Returns ``(EnergyTrace, holds)``.
    """
    grid = U.grid
    if grid.shape != (space_grid.size, time_grid.size):
        raise ValueError(f"U must be on the full {space_grid.size}x{time_grid.size} grid")
    tau = time_grid.nodes
    energy = space_grid.quad_weights @ grid**2
    bound = np.exp(2.0 * coeffs.C * (tau - tau[0])) * energy[0]
    times = tau if t_final is None else affine_unmap(tau, (0.0, t_final))
    holds = bool(np.all(energy <= bound * (1.0 + rtol)))
    return EnergyTrace(np.asarray(times), energy, bound), holds
