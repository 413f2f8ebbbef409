"""Homogenising lift Omega(eta, t) built from initial/boundary traces.

``U = V + Omega`` turns the inhomogeneous initial-boundary problem into one
with ``V = 0`` on the initial face and both side faces.
"""

from dataclasses import dataclass

import numpy as np

from .problem import BoundaryData
from .spectral import GridSpec, barycentric_matrix, cgl_grid, diff_matrix


@dataclass(frozen=True)
class LiftField:
    """Lift samples on the interior tensor grid, flattened space-major.

    ``P, Q, R, S`` hold Omega, Omega_eta, Omega_etaeta and Omega_t at
    ``(eta_i, t_j)``, ``i = 1..Nx-1`` (outer), ``j = 1..Nt`` (inner).
    ``omega`` is Omega on the full ``(Nx+1, Nt+1)`` grid.
    """

    P: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    S: np.ndarray
    omega: np.ndarray

    @property
    def interior_shape(self) -> tuple:
        nx, nt = self.omega.shape
        return (nx - 2, nt - 1)


def _corners(data: BoundaryData) -> tuple:
    minus_one = np.array([-1.0])
    return float(data.g1(minus_one)[0]), float(data.g2(minus_one)[0])


def _combine(h, g1, g2, g1_0, g2_0, eta, t):
    return (
        0.5 * (1 - t) * h
        + 0.5 * (1 - eta) * g1
        + 0.5 * (1 + eta) * g2
        - 0.25 * (1 - t) * (1 - eta) * g1_0
        - 0.25 * (1 - t) * (1 + eta) * g2_0
    )


def lift_value(data: BoundaryData, eta, t):
    eta = np.asarray(eta, dtype=float)
    t = np.asarray(t, dtype=float)
    g1_0, g2_0 = _corners(data)
    return _combine(data.h(eta), data.g1(t), data.g2(t), g1_0, g2_0, eta, t)


def _partials(h, dh, d2h, g1, dg1, g2, dg2, g1_0, g2_0, eta, t):
    omega_t = -0.5 * h + 0.5 * (1 - eta) * dg1 + 0.5 * (1 + eta) * dg2 + 0.25 * (1 - eta) * g1_0 + 0.25 * (1 + eta) * g2_0
    omega_eta = 0.5 * (1 - t) * dh - 0.5 * g1 + 0.5 * g2 + 0.25 * (1 - t) * g1_0 - 0.25 * (1 - t) * g2_0
    omega_etaeta = 0.5 * (1 - t) * d2h
    return omega_t, omega_eta, omega_etaeta


def _trace_derivatives(fn, grid: GridSpec, points, second: bool = False):
    """Spectral derivative(s) of ``fn`` interpolated on ``grid``, read at ``points``."""
    D = diff_matrix(grid)
    samples = fn(grid.nodes)
    M = barycentric_matrix(grid, points)
    first = D @ samples
    if not second:
        return M @ first
    return M @ first, M @ (D @ first)


def lift_derivatives(data: BoundaryData, eta, t, order: int = 32):
    """Return ``(Omega_t, Omega_eta, Omega_etaeta)`` at ``(eta, t)``.

    Trace derivatives come from differentiating the degree-``order``
    interpolants of ``h``, ``g1`` and ``g2``; the bilinear blending terms
    are differentiated exactly.
    """
    eta_a = np.atleast_1d(np.asarray(eta, dtype=float))
    t_a = np.atleast_1d(np.asarray(t, dtype=float))
    eta_a, t_a = np.broadcast_arrays(eta_a, t_a)
    grid = cgl_grid(order)
    flat_eta, flat_t = eta_a.ravel(), t_a.ravel()
    dh, d2h = _trace_derivatives(data.h, grid, flat_eta, second=True)
    dg1 = _trace_derivatives(data.g1, grid, flat_t)
    dg2 = _trace_derivatives(data.g2, grid, flat_t)
    g1_0, g2_0 = _corners(data)
    parts = _partials(
        data.h(flat_eta), dh, d2h, data.g1(flat_t), dg1, data.g2(flat_t), dg2, g1_0, g2_0, flat_eta, flat_t
    )
    shape = np.broadcast(np.asarray(eta), np.asarray(t)).shape
    return tuple(p.reshape(shape) if shape else float(p[0]) for p in parts)


def sample_lift(data: BoundaryData, space_grid: GridSpec, time_grid: GridSpec) -> LiftField:
    eta = space_grid.nodes[:, None]
    t = time_grid.nodes[None, :]
    omega = lift_value(data, eta, t)

    h = data.h(space_grid.nodes)
    g1 = data.g1(time_grid.nodes)
    g2 = data.g2(time_grid.nodes)
    Dx = diff_matrix(space_grid)
    Dt = diff_matrix(time_grid)
    dh = Dx @ h
    g1_0, g2_0 = _corners(data)
    omega_t, omega_eta, omega_etaeta = _partials(
        h[:, None], dh[:, None], (Dx @ dh)[:, None],
        g1[None, :], (Dt @ g1)[None, :], g2[None, :], (Dt @ g2)[None, :],
        g1_0, g2_0, eta, t,
    )
    inner = (slice(1, -1), slice(1, None))

    def flat(a):
        return np.ascontiguousarray(np.broadcast_to(a, omega.shape)[inner]).ravel()

    return LiftField(P=flat(omega), Q=flat(omega_eta), R=flat(omega_etaeta), S=flat(omega_t), omega=omega)
