"""Discrete residual G(V) and Jacobian on the interior space-time grid.

The unknown ``V`` is flattened space-major: entry ``(i-1)*Nt + (j-1)`` is
``V(eta_i, t_j)`` with ``i = 1..Nx-1`` and ``j = 1..Nt``.  The initial face
``j = 0`` and both side faces are excluded because ``V`` vanishes there.

The advective flux ``A (U^(delta+1))_eta`` is split binomially,

    (V + Omega)^(delta+1) = sum_k C(delta+1, k) Omega^k V^(delta+1-k).

Two discretisations of the ``k >= 1`` terms are offered:

``"conservative"`` (default)
    The interior derivative matrix acts on each product
    ``Omega^k V^(delta+1-k)`` and the pure-lift flux is differentiated on
    the full grid.  The whole residual then equals pointwise collocation
    of the unsplit equation.
``"product_rule"``
    Each product is expanded as
    ``diag((Omega^k)_eta) V^m + diag(Omega^k) D V^m`` with
    ``(Omega^k)_eta = k Omega^(k-1) Omega_eta``.  Consistent, but differs
    from pointwise collocation by an aliasing-level amount.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .lift import LiftField
from .problem import TransformedCoefficients
from .spectral import GridSpec, InvalidOrderError, diff_matrix

ADVECTION_FORMS = ("conservative", "product_rule")


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class OperatorSet:
    time_derivative: np.ndarray
    space_first: np.ndarray
    space_second: np.ndarray
    space_full: np.ndarray
    interior_shape: tuple

    @property
    def size(self) -> int:
        return self.time_derivative.shape[0]


def build_operators(space_grid: GridSpec, time_grid: GridSpec) -> OperatorSet:
    if space_grid.order < 2 or time_grid.order < 2:
        raise InvalidOrderError("both grids need order >= 2 to have interior collocation points")
    Dx = diff_matrix(space_grid)
    Dt = diff_matrix(time_grid)
    nx, nt = space_grid.order - 1, time_grid.order
    inner_x = slice(1, -1)
    return OperatorSet(
        time_derivative=np.kron(np.eye(nx), Dt[1:, 1:]),
        space_first=np.kron(Dx[inner_x, inner_x], np.eye(nt)),
        space_second=np.kron((Dx @ Dx)[inner_x, inner_x], np.eye(nt)),
        space_full=Dx,
        interior_shape=(nx, nt),
    )


def _lift_flux_derivative(lift: LiftField, operators: OperatorSet, delta: int, advection: str) -> np.ndarray:
    """Samples of ``(Omega^(delta+1))_eta`` on the interior grid."""
    if advection == "product_rule":
        return (delta + 1) * lift.P**delta * lift.Q
    flux = operators.space_full @ lift.omega ** (delta + 1)
    return np.ascontiguousarray(flux[1:-1, 1:]).ravel()


def forcing_vector(lift: LiftField, coeffs: TransformedCoefficients, delta: int,
                   operators: OperatorSet, advection: str = "conservative") -> np.ndarray:
    """The V-independent part of the residual (the lift plugged into the PDE)."""
    A, B, C = coeffs.A, coeffs.B, coeffs.C
    P = lift.P
    flux = _lift_flux_derivative(lift, operators, delta, advection)
    return lift.S + A * flux - B * lift.R - C * P + C * P ** (delta + 1)


@dataclass(frozen=True)
class ResidualSystem:
    operators: OperatorSet
    lift: LiftField
    coeffs: TransformedCoefficients
    delta: int
    forcing: np.ndarray
    advection: str = "conservative"

    @property
    def size(self) -> int:
        return self.operators.size


def build_system(lift: LiftField, coeffs: TransformedCoefficients, delta: int,
                 space_grid: GridSpec, time_grid: GridSpec,
                 advection: str = "conservative") -> ResidualSystem:
    if advection not in ADVECTION_FORMS:
        raise ValueError(f"advection must be one of {ADVECTION_FORMS}, got {advection!r}")
    operators = build_operators(space_grid, time_grid)
    if lift.P.shape != (operators.size,):
        raise DimensionError(f"lift has {lift.P.size} interior samples, operators expect {operators.size}")
    forcing = forcing_vector(lift, coeffs, delta, operators, advection)
    return ResidualSystem(operators, lift, coeffs, int(delta), forcing, advection)


def _check(system: ResidualSystem, V) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    if V.shape != (system.size,):
        raise DimensionError(f"V must have shape ({system.size},), got {V.shape}")
    return V


def residual(system: ResidualSystem, V) -> np.ndarray:
    V = _check(system, V)
    ops = system.operators
    A, B, C = system.coeffs.A, system.coeffs.B, system.coeffs.C
    d = system.delta
    P, Q = system.lift.P, system.lift.Q
    Dx = ops.space_first

    G = ops.time_derivative @ V + A * (Dx @ V ** (d + 1))
    G -= B * (ops.space_second @ V)
    G += C * (V ** (d + 1) - V)
    for k in range(1, d + 1):
        ck = comb(d + 1, k)
        Pk = P**k
        W = V ** (d + 1 - k)
        if system.advection == "conservative":
            G += A * ck * (Dx @ (Pk * W))
        else:
            G += A * ck * (k * P ** (k - 1) * Q * W + Pk * (Dx @ W))
        G += C * ck * Pk * W
    return G + system.forcing


def jacobian(system: ResidualSystem, V) -> np.ndarray:
    V = _check(system, V)
    ops = system.operators
    A, B, C = system.coeffs.A, system.coeffs.B, system.coeffs.C
    d = system.delta
    P, Q = system.lift.P, system.lift.Q
    Dx = ops.space_first

    top = (d + 1) * V**d
    J = ops.time_derivative + A * Dx * top[None, :] - B * ops.space_second
    diag = C * (top - 1.0)
    for k in range(1, d + 1):
        ck = comb(d + 1, k)
        Pk = P**k
        dW = (d + 1 - k) * V ** (d - k)
        if system.advection == "conservative":
            J += A * ck * Dx * (Pk * dW)[None, :]
        else:
            J += A * ck * Pk[:, None] * Dx * dW[None, :]
            diag += A * ck * k * P ** (k - 1) * Q * dW
        diag += C * ck * Pk * dW
    J[np.diag_indices_from(J)] += diag
    return J
