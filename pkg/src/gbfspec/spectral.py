"""One-dimensional Chebyshev-Gauss-Lobatto machinery.

Nodes are stored in ascending order, ``z_j = -cos(j*pi/N)``, so the first
row of the differentiation matrix carries the negative corner entry.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev


class InvalidOrderError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """CGL nodes and Chebyshev-measure quadrature weights on [-1, 1]."""

    order: int
    nodes: np.ndarray
    quad_weights: np.ndarray

    @property
    def size(self) -> int:
        return self.order + 1


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


def cgl_grid(order: int) -> GridSpec:
    """Return the ``order + 1`` Chebyshev-Gauss-Lobatto points in ascending order."""
    if int(order) != order or order < 1:
        raise InvalidOrderError(f"grid order must be an integer >= 1, got {order!r}")
    n = int(order)
    # sin form keeps nodes[j] == -nodes[n - j] bit-exactly
    nodes = np.sin(np.pi * np.arange(-n, n + 1, 2) / (2 * n))
    nodes[0], nodes[-1] = -1.0, 1.0
    weights = np.full(n + 1, np.pi / n)
    weights[0] = weights[-1] = np.pi / (2 * n)
    return GridSpec(n, _frozen(nodes), _frozen(weights))


def _corner_factors(n: int) -> np.ndarray:
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    return c


def diff_matrix(grid: GridSpec) -> np.ndarray:
    """First-order collocation derivative matrix on ``grid``.

    Off-diagonal entries are ``c_a/c_b * (-1)**(a+b) / (z_a - z_b)``; the
    diagonal is then replaced by the negative row sum of the off-diagonal
    part, which reproduces the closed-form corner values ``-/+(2N^2+1)/6``
    and ``-z/(2(1-z^2))`` up to round-off while keeping ``D @ 1 == 0``.
    """
    n = grid.order
    z = grid.nodes
    c = _corner_factors(n)
    idx = np.arange(n + 1)
    sign = np.where((idx[:, None] + idx[None, :]) % 2 == 0, 1.0, -1.0)
    dz = z[:, None] - z[None, :]
    np.fill_diagonal(dz, 1.0)
    D = (c[:, None] / c[None, :]) * sign / dz
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def second_diff_matrix(grid: GridSpec) -> np.ndarray:
    D = diff_matrix(grid)
    return D @ D


def barycentric_weights(grid: GridSpec) -> np.ndarray:
    w = (-1.0) ** np.arange(grid.size)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def barycentric_matrix(grid: GridSpec, points) -> np.ndarray:
    """Rows of Lagrange basis values: ``M @ samples`` interpolates at ``points``.

    A point that coincides with a node gets the exact unit row, so the
    interpolant returns nodal samples bit-for-bit.
    """
    x = np.atleast_1d(np.asarray(points, dtype=float))
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1.0):
        raise DomainError("interpolation points must lie in [-1, 1]")
    w = barycentric_weights(grid)
    diff = x[:, None] - grid.nodes[None, :]
    exact = diff == 0.0
    hit = exact.any(axis=1)
    diff[exact] = 1.0
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        M = w[None, :] / diff
        M /= M.sum(axis=1, keepdims=True)
    # offsets so small that w/diff overflows: the node value is exact to round-off
    bad = ~np.isfinite(M).all(axis=1)
    if bad.any():
        nearest = np.abs(diff[bad]).argmin(axis=1)
        exact[np.flatnonzero(bad), nearest] = True
        hit |= bad
    M[hit] = exact[hit].astype(float)
    return M


def barycentric_eval(grid: GridSpec, samples, point: float) -> float:
    """Evaluate the degree-N interpolant of nodal ``samples`` at ``point``."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (grid.size,):
        raise ValueError(f"expected {grid.size} samples, got shape {samples.shape}")
    return float(barycentric_matrix(grid, point)[0] @ samples)


def modal_coefficients(grid: GridSpec, samples) -> np.ndarray:
    """Discrete Chebyshev coefficients by CGL quadrature.

    The normalisation uses ``eps_0 = eps_N = 2`` so that ``T_N`` is
    reproduced exactly by the discrete transform.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (grid.size,):
        raise ValueError(f"expected {grid.size} samples, got shape {samples.shape}")
    n = grid.order
    vander = chebyshev.chebvander(grid.nodes, n)
    norm = np.full(n + 1, np.pi / 2)
    norm[0] = norm[-1] = np.pi
    return vander.T @ (grid.quad_weights * samples) / norm
