"""Generalized Burgers-Fisher problem instances.

The equation is

    U_t + sigma1 U^delta U_x - mu U_xx = sigma2 U (1 - U^delta)

on ``eta_range x [0, t_final]``.  After mapping both axes to [-1, 1] it
becomes ``U_t + A (U^(delta+1))_eta - B U_etaeta - C (U - U^(delta+1)) = 0``.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np


class InvalidProblemError(ValueError):
    pass


class OracleUnavailableError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    sigma1: float
    sigma2: float
    delta: int
    t_final: float
    mu: float = 1.0
    eta_range: tuple = (0.0, 1.0)

    def __post_init__(self):
        if isinstance(self.delta, bool) or int(self.delta) != self.delta or self.delta < 1:
            raise InvalidProblemError(f"delta must be a positive integer, got {self.delta!r}")
        object.__setattr__(self, "delta", int(self.delta))
        eta_l, eta_r = (float(v) for v in self.eta_range)
        object.__setattr__(self, "eta_range", (eta_l, eta_r))
        if not eta_r > eta_l:
            raise InvalidProblemError(f"eta_range must be increasing, got {self.eta_range}")
        if not self.t_final > 0:
            raise InvalidProblemError(f"t_final must be positive, got {self.t_final}")
        if not self.mu > 0:
            raise InvalidProblemError(f"mu must be positive, got {self.mu}")
        if self.sigma1 < 0:
            raise InvalidProblemError(f"sigma1 must be non-negative, got {self.sigma1}")
        for name in ("sigma1", "sigma2", "mu", "t_final"):
            if not np.isfinite(getattr(self, name)):
                raise InvalidProblemError(f"{name} must be finite")

    @property
    def time_range(self) -> tuple:
        return (0.0, float(self.t_final))


@dataclass(frozen=True)
class TransformedCoefficients:
    A: float
    B: float
    C: float


@dataclass(frozen=True)
class BoundaryData:
    """Initial profile ``h(eta)`` and side traces ``g1(t)``, ``g2(t)`` on [-1, 1].

    The callables must accept numpy arrays.
    """

    h: Callable
    g1: Callable
    g2: Callable

    def corner_mismatch(self) -> float:
        left = abs(float(self.h(np.array([-1.0]))[0] - self.g1(np.array([-1.0]))[0]))
        right = abs(float(self.h(np.array([1.0]))[0] - self.g2(np.array([-1.0]))[0]))
        return max(left, right)


def _check_interval(interval) -> tuple:
    lo, hi = (float(v) for v in interval)
    if not hi != lo or not np.isfinite(hi - lo):
        raise InvalidProblemError(f"degenerate interval {interval!r}")
    return lo, hi


def affine_map(value, source_interval):
    """Map ``[I_L, I_R]`` onto [-1, 1]."""
    lo, hi = _check_interval(source_interval)
    return (2.0 * np.asarray(value, dtype=float) - (lo + hi)) / (hi - lo)


def affine_unmap(value, target_interval):
    """Map [-1, 1] back onto ``[I_L, I_R]``; -1 lands on ``I_L`` exactly."""
    lo, hi = _check_interval(target_interval)
    return lo + (np.asarray(value, dtype=float) + 1.0) * (0.5 * (hi - lo))


def transformed_coefficients(spec: ProblemSpec) -> TransformedCoefficients:
    length = spec.eta_range[1] - spec.eta_range[0]
    T = spec.t_final
    return TransformedCoefficients(
        A=spec.sigma1 * T / ((spec.delta + 1) * length),
        B=2.0 * spec.mu * T / length**2,
        C=spec.sigma2 * T / 2.0,
    )


def wave_parameters(spec: ProblemSpec) -> tuple:
    """Steepness ``U1`` and speed ``U2`` of the tanh travelling wave."""
    d = spec.delta
    if spec.sigma1 == 0:
        if spec.sigma2 != 0:
            raise OracleUnavailableError("no travelling-wave solution for sigma1 = 0, sigma2 != 0")
        return 0.0, 0.0
    u1 = -spec.sigma1 * d / (2.0 * (d + 1))
    u2 = spec.sigma1 / (d + 1) + spec.sigma2 * (d + 1) / spec.sigma1
    return u1, u2


def exact_solution(spec: ProblemSpec, eta_physical, t_physical):
    u1, u2 = wave_parameters(spec)
    eta = np.asarray(eta_physical, dtype=float)
    t = np.asarray(t_physical, dtype=float)
    return (0.5 + 0.5 * np.tanh(u1 * (eta - u2 * t))) ** (1.0 / spec.delta)


def benchmark_boundary_data(spec: ProblemSpec) -> BoundaryData:
    """Initial and boundary traces of the exact solution, in reference coordinates."""
    wave_parameters(spec)
    eta_l, eta_r = spec.eta_range
    times = spec.time_range

    def h(eta):
        return exact_solution(spec, affine_unmap(eta, spec.eta_range), 0.0)

    def g1(t):
        return exact_solution(spec, eta_l, affine_unmap(t, times))

    def g2(t):
        return exact_solution(spec, eta_r, affine_unmap(t, times))

    return BoundaryData(h, g1, g2)
