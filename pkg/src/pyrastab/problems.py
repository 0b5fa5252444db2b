"""Problem statements: a vector field or periodic coefficient, an operating
point or period, and the delayed-feedback law acting on it.

The feedback term is always K [x(t) - x(t - delay)] with a real square gain
matrix K; scaling it by a homotopy parameter alpha in [0, 1] is handled by
the analyses, not stored here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InputError
from .linalg import spectral_norm

__all__ = [
    "DelayFeedback",
    "EquilibriumProblem",
    "PeriodicLinearProblem",
    "validate_equilibrium",
]


def _as_square_real(a, what: str) -> np.ndarray:
    arr = np.asarray(a)
    if np.iscomplexobj(arr):
        if np.any(arr.imag != 0.0):
            raise InputError(f"{what} must be real")
        arr = arr.real
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InputError(f"{what} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{what} must have finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


def _as_real_vector(x, what: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise InputError(f"{what} must be a one-dimensional vector")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{what} must have finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class DelayFeedback:
    """Gain matrix and delay of the difference feedback K[x(t) - x(t-T)]."""

    gain: np.ndarray
    delay: float

    def __post_init__(self) -> None:
        gain = _as_square_real(self.gain, "gain")
        delay = float(self.delay)
        if not np.isfinite(delay) or delay <= 0.0:
            raise InputError(f"delay must be positive and finite, got {delay}")
        object.__setattr__(self, "gain", gain)
        object.__setattr__(self, "delay", delay)

    @property
    def dimension(self) -> int:
        return self.gain.shape[0]

    @property
    def gain_norm(self) -> float:
        return spectral_norm(self.gain)


@dataclass(frozen=True)
class EquilibriumProblem:
    """Equilibrium of an autonomous field under delayed feedback."""

    field: object
    point: np.ndarray
    feedback: DelayFeedback

    def __post_init__(self) -> None:
        point = _as_real_vector(self.point, "point")
        if self.feedback.dimension != len(point):
            raise InputError(
                f"gain is {self.feedback.dimension}x{self.feedback.dimension} "
                f"but the point has dimension {len(point)}"
            )
        dim = getattr(self.field, "dimension", None)
        if dim is not None and dim != len(point):
            raise InputError(
                f"field dimension {dim} does not match point dimension {len(point)}"
            )
        object.__setattr__(self, "point", point)

    @property
    def dimension(self) -> int:
        return len(self.point)

    def jacobian(self, t: float = 0.0) -> np.ndarray:
        return np.asarray(self.field.jacobian(self.point, t), dtype=float)


@dataclass(frozen=True)
class PeriodicLinearProblem:
    """Periodic linear system x' = A(t) x, delay locked to the period.

    Only the noninvasive case delay == period is meaningful for the
    feedback law used here, so mismatched values are rejected outright.
    """

    coefficient: Callable[[float], np.ndarray]
    period: float
    feedback: DelayFeedback

    def __post_init__(self) -> None:
        period = float(self.period)
        if not np.isfinite(period) or period <= 0.0:
            raise InputError(f"period must be positive and finite, got {period}")
        if self.feedback.delay != period:
            raise InputError(
                f"delay {self.feedback.delay} must equal the period {period}"
            )
        object.__setattr__(self, "period", period)
        n = self.feedback.dimension
        # sampled sanity checks: shape, finiteness, periodicity
        scale = 0.0
        for t in np.linspace(0.0, period, 7):
            a = np.asarray(self.coefficient(float(t)), dtype=float)
            if a.shape != (n, n):
                raise InputError(
                    f"coefficient at t={t:g} has shape {a.shape}, expected {(n, n)}"
                )
            if not np.all(np.isfinite(a)):
                raise InputError(f"coefficient at t={t:g} is not finite")
            scale = max(scale, float(np.max(np.abs(a))))
            b = np.asarray(self.coefficient(float(t) + period), dtype=float)
            if np.max(np.abs(b - a)) > 1e-9 * max(1.0, scale):
                raise InputError(f"coefficient is not {period:g}-periodic at t={t:g}")

    @property
    def dimension(self) -> int:
        return self.feedback.dimension

    def coefficient_at(self, t: float) -> np.ndarray:
        return np.asarray(self.coefficient(float(t)), dtype=float)


def validate_equilibrium(
    problem: EquilibriumProblem, samples: int = 16
) -> float:
    """Largest field residual ||f(x*, t)|| over sampled t in [0, delay].

    Returns the residual; the caller decides whether it passes tol_eq.
    """
    worst = 0.0
    for t in np.linspace(0.0, problem.feedback.delay, samples):
        fx = np.asarray(problem.field(problem.point, float(t)), dtype=float)
        if not np.all(np.isfinite(fx)):
            raise InputError(f"field is not finite at the point (t={t:g})")
        worst = max(worst, float(np.linalg.norm(fx)))
    return worst
