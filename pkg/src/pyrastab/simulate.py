"""Method-of-steps time integration for delayed-feedback systems.

The controlled equation is

    x'(t) = f(x(t), t) + K [x(t) - x(t - T)],

integrated with classical RK4 on a uniform grid whose step divides the
delay exactly, so the delayed argument at grid points lands on a stored
grid point and at stage midpoints on a stored interval midpoint.  The
delay term then carries no interpolation error beyond the cubic dense
output, which keeps time-domain growth rates comparable with spectral
predictions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.interpolate

from .errors import InputError
from .problems import DelayFeedback

__all__ = [
    "HistorySegment",
    "Trajectory",
    "integrate",
    "growth_rate",
    "perturbed_history",
]


class HistorySegment:
    """An initial function on [-T, 0] with cubic interpolation.

    The segment is the state of the delay equation: integration starts
    from a whole function, not a point.
    """

    def __init__(self, grid: np.ndarray, values: np.ndarray):
        grid = np.asarray(grid, dtype=float)
        values = np.asarray(values, dtype=float)
        if grid.ndim != 1 or grid.size < 4:
            raise InputError("history grid needs at least four points")
        if values.ndim != 2 or values.shape[0] != grid.size:
            raise InputError("history values must be (len(grid), dimension)")
        if not np.all(np.diff(grid) > 0.0):
            raise InputError("history grid must be strictly increasing")
        if grid[-1] != 0.0:
            raise InputError("history grid must end at 0")
        if grid[0] >= 0.0:
            raise InputError("history grid must start at -delay < 0")
        if not np.all(np.isfinite(values)):
            raise InputError("history values must be finite")
        self.grid = grid
        self.values = values
        self._spline = scipy.interpolate.CubicSpline(grid, values, axis=0)

    @property
    def delay(self) -> float:
        return -float(self.grid[0])

    @property
    def dimension(self) -> int:
        return int(self.values.shape[1])

    @property
    def final(self) -> np.ndarray:
        """The state at time 0, where integration starts."""
        return self.values[-1].copy()

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        slack = 1e-9 * self.delay
        if np.any(s < self.grid[0] - slack) or np.any(s > slack):
            raise InputError("history evaluated outside [-delay, 0]")
        return self._spline(np.clip(s, self.grid[0], 0.0))

    @classmethod
    def from_constant(cls, point: np.ndarray, delay: float) -> "HistorySegment":
        point = np.asarray(point, dtype=float).reshape(-1)
        grid = np.linspace(-delay, 0.0, 8)
        return cls(grid, np.tile(point, (grid.size, 1)))

    @classmethod
    def from_callable(
        cls, fun: Callable[[float], np.ndarray], delay: float, samples: int = 129
    ) -> "HistorySegment":
        grid = np.linspace(-delay, 0.0, samples)
        values = np.array([np.asarray(fun(s), dtype=float).reshape(-1) for s in grid])
        return cls(grid, values)


def perturbed_history(
    point: np.ndarray,
    delay: float,
    amplitude: float = 1e-6,
    seed: Optional[int] = None,
    samples: int = 33,
) -> HistorySegment:
    """Uniform random history of the given amplitude around a point."""
    point = np.asarray(point, dtype=float).reshape(-1)
    if not amplitude > 0.0:
        raise InputError("amplitude must be positive")
    rng = np.random.default_rng(seed)
    grid = np.linspace(-delay, 0.0, samples)
    noise = rng.uniform(-amplitude, amplitude, size=(samples, point.size))
    return HistorySegment(grid, point[None, :] + noise)


@dataclass(frozen=True)
class Trajectory:
    """Dense output of a method-of-steps run.

    `derivs` holds the right-hand side at each grid point; together with
    `states` it defines the cubic Hermite dense output used both for the
    delayed lookups during integration and for `sample`.  `blown_at` is
    the first time a state left the finite range, or None.
    """

    times: np.ndarray
    states: np.ndarray
    derivs: np.ndarray
    blown_at: Optional[float] = None

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    def sample(self, t) -> np.ndarray:
        """Cubic Hermite evaluation at arbitrary times inside the run."""
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t < self.times[0]) or np.any(t > self.times[-1] * (1 + 1e-12) + 1e-300):
            raise InputError("sample time outside the stored trajectory")
        idx = np.clip(np.searchsorted(self.times, t, side="right") - 1, 0, len(self) - 2)
        h = self.times[idx + 1] - self.times[idx]
        u = np.clip((t - self.times[idx]) / h, 0.0, 1.0)[:, None]
        x0 = self.states[idx]
        x1 = self.states[idx + 1]
        d0 = self.derivs[idx] * h[:, None]
        d1 = self.derivs[idx + 1] * h[:, None]
        h00 = (1 + 2 * u) * (1 - u) ** 2
        h10 = u * (1 - u) ** 2
        h01 = u * u * (3 - 2 * u)
        h11 = u * u * (u - 1)
        out = h00 * x0 + h10 * d0 + h01 * x1 + h11 * d1
        return out[0] if scalar else out

    def deviations(self, reference=None) -> np.ndarray:
        """Euclidean distance from a reference point at each stored time."""
        if reference is None:
            reference = np.zeros(self.states.shape[1])
        reference = np.asarray(reference, dtype=float).reshape(-1)
        return np.linalg.norm(self.states - reference[None, :], axis=1)


def integrate(
    field: Callable[[np.ndarray, float], np.ndarray],
    feedback: DelayFeedback,
    history: HistorySegment,
    t_end: float,
    dt: Optional[float] = None,
    blow_up: float = 1e9,
) -> Trajectory:
    """Integrate x' = f(x,t) + K[x(t) - x(t-T)] from a history segment.

    The step is rounded down so that it divides the delay: delayed grid
    values are prior grid values, delayed stage midpoints are dense-output
    midpoints of prior intervals.  A non-finite or oversized state stops
    the run and is reported through `blown_at` rather than raising: a
    blow-up is a legitimate (unstable) outcome.
    """
    delay = feedback.delay
    gain = feedback.gain
    n = history.dimension
    if gain.shape[0] != n:
        raise InputError("history dimension does not match the gain")
    if abs(history.delay - delay) > 1e-9 * delay:
        raise InputError("history covers a different delay than the feedback")
    if not t_end > 0.0:
        raise InputError("t_end must be positive")
    if dt is None:
        dt = delay / 64.0
    if not 0.0 < dt <= delay:
        raise InputError("dt must lie in (0, delay]")
    m = int(math.ceil(delay / dt - 1e-12))
    h = delay / m
    steps = int(math.ceil(t_end / h - 1e-12))

    def rhs(t: float, x: np.ndarray, xd: np.ndarray) -> np.ndarray:
        return np.asarray(field(x, t), dtype=float) + gain @ (x - xd)

    xs = np.empty((steps + 1, n))
    fs = np.empty((steps + 1, n))
    xs[0] = history.final
    scale = max(1.0, float(np.max(np.abs(history.values))))
    limit = blow_up * scale
    blown_at: Optional[float] = None

    def delayed_point(i: int) -> np.ndarray:
        # grid-aligned delayed value: index i may reach into the history
        if i >= 0:
            return xs[i]
        return history(i * h)

    last = steps
    for j in range(steps):
        t = j * h
        jb = j - m  # index of t - T on the grid
        d_node = delayed_point(jb)
        fs[j] = rhs(t, xs[j], d_node)
        k1 = fs[j]
        if jb + 1 <= 0:
            d_mid = history((jb + 0.5) * h)
        else:
            # both endpoints of the delayed interval are already computed
            d_mid = 0.5 * (xs[jb] + xs[jb + 1]) + (h / 8.0) * (fs[jb] - fs[jb + 1])
        d_end = delayed_point(jb + 1)
        k2 = rhs(t + 0.5 * h, xs[j] + 0.5 * h * k1, d_mid)
        k3 = rhs(t + 0.5 * h, xs[j] + 0.5 * h * k2, d_mid)
        k4 = rhs(t + h, xs[j] + h * k3, d_end)
        nxt = xs[j] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        finite = bool(np.all(np.isfinite(nxt)))
        if not finite or np.max(np.abs(nxt)) > limit:
            blown_at = t + h
            if finite:
                xs[j + 1] = nxt
                last = j + 1
            else:
                last = j
            break
        xs[j + 1] = nxt
    fs[last] = rhs(last * h, xs[last], delayed_point(last - m))
    times = np.arange(last + 1) * h
    return Trajectory(times, xs[: last + 1], fs[: last + 1], blown_at)


def growth_rate(
    trajectory: Trajectory,
    window: float,
    reference=None,
) -> float:
    """Least-squares slope of log distance-from-reference over the tail.

    The sign classifies stability; a trajectory that converged below
    floating-point resolution is reported as -inf (strongly stable).
    """
    if not window > 0.0:
        raise InputError("window must be positive")
    span = trajectory.times[-1] - trajectory.times[0]
    if span <= 2.0 * window:
        raise InputError("trajectory must be longer than twice the window")
    d = trajectory.deviations(reference)
    mask = trajectory.times >= trajectory.times[-1] - window
    tail = d[mask]
    if np.max(tail) < 1e-280:
        return float("-inf")
    safe = np.clip(tail, 1e-300, None)
    slope = np.polyfit(trajectory.times[mask], np.log(safe), 1)[0]
    return float(slope)
