"""Event-driven simulation of the state-dependent jump process and its
coupled stable-like subordinators.

The process starts at ``start_value`` and jumps at every point ``(t_n, z_n)``
by ``(1 + z_n) ** (-1 / gamma(M(t_n-)))``.  Replaying the sorted points is
exact; the only approximation is the truncation ``z <= z_max`` of the
driving measure, whose expected cost is :func:`truncation_error_bound`.
"""

from __future__ import annotations

import bisect
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._io import atomic_write_text, fmt17
from .points import PointSystem

__all__ = [
    "HypothesisWarning",
    "GammaSpec",
    "JumpPath",
    "LevyParams",
    "g_kernel",
    "simulate_M",
    "simulate_levy",
    "jump_identity_residual",
    "truncation_error_bound",
    "z_max_from_u_min",
]


class HypothesisWarning(UserWarning):
    """The index function is nondecreasing but not strictly increasing."""


@dataclass(frozen=True, eq=False)
class GammaSpec:
    """Piecewise-linear index function with values in ``[eps, 1 - eps]``.

    Between breakpoints the function is interpolated linearly; outside the
    breakpoint range it is constant.  The result is clipped to
    ``[epsilon, 1 - epsilon]``.

    Parameters
    ----------
    breakpoints : sequence of (y, gamma) pairs
        States must be strictly increasing, values nondecreasing.
    epsilon : float
        Range bound, ``0 < epsilon < 1/2``.
    """

    breakpoints: tuple
    epsilon: float
    ys: np.ndarray = field(init=False, repr=False)
    vals: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        bp = tuple((float(y), float(g)) for y, g in self.breakpoints)
        if not bp:
            raise ValueError("at least one breakpoint is required")
        eps = float(self.epsilon)
        if not 0 < eps < 0.5:
            raise ValueError("epsilon must lie in (0, 1/2)")
        ys = np.array([p[0] for p in bp])
        vals = np.array([p[1] for p in bp])
        if not (np.all(np.isfinite(ys)) and np.all(np.isfinite(vals))):
            raise ValueError("breakpoints must be finite")
        if np.any(np.diff(ys) <= 0):
            raise ValueError("breakpoint states must be strictly increasing")
        if np.any(np.diff(vals) < 0):
            raise ValueError("gamma must be nondecreasing")
        if np.any(vals < eps) or np.any(vals > 1 - eps):
            raise ValueError("gamma values must lie in [epsilon, 1 - epsilon]")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "vals", vals)
        # constant extrapolation makes every index function flat beyond ys[-1]
        warnings.warn(
            f"gamma is flat beyond y={float(ys[-1])!r}"
            + ("" if self.strictly_increasing else " and on some segments")
            + "; only nondecreasing, simulation is unaffected",
            HypothesisWarning, stacklevel=3)

    @classmethod
    def constant(cls, value: float, epsilon: float | None = None) -> "GammaSpec":
        if epsilon is None:
            epsilon = min(value, 1 - value, 0.25)
        return cls(((0.0, value),), epsilon)

    @classmethod
    def clipped_ramp(cls) -> "GammaSpec":
        """``gamma(y) = min(1/2 + y/4, 0.9)``."""
        return cls(((0.0, 0.5), (1.6, 0.9)), 0.05)

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.vals) / np.diff(self.ys)

    @property
    def lipschitz(self) -> float:
        s = self.slopes
        return float(np.abs(s).max()) if s.size else 0.0

    @property
    def strictly_increasing(self) -> bool:
        """All segment slopes are positive (the tail is ignored)."""
        s = self.slopes
        return bool(s.size) and bool(np.all(s > 0))

    def __call__(self, y):
        lo, hi = self.epsilon, 1 - self.epsilon
        if np.ndim(y) == 0:
            return min(max(self.scalar(float(y)), lo), hi)
        return np.clip(np.interp(y, self.ys, self.vals), lo, hi)

    def scalar(self, y: float) -> float:
        """Fast pure-Python evaluation for the event loop."""
        ys, vals = self._lists
        if y <= ys[0]:
            g = vals[0]
        elif y >= ys[-1]:
            g = vals[-1]
        else:
            i = bisect.bisect_right(ys, y) - 1
            # same operation order as np.interp, so both paths agree bitwise
            slope = (vals[i + 1] - vals[i]) / (ys[i + 1] - ys[i])
            g = slope * (y - ys[i]) + vals[i]
        return min(max(g, self.epsilon), 1 - self.epsilon)

    @cached_property
    def _lists(self):
        return [p[0] for p in self.breakpoints], [p[1] for p in self.breakpoints]

    def format(self) -> str:
        """Breakpoints as ``"y:g,y:g"`` text."""
        return ",".join(f"{y!r}:{g!r}" for y, g in self.breakpoints)

    @classmethod
    def parse(cls, text: str, epsilon: float) -> "GammaSpec":
        pairs = []
        for item in text.split(","):
            y, g = item.split(":")
            pairs.append((float(y), float(g)))
        return cls(tuple(pairs), epsilon)


@dataclass(frozen=True)
class LevyParams:
    alpha: float

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")


@dataclass(frozen=True, eq=False)
class JumpPath:
    """Nondecreasing cadlag step function.

    ``left_values[k]`` is the value just before the k-th jump and
    ``right_values[k] = left_values[k] + jump_sizes[k]`` the value at it.
    """

    jump_times: np.ndarray
    jump_sizes: np.ndarray
    left_values: np.ndarray
    start_value: float = 0.0
    horizon: float = 1.0

    def __post_init__(self):
        for arr in (self.jump_times, self.jump_sizes, self.left_values):
            arr.setflags(write=False)

    @classmethod
    def from_jumps(cls, times, sizes, start_value=0.0, horizon=1.0) -> "JumpPath":
        times = np.asarray(times, dtype=float)
        sizes = np.asarray(sizes, dtype=float)
        left = np.empty_like(sizes)
        acc = float(start_value)
        for k, s in enumerate(sizes.tolist()):
            left[k] = acc
            acc += s
        return cls(times.copy(), sizes.copy(), left, float(start_value), float(horizon))

    @property
    def n_jumps(self) -> int:
        return int(self.jump_times.size)

    @property
    def right_values(self) -> np.ndarray:
        return self.left_values + self.jump_sizes

    @cached_property
    def _levels(self) -> np.ndarray:
        # value after 0, 1, ..., n jumps
        return np.concatenate([[self.start_value], self.right_values])

    @property
    def end_value(self) -> float:
        return float(self._levels[-1])

    def value(self, t):
        """``M(t)``: right-continuous evaluation."""
        idx = np.searchsorted(self.jump_times, t, side="right")
        out = self._levels[idx]
        return float(out) if np.ndim(out) == 0 else out

    def left_limit(self, t):
        """``M(t-)``."""
        idx = np.searchsorted(self.jump_times, t, side="left")
        out = self._levels[idx]
        return float(out) if np.ndim(out) == 0 else out

    def is_jump_time(self, t: float) -> bool:
        i = np.searchsorted(self.jump_times, t)
        return bool(i < self.n_jumps and self.jump_times[i] == t)

    def total_variation(self) -> float:
        return self.end_value - self.start_value

    def to_csv(self, path) -> None:
        lines = ["t,left_value,jump_size"]
        lines += [f"{fmt17(t)},{fmt17(l)},{fmt17(s)}"
                  for t, l, s in zip(self.jump_times.tolist(),
                                     self.left_values.tolist(),
                                     self.jump_sizes.tolist())]
        atomic_write_text(path, "\n".join(lines) + "\n")

    def sampled_csv(self, path, n_grid: int = 1000) -> None:
        """Write ``t,M(t)`` on ``n_grid + 1`` uniform points of ``[0, horizon]``."""
        grid = np.linspace(0.0, self.horizon, n_grid + 1)
        vals = self.value(grid)
        lines = ["t,M(t)"] + [f"{fmt17(t)},{fmt17(v)}"
                              for t, v in zip(grid.tolist(), vals.tolist())]
        atomic_write_text(path, "\n".join(lines) + "\n")


def g_kernel(beta, z):
    """Jump size ``(1 + z) ** (-1 / beta)`` for index ``beta`` and mark ``z``."""
    beta_arr = np.asarray(beta, dtype=float)
    if np.any((beta_arr <= 0) | (beta_arr >= 1)):
        raise ValueError("beta must lie in (0, 1)")
    if np.any(np.asarray(z) < 0):
        raise ValueError("z must be nonnegative")
    if np.ndim(beta) == 0 and np.ndim(z) == 0:
        return (1.0 + float(z)) ** (-1.0 / float(beta))
    return (1.0 + np.asarray(z, dtype=float)) ** (-1.0 / beta_arr)


def simulate_M(gamma: GammaSpec, points: PointSystem, start_value: float = 0.0) -> JumpPath:
    """Replay ``points`` in time order; each jump uses the index at the
    left limit of the current state."""
    if start_value < 0 or not math.isfinite(start_value):
        raise ValueError("start_value must be a nonnegative finite number")
    if points.count and np.any(np.diff(points.t) < 0):
        raise ValueError("points must be sorted by time")
    z = points.z.tolist()
    sizes = np.empty(len(z))
    left = np.empty(len(z))
    g = gamma.scalar
    m = float(start_value)
    for k, zk in enumerate(z):
        left[k] = m
        dm = (1.0 + zk) ** (-1.0 / g(m))
        sizes[k] = dm
        m += dm
    return JumpPath(points.t.copy(), sizes, left, float(start_value), points.horizon)


def simulate_levy(params: LevyParams | float, points: PointSystem,
                  start_value: float = 0.0) -> JumpPath:
    """Subordinator with constant index driven by the same points."""
    alpha = params.alpha if isinstance(params, LevyParams) else LevyParams(params).alpha
    sizes = (1.0 + points.z) ** (-1.0 / alpha)
    return JumpPath.from_jumps(points.t, sizes, start_value, points.horizon)


def jump_identity_residual(path: JumpPath, points: PointSystem, gamma: GammaSpec) -> float:
    """``max |dM ** gamma(M(t-)) - 1 / (1 + z)|`` over all jumps."""
    if path.n_jumps != points.count or not np.array_equal(path.jump_times, points.t):
        raise ValueError("path and points do not match")
    if path.n_jumps == 0:
        return 0.0
    lhs = path.jump_sizes ** gamma(path.left_values)
    return float(np.max(np.abs(lhs - points.lam)))


def truncation_error_bound(epsilon: float, z_max: float, horizon: float = 1.0) -> float:
    """Upper bound on the expected jump mass lost by keeping only ``z <= z_max``.

    Equals ``horizon * integral_{z_max}^inf (1 + z) ** (-1 / (1 - eps)) dz``.
    """
    if not 0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 1/2)")
    if z_max <= 0 or horizon <= 0:
        raise ValueError("z_max and horizon must be positive")
    a = epsilon / (1 - epsilon)
    return horizon * ((1 - epsilon) / epsilon) * (1.0 + z_max) ** (-a)


def z_max_from_u_min(u_min: float, epsilon: float) -> float:
    """Truncation level retaining every jump ``>= u_min`` at worst-case index."""
    if not 0 < u_min < 1:
        raise ValueError("u_min must lie in (0, 1)")
    return u_min ** (-(1 - epsilon)) - 1.0
