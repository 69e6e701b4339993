"""Pointwise regularity: approximation rates by the jump times and
empirical Hölder exponents from oscillations.

At a non-jump time the Hölder exponent of the process equals
``1 / (delta_t * gamma(M(t)))``, where ``delta_t`` measures how well ``t``
is approximated by the balls ``B(t_n, lambda_n ** delta)``.  Both sides are
estimated here at finite scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._io import atomic_write_text, fmt17
from .points import PointSystem, band_index
from .sde import GammaSpec, JumpPath

__all__ = [
    "DEFAULT_J_WINDOW",
    "DEFAULT_DELTA_CAP",
    "RegularityField",
    "approximation_rate",
    "approximation_rates",
    "oscillation",
    "holder_estimate",
    "holder_estimates",
    "exponent_theory",
    "regularity_field",
]

DEFAULT_J_WINDOW = 1
DEFAULT_DELTA_CAP = 16.0


class _Bands:
    """Events grouped by dyadic band, each group sorted by time."""

    def __init__(self, points: PointSystem):
        if points.count == 0:
            raise ValueError("empty point system")
        lam = points.lam
        j = band_index(lam)
        self.groups = {}
        for b in np.unique(j).tolist():
            sel = j == b
            self.groups[b] = (points.t[sel], lam[sel])
        self.horizon = points.horizon
        self.z_max = points.z_max

    def finest(self, j_window: int, complete_only: bool) -> list[int]:
        bands = sorted(self.groups, reverse=True)
        if complete_only:
            # band j is fully inside the truncation iff 2**(j+1) - 1 <= z_max
            full = [b for b in bands if 2.0 ** (b + 1) - 1 <= self.z_max]
            bands = full or bands
        return bands[:j_window]


def _band_ratio(times, lam, t, j, delta_cap):
    # only events closer than 2**-j can give a ratio >= 1
    r = 2.0 ** (-j)
    lo = np.searchsorted(times, t - r, side="right")
    hi = np.searchsorted(times, t + r, side="left")
    best = np.zeros(np.shape(t))
    for k in range(int(np.max(hi - lo, initial=0))):
        idx = lo + k
        ok = idx < hi
        i = np.where(ok, idx, 0)
        d = np.abs(t - times[i])
        l = lam[i]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.log(d) / np.log(l)
        ratio = np.where(d == 0, delta_cap, ratio)
        ratio = np.where(l == 1.0, np.where(d < 1, delta_cap, 0.0), ratio)
        best = np.where(ok, np.maximum(best, ratio), best)
    return best


def approximation_rates(points: PointSystem, t, j_window: int = DEFAULT_J_WINDOW,
                        delta_cap: float = DEFAULT_DELTA_CAP,
                        complete_only: bool = True) -> np.ndarray:
    """Vectorised :func:`approximation_rate` over an array of times."""
    if j_window < 1:
        raise ValueError("j_window must be positive")
    if delta_cap <= 1:
        raise ValueError("delta_cap must exceed 1")
    t = np.asarray(t, dtype=float)
    bands = _Bands(points)
    best = np.ones(t.shape)
    for j in bands.finest(j_window, complete_only):
        times, lam = bands.groups[j]
        best = np.maximum(best, _band_ratio(times, lam, t, j, delta_cap))
    return np.minimum(best, delta_cap)


def approximation_rate(points: PointSystem, t: float, j_window: int = DEFAULT_J_WINDOW,
                       delta_cap: float = DEFAULT_DELTA_CAP,
                       complete_only: bool = True) -> float:
    """Finite-scale approximation rate of ``t`` by the point system.

    For each of the ``j_window`` finest nonempty bands, take the largest
    ``log(1/|t - t_n|) / log(1/lambda_n)`` over the band; the estimate is the
    maximum of these, floored at 1 and capped at ``delta_cap``.

    With ``complete_only`` (default) bands cut by the truncation ``z_max``
    are skipped: their sparse population would bias the estimate down.
    """
    return float(approximation_rates(points, np.asarray(t, dtype=float),
                                     j_window, delta_cap, complete_only))


def oscillation(path: JumpPath, t, r):
    """``M(t + r) - M(t - r)`` with the window clipped to ``[0, horizon]``."""
    if np.any(np.asarray(r) <= 0):
        raise ValueError("radius must be positive")
    hi = np.minimum(np.asarray(t) + r, path.horizon)
    lo = np.maximum(np.asarray(t) - r, 0.0)
    if np.any(hi < lo):
        raise ValueError("window does not meet [0, horizon]")
    out = np.asarray(path.value(hi)) - np.asarray(path.value(lo))
    return float(out) if np.ndim(out) == 0 else out


def _slope_from_logs(js, logosc, h_cap):
    finite = np.isfinite(logosc)
    if not finite.any():
        return h_cap, True  # no jumps at any scale
    if finite.sum() < 2:
        return h_cap, False
    x, y = js[finite], logosc[finite]
    slope = np.polyfit(x, y, 1)[0]
    return float(min(max(-slope, 0.0), h_cap)), True


def holder_estimate(path: JumpPath, t: float, j_lo: int = 6, j_hi: int = 14,
                    h_cap: float = 16.0, full_output: bool = False):
    """Hölder exponent at ``t`` from the decay of oscillations.

    Fits ``log2 osc(t, 2**-j)`` against ``j`` on ``j_lo..j_hi`` and returns
    minus the slope, clipped to ``[0, h_cap]``.  Scales with zero oscillation
    are dropped; if every scale is empty the answer is ``h_cap``.

    With ``full_output=True`` a ``(h, ok)`` pair is returned where ``ok`` is
    False when fewer than two usable scales remained.
    """
    if j_lo >= j_hi:
        raise ValueError("need j_lo < j_hi")
    js = np.arange(j_lo, j_hi + 1, dtype=float)
    osc = oscillation(path, np.full(js.shape, t), 2.0 ** -js)
    with np.errstate(divide="ignore"):
        logosc = np.log2(osc)
    h, ok = _slope_from_logs(js, logosc, h_cap)
    return (h, ok) if full_output else h


def holder_estimates(path: JumpPath, ts, j_lo: int = 6, j_hi: int = 14,
                     h_cap: float = 16.0) -> np.ndarray:
    ts = np.asarray(ts, dtype=float)
    js = np.arange(j_lo, j_hi + 1, dtype=float)
    osc = oscillation(path, ts[:, None], 2.0 ** -js[None, :])
    with np.errstate(divide="ignore"):
        logosc = np.log2(osc)
    return np.array([_slope_from_logs(js, row, h_cap)[0] for row in logosc])


def exponent_theory(path: JumpPath, gamma: GammaSpec, delta_hat, t):
    """``1 / (delta_hat * gamma(M(t)))``."""
    if np.any(np.asarray(delta_hat) < 1):
        raise ValueError("delta_hat must be >= 1")
    out = 1.0 / (np.asarray(delta_hat) * gamma(path.value(t)))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class RegularityField:
    grid: np.ndarray
    delta_hat: np.ndarray
    h_hat: np.ndarray
    h_theory: np.ndarray

    def to_csv(self, path) -> None:
        lines = ["t,delta_hat,h_hat,h_theory"]
        for row in zip(self.grid.tolist(), self.delta_hat.tolist(),
                       self.h_hat.tolist(), self.h_theory.tolist()):
            lines.append(",".join(fmt17(v) for v in row))
        atomic_write_text(path, "\n".join(lines) + "\n")


def regularity_field(path: JumpPath, points: PointSystem, gamma: GammaSpec, grid,
                     j_lo: int = 6, j_hi: int = 14,
                     j_window: int = DEFAULT_J_WINDOW,
                     delta_cap: float = DEFAULT_DELTA_CAP) -> RegularityField:
    grid = np.asarray(grid, dtype=float)
    dh = approximation_rates(points, grid, j_window, delta_cap)
    hh = holder_estimates(path, grid, j_lo, j_hi, h_cap=delta_cap)
    ht = exponent_theory(path, gamma, dh, grid)
    return RegularityField(grid, dh, hh, np.atleast_1d(ht))
