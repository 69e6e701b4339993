"""Singularity spectra: closed forms read off a path, and a coarse-grained
estimate from dyadic increments.

An empty iso-Hölder set is reported as :data:`EMPTY` (``None``) by the
scalar functions and as ``NaN`` inside :class:`SpectrumCurve`; CSV output
writes it as ``NA``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._io import atomic_write_text, fmt17
from .sde import GammaSpec, JumpPath

__all__ = [
    "EMPTY",
    "NoJumpsError",
    "SpectrumCurve",
    "levy_spectrum",
    "interval_spectrum",
    "interval_spectrum_curve",
    "local_spectrum",
    "levy_spectrum_curve",
    "coarse_grained_spectrum",
    "low_h_slope",
]

EMPTY = None


class NoJumpsError(ValueError):
    """The interval holds no jump of the (truncated) path."""


@dataclass(frozen=True, eq=False)
class SpectrumCurve:
    """Sampled spectrum ``h -> d(h)``; ``d`` is NaN where the set is empty."""

    h: np.ndarray
    d: np.ndarray
    interval: tuple
    kind: str
    counts: np.ndarray | None = None

    @property
    def empty(self) -> np.ndarray:
        return np.isnan(self.d)

    def value(self, i: int):
        return EMPTY if math.isnan(self.d[i]) else float(self.d[i])

    def to_csv(self, path) -> None:
        lines = ["h,d"]
        for h, d in zip(self.h.tolist(), self.d.tolist()):
            lines.append(f"{fmt17(h)},{'NA' if math.isnan(d) else fmt17(d)}")
        atomic_write_text(path, "\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path, interval=(0.0, 1.0), kind="loaded") -> "SpectrumCurve":
        h, d = [], []
        with open(path, encoding="utf-8") as fh:
            next(fh)
            for line in fh:
                a, b = line.strip().split(",")
                h.append(float(a))
                d.append(math.nan if b == "NA" else float(b))
        return cls(np.array(h), np.array(d), tuple(interval), kind)


def levy_spectrum(alpha: float, h: float):
    """``h * alpha`` for ``h <= 1/alpha``, EMPTY beyond."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if h < 0:
        raise ValueError("h must be nonnegative")
    return h * alpha if h <= 1.0 / alpha else EMPTY


def levy_spectrum_curve(alpha: float, hs) -> SpectrumCurve:
    hs = np.asarray(hs, dtype=float)
    d = np.array([math.nan if (v := levy_spectrum(alpha, h)) is None else v
                  for h in hs.tolist()])
    return SpectrumCurve(hs, d, (0.0, math.inf), "levy_oracle")


def _left_indices(path: JumpPath, a: float, b: float) -> slice:
    """Positions of the jumps ``s`` in ``(a, b)``."""
    i0 = np.searchsorted(path.jump_times, a, side="right")
    i1 = np.searchsorted(path.jump_times, b, side="left")
    return slice(i0, i1)


def _interval_indices(path: JumpPath, gamma: GammaSpec, a: float, b: float):
    """``gamma(M(s-))`` at the jumps in ``(a, b)`` and whether ``gamma`` is
    unchanged across each of them."""
    if not a < b:
        raise ValueError("need a < b")
    sl = _left_indices(path, a, b)
    g_left = gamma(path.left_values[sl])
    if g_left.size == 0:
        raise NoJumpsError(f"no jump in ({a}, {b})")
    flat = g_left == gamma(path.right_values[sl])
    return g_left, flat


def _sup_qualifying(h: float, g, flat):
    # h * g < 1, or h * g == 1 where gamma o M is locally constant: a flat
    # stretch at level 1/h carries positive Lebesgue measure of exponent h
    prod = h * g
    ok = (prod < 1.0) | ((prod == 1.0) & flat)
    return float(prod[ok].max()) if ok.any() else EMPTY


def interval_spectrum(path: JumpPath, gamma: GammaSpec, a: float, b: float, h: float):
    """Spectrum of the path on the open interval ``(a, b)`` at exponent ``h``.

    Supremum of ``h * gamma(M(s-))`` over jump times ``s`` in ``(a, b)`` with
    ``h * gamma(M(s-)) < 1``; EMPTY when no jump qualifies.  A jump across
    which ``gamma`` does not change also qualifies at equality
    ``h * gamma(M(s-)) = 1``, so that constant ``gamma`` reproduces the Lévy
    spectrum including its endpoint ``(1/alpha, 1)``.
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    g, flat = _interval_indices(path, gamma, a, b)
    return _sup_qualifying(h, g, flat)


def interval_spectrum_curve(path: JumpPath, gamma: GammaSpec, a: float, b: float,
                            hs) -> SpectrumCurve:
    """:func:`interval_spectrum` on a grid of exponents."""
    g, flat = _interval_indices(path, gamma, a, b)
    pairs = np.unique(np.stack([g, flat.astype(float)]), axis=1)
    g, flat = pairs[0], pairs[1] == 1.0
    hs = np.asarray(hs, dtype=float)
    if np.any(hs < 0):
        raise ValueError("h must be nonnegative")
    d = np.array([math.nan if (v := _sup_qualifying(h, g, flat)) is None else v
                  for h in hs.tolist()])
    return SpectrumCurve(hs, d, (float(a), float(b)), "interval_theory")


def local_spectrum(path: JumpPath, gamma: GammaSpec, t: float, h: float):
    """Local spectrum at ``t``.

    At a continuity point it is the Lévy line of index ``gamma(M(t))``; at a
    jump time an extra segment of slope ``gamma(M(t-))`` continues it up to
    ``h = 1/gamma(M(t-))``.
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    g_t = gamma(path.value(t))
    if not path.is_jump_time(t):
        return h * g_t if h * g_t <= 1.0 else EMPTY
    if h * g_t < 1.0:
        return h * g_t
    g_left = gamma(path.left_limit(t))
    return h * g_left if h * g_left <= 1.0 else EMPTY


def coarse_grained_spectrum(path: JumpPath, j: int = 14,
                            bin_width: float = 0.05) -> SpectrumCurve:
    """Large-deviation estimate from the increments over ``2**j`` cells.

    Each nonempty cell ``k`` gets the coarse exponent
    ``log(increment) / log(cell width)``; exponents are binned on multiples
    of ``bin_width`` and ``d = log2(count) / j`` per bin.
    """
    if j < 4:
        raise ValueError("j must be >= 4")
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    if path.n_jumps == 0:
        raise NoJumpsError("path has no jumps")
    n_cells = 2 ** j
    width = path.horizon / n_cells
    cell = np.minimum((path.jump_times / width).astype(np.int64), n_cells - 1)
    incr = np.bincount(cell, weights=path.jump_sizes, minlength=n_cells)
    incr = incr[incr > 0]
    h_cells = np.log(incr) / math.log(width)
    idx = np.rint(h_cells / bin_width).astype(np.int64)
    bins, counts = np.unique(idx, return_counts=True)
    return SpectrumCurve(bins * bin_width, np.log2(counts) / j,
                         (0.0, path.horizon), "coarse_grained", counts)


def low_h_slope(curve: SpectrumCurve, h_max: float | None = None, h_min: float = 0.0,
                min_count: int = 1) -> float:
    """Least-squares slope of ``d`` against ``h`` over populated bins in
    ``(h_min, h_max)``.

    By default ``h_max`` is the location of the peak of ``d``, so only the
    increasing branch is fitted.
    """
    if h_max is None:
        h_max = float(curve.h[np.nanargmax(curve.d)])
    sel = (curve.h > h_min) & (curve.h < h_max) & ~curve.empty
    if curve.counts is not None:
        sel &= curve.counts >= min_count
    if sel.sum() < 2:
        raise ValueError("fewer than two populated bins in range")
    return float(np.polyfit(curve.h[sel], curve.d[sel], 1)[0])
