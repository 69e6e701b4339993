"""Driving Poisson point system and dyadic-band combinatorics.

Points ``(t_n, z_n)`` are drawn from a Poisson measure with intensity
``dt dz`` on ``[0, horizon] x [0, z_max]``.  Each point carries the radius
``lambda_n = 1 / (1 + z_n)``, and the balls ``B(t_n, lambda_n)`` are grouped
into dyadic bands ``2**-(j+1) < lambda <= 2**-j``.

Random numbers come from numpy's ``PCG64`` bit generator seeded directly
with the user seed, so a given ``(horizon, z_max, seed)`` reproduces the
same system bit for bit on every platform numpy supports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from ._io import atomic_write_text, fmt17

__all__ = [
    "PoissonEvent",
    "PointSystem",
    "make_rng",
    "generate_points",
    "band_index",
    "band_partition",
    "overlap_counts",
    "covering_fraction",
]


def make_rng(seed: int) -> np.random.Generator:
    """Generator used everywhere in the package (PCG64, 64-bit seed)."""
    return np.random.Generator(np.random.PCG64(int(seed)))


class PoissonEvent(NamedTuple):
    t: float
    z: float
    lam: float


@dataclass(frozen=True, eq=False)
class PointSystem:
    """Time-ordered Poisson events with marks.

    Use :func:`generate_points` for random systems or
    :meth:`from_arrays` for hand-built ones.  The arrays are read-only.
    """

    t: np.ndarray
    z: np.ndarray
    horizon: float
    z_max: float
    seed: int | None = None

    def __post_init__(self):
        for arr in (self.t, self.z):
            arr.setflags(write=False)

    @classmethod
    def from_arrays(cls, t, z, horizon: float = 1.0, z_max: float | None = None,
                    seed: int | None = None) -> "PointSystem":
        """Build a system from raw times and marks.

        Events are sorted by ``(t, z)`` and exact duplicates are dropped.
        """
        t = np.asarray(t, dtype=float).ravel()
        z = np.asarray(z, dtype=float).ravel()
        if t.shape != z.shape:
            raise ValueError("t and z must have the same length")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(z))):
            raise ValueError("event coordinates must be finite")
        if np.any(z < 0):
            raise ValueError("marks must be nonnegative")
        horizon = float(horizon)
        if not (math.isfinite(horizon) and horizon > 0):
            raise ValueError("horizon must be a positive finite number")
        if np.any((t < 0) | (t > horizon)):
            raise ValueError("event times must lie in [0, horizon]")
        if z_max is None:
            z_max = float(z.max()) if z.size else 0.0
        elif np.any(z > z_max):
            raise ValueError("marks exceed z_max")
        order = np.lexsort((z, t))
        t, z = t[order], z[order]
        if t.size > 1:
            keep = np.ones(t.size, dtype=bool)
            keep[1:] = (t[1:] != t[:-1]) | (z[1:] != z[:-1])
            t, z = t[keep], z[keep]
        return cls(t.copy(), z.copy(), horizon, float(z_max), seed)

    @classmethod
    def from_radii(cls, t, lam, horizon: float = 1.0) -> "PointSystem":
        """Build a system from times and radii ``lambda in (0, 1]``."""
        lam = np.asarray(lam, dtype=float)
        if np.any((lam <= 0) | (lam > 1)):
            raise ValueError("radii must lie in (0, 1]")
        return cls.from_arrays(t, 1.0 / lam - 1.0, horizon=horizon)

    @property
    def lam(self) -> np.ndarray:
        return 1.0 / (1.0 + self.z)

    @property
    def count(self) -> int:
        return int(self.t.size)

    def __len__(self) -> int:
        return self.count

    @property
    def events(self) -> Iterator[PoissonEvent]:
        for t, z, lam in zip(self.t.tolist(), self.z.tolist(), self.lam.tolist()):
            yield PoissonEvent(t, z, lam)

    def restrict(self, t_lo: float, t_hi: float) -> "PointSystem":
        """Events with ``t_lo <= t < t_hi``, same horizon and truncation."""
        i0, i1 = np.searchsorted(self.t, [t_lo, t_hi], side="left")
        return PointSystem(self.t[i0:i1].copy(), self.z[i0:i1].copy(),
                           self.horizon, self.z_max, self.seed)

    def to_csv(self, path) -> None:
        lines = ["t,z,lambda"]
        lines += [f"{fmt17(t)},{fmt17(z)},{fmt17(l)}"
                  for t, z, l in zip(self.t.tolist(), self.z.tolist(),
                                     self.lam.tolist())]
        atomic_write_text(path, "\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path, horizon: float, z_max: float | None = None) -> "PointSystem":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        if data.size == 0:
            return cls.from_arrays([], [], horizon=horizon, z_max=z_max or 0.0)
        return cls.from_arrays(data[:, 0], data[:, 1], horizon=horizon, z_max=z_max)


def generate_points(horizon: float, z_max: float, seed: int) -> PointSystem:
    """Sample the Poisson measure with intensity ``dt dz`` on a rectangle.

    The count is ``Poisson(horizon * z_max)``; given the count, times and
    marks are independent uniforms.  Sorting by time gives the same point
    process as the exponential partial-sum construction restricted to
    ``z <= z_max``.
    """
    horizon = float(horizon)
    z_max = float(z_max)
    if not (math.isfinite(horizon) and math.isfinite(z_max)):
        raise ValueError("horizon and z_max must be finite")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    if z_max < 0:
        raise ValueError("z_max must be nonnegative")
    rng = make_rng(seed)
    k = int(rng.poisson(horizon * z_max))
    t = rng.uniform(0.0, horizon, size=k)
    z = rng.uniform(0.0, z_max, size=k)
    return PointSystem.from_arrays(t, z, horizon=horizon, z_max=z_max, seed=seed)


def band_index(lam) -> np.ndarray:
    """Dyadic band ``j`` with ``2**-(j+1) < lam <= 2**-j``, computed exactly."""
    lam = np.asarray(lam, dtype=float)
    mant, expo = np.frexp(lam)  # lam = mant * 2**expo, mant in [0.5, 1)
    return np.where(mant == 0.5, 1 - expo, -expo).astype(np.int64)


def band_partition(points: PointSystem, j: int) -> np.ndarray:
    """Indices of events whose radius lies in band ``j``."""
    if j < 0:
        raise ValueError("band index must be nonnegative")
    if points.count == 0:
        return np.empty(0, dtype=np.int64)
    return np.flatnonzero(band_index(points.lam) == j)


def _max_stabbing(lo: np.ndarray, hi: np.ndarray) -> int:
    # open intervals: at a shared coordinate, closings are processed first
    if lo.size == 0:
        return 0
    coords = np.concatenate([lo, hi])
    step = np.concatenate([np.ones(lo.size, np.int64), -np.ones(hi.size, np.int64)])
    order = np.lexsort((step, coords))
    return int(np.cumsum(step[order]).max())


def overlap_counts(points: PointSystem, j_min: int, j_max: int) -> np.ndarray:
    """Largest number of balls ``B(t_n, lambda_n)`` of one band sharing a point.

    Returns ``N_j`` for ``j = j_min .. j_max``.  Since interval graphs are
    perfect, ``N_j`` disjoint-ball classes always suffice for band ``j``.
    """
    if not 0 <= j_min <= j_max:
        raise ValueError("need 0 <= j_min <= j_max")
    lam = points.lam
    bands = band_index(lam) if points.count else np.empty(0, np.int64)
    out = np.zeros(j_max - j_min + 1, dtype=np.int64)
    for i, j in enumerate(range(j_min, j_max + 1)):
        sel = bands == j
        out[i] = _max_stabbing(points.t[sel] - lam[sel], points.t[sel] + lam[sel])
    return out


def covering_fraction(points: PointSystem, delta: float = 1.0,
                      grid_resolution: int = 10_000) -> float:
    """Fraction of the grid ``horizon * k / grid_resolution`` covered by the
    union of open balls ``B(t_n, lambda_n ** delta)``."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    if grid_resolution < 1:
        raise ValueError("grid_resolution must be positive")
    n_grid = grid_resolution + 1
    if points.count == 0:
        return 0.0
    step = points.horizon / grid_resolution
    r = points.lam ** delta
    # first grid index strictly right of t - r, last strictly left of t + r
    k_lo = np.floor((points.t - r) / step).astype(np.int64) + 1
    k_hi = np.ceil((points.t + r) / step).astype(np.int64) - 1
    k_lo = np.clip(k_lo, 0, n_grid)
    k_hi = np.clip(k_hi, -1, n_grid - 1)
    ok = k_lo <= k_hi
    diff = np.bincount(k_lo[ok], minlength=n_grid + 1)[: n_grid + 1].astype(np.int64)
    diff -= np.bincount(k_hi[ok] + 1, minlength=n_grid + 1)[: n_grid + 1]
    covered = np.cumsum(diff)[:n_grid] > 0
    return float(covered.mean())
