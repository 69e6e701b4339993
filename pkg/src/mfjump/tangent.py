"""Tangent stable subordinators.

Rescaled increments ``(M(t0 + a) - M(t0)) / a ** (1 / gamma(M(t0)))`` tend
in law, as ``a -> 0``, to ``S_1`` where ``S`` is the stable subordinator with
Lévy measure ``g u**(-1-g) du``, ``g = gamma(M(t0))``.  This module samples
both sides and compares their marginals with the two-sample KS distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma as gamma_fn

from ._io import atomic_write_text, fmt17
from .points import PointSystem, make_rng
from .sde import GammaSpec, JumpPath, simulate_M

__all__ = [
    "TangentReport",
    "rescaled_increment",
    "rescaled_increment_samples",
    "stable_subordinator_samples",
    "stable_scale",
    "ks_distance",
    "ks_critical_value",
    "tangent_report",
]


def stable_scale(alpha0: float) -> float:
    """Scale of ``S_1``: ``E exp(-lam S_1) = exp(-(scale * lam) ** alpha0)``."""
    return float(gamma_fn(1.0 - alpha0) ** (1.0 / alpha0))


def stable_subordinator_samples(alpha0: float, n: int, seed: int) -> np.ndarray:
    """Draw ``S_1`` with Laplace transform ``exp(-Gamma(1 - a) lam**a)``.

    Uses Kanter's representation of the one-sided stable law
    ``E exp(-lam X) = exp(-lam**a)``, then multiplies by
    :func:`stable_scale`.
    """
    if not 0 < alpha0 < 1:
        raise ValueError("alpha0 must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be positive")
    rng = make_rng(seed)
    u = rng.uniform(0.0, math.pi, size=n)
    e = rng.standard_exponential(size=n)
    a = alpha0
    zolotarev = (np.sin(a * u) / np.sin(u) ** (1.0 / a)) ** (a / (1.0 - a)) \
        * np.sin((1.0 - a) * u)
    x = (zolotarev / e) ** ((1.0 - a) / a)
    return stable_scale(a) * x


def ks_distance(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic ``sup |F_a - F_b|``."""
    a = np.sort(np.asarray(a, dtype=float).ravel())
    b = np.sort(np.asarray(b, dtype=float).ravel())
    if a.size == 0 or b.size == 0:
        raise ValueError("samples must be nonempty")
    pts = np.concatenate([a, b])
    fa = np.searchsorted(a, pts, side="right") / a.size
    fb = np.searchsorted(b, pts, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def ks_critical_value(n: int, m: int, level: float = 0.01) -> float:
    """Asymptotic two-sample KS critical value at significance ``level``."""
    return math.sqrt(-0.5 * math.log(level / 2.0)) * math.sqrt((n + m) / (n * m))


def rescaled_increment(gamma: GammaSpec, m_t0: float, alpha: float,
                       points: PointSystem) -> float:
    """Rescaled increment for one explicit point system on ``[0, alpha]``."""
    path = simulate_M(gamma, points.restrict(0.0, math.nextafter(alpha, math.inf)),
                      start_value=m_t0)
    return (path.end_value - m_t0) / alpha ** (1.0 / gamma(m_t0))


def _tail_rate(g, z_max):
    # integral_{z_max}^inf (1 + z) ** (-1/g) dz
    return g / (1.0 - g) * (1.0 + z_max) ** (1.0 - 1.0 / g)


def _rescaled_truncation(g0: float, tol: float, floor: float, cap: float) -> float:
    """Smallest rescaled truncation level whose dropped-jump fluctuation
    (standard deviation, in units of the limit scale) is below ``tol``."""
    p = 2.0 / g0 - 1.0
    target = (tol * stable_scale(g0)) ** 2 * p
    zr = target ** (-1.0 / p)
    return float(min(max(zr, floor), cap))


def _lockstep(gamma: GammaSpec, m_t0: float, t, z, counts, alpha: float,
              tail_z_max: float | None = None) -> np.ndarray:
    """Increments over ``[0, alpha]`` of many paths driven by the rows of
    ``(t, z)``; row ``i`` uses its first ``counts[i]`` (time-sorted) events.

    If ``tail_z_max`` is given, the mean of the jumps with marks above it is
    added as a drift between events.
    """
    lo, hi = gamma.epsilon, 1.0 - gamma.epsilon

    def index(y):
        return np.clip(np.interp(y, gamma.ys, gamma.vals), lo, hi)

    state = np.full(len(counts), float(m_t0))
    t_prev = np.zeros(len(counts))
    for k in range(t.shape[1]):
        act = k < counts
        tk = np.where(act, t[:, k], t_prev)
        if tail_z_max is not None:
            state = state + _tail_rate(index(state), tail_z_max) * (tk - t_prev)
        jump = (1.0 + np.where(act, z[:, k], 0.0)) ** (-1.0 / index(state))
        state = np.where(act, state + jump, state)
        t_prev = tk
    if tail_z_max is not None:
        state = state + _tail_rate(index(state), tail_z_max) * (alpha - t_prev)
    return state - m_t0


def rescaled_increment_samples(gamma: GammaSpec, m_t0: float, alpha: float, n: int,
                               z_max: float | None = None, seed: int = 0,
                               compensate: bool = True, tol: float = 1e-3,
                               chunk: int = 1000) -> np.ndarray:
    """``n`` independent rescaled increments of ``M`` restarted at ``m_t0``.

    All samples are simulated in lock step over their sorted events.  The
    truncation level is ``z_max`` if given, otherwise chosen so that the
    dropped small jumps fluctuate by less than ``tol`` times the scale of
    the limit law after rescaling.  With ``compensate`` the dropped jumps
    are replaced by their mean, a state-dependent drift
    ``integral_{z > z_max} (1+z)**(-1/gamma(M)) dz`` between events.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if m_t0 < 0:
        raise ValueError("m_t0 must be nonnegative")
    g0 = gamma(m_t0)
    if z_max is None:
        z_max = _rescaled_truncation(g0, tol, floor=200.0, cap=20_000.0) / alpha
    rng = make_rng(seed)
    out = np.empty(n)
    for start in range(0, n, chunk):
        m = min(chunk, n - start)
        counts = rng.poisson(alpha * z_max, size=m)
        kmax = int(counts.max(initial=0))
        t = rng.uniform(0.0, alpha, size=(m, kmax))
        z = rng.uniform(0.0, z_max, size=(m, kmax))
        live = np.arange(kmax)[None, :] < counts[:, None]
        t = np.where(live, t, np.inf)
        order = np.argsort(t, axis=1, kind="stable")
        t = np.take_along_axis(t, order, axis=1)
        z = np.take_along_axis(z, order, axis=1)
        out[start:start + m] = _lockstep(gamma, m_t0, t, z, counts, alpha,
                                         z_max if compensate else None)
    return out / alpha ** (1.0 / g0)


@dataclass(frozen=True, eq=False)
class TangentReport:
    alpha_levels: np.ndarray
    ks_distances: np.ndarray
    n_samples: int
    t0: float
    gamma0: float
    samples: list = field(default_factory=list, repr=False)
    reference: np.ndarray | None = field(default=None, repr=False)

    def pairwise_ks(self) -> np.ndarray:
        """KS distance between the ensembles of every pair of levels."""
        k = len(self.samples)
        out = np.zeros((k, k))
        for i in range(k):
            for j in range(i + 1, k):
                out[i, j] = out[j, i] = ks_distance(self.samples[i], self.samples[j])
        return out

    def to_csv(self, path) -> None:
        lines = ["alpha,ks,n,t0,gamma0"]
        for a, d in zip(self.alpha_levels.tolist(), self.ks_distances.tolist()):
            lines.append(f"{fmt17(a)},{fmt17(d)},{self.n_samples},"
                         f"{fmt17(self.t0)},{fmt17(self.gamma0)}")
        atomic_write_text(path, "\n".join(lines) + "\n")


def tangent_report(gamma: GammaSpec, t0: float, base_path: JumpPath, alpha_levels,
                   n: int, z_max: float | None = None, seed: int = 0,
                   compensate: bool = True) -> TangentReport:
    """Compare rescaled increments at each level with the limit law.

    One reference ensemble of ``S_1`` is shared by all levels.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= t0 <= base_path.horizon:
        raise ValueError("t0 outside the base path horizon")
    levels = np.asarray(alpha_levels, dtype=float)
    if levels.size == 0 or np.any(np.diff(levels) >= 0):
        raise ValueError("alpha_levels must be strictly decreasing")
    m_t0 = base_path.value(t0)
    g0 = float(gamma(m_t0))
    seeds = np.random.SeedSequence(seed).generate_state(levels.size + 1, dtype=np.uint64)
    ref = stable_subordinator_samples(g0, n, int(seeds[-1]))
    samples, dists = [], []
    for a, s in zip(levels.tolist(), seeds[:-1].tolist()):
        x = rescaled_increment_samples(gamma, m_t0, a, n, z_max, int(s), compensate)
        samples.append(x)
        dists.append(ks_distance(x, ref))
    return TangentReport(levels, np.array(dists), n, float(t0), g0, samples, ref)
