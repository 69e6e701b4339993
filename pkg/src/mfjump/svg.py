"""Minimal self-contained SVG plots (no plotting library needed)."""

from __future__ import annotations

import math

import numpy as np

from ._io import atomic_write_text

W, H = 640, 420
PAD_L, PAD_R, PAD_T, PAD_B = 60, 20, 30, 50
COLORS = ["#1f4e9c", "#c0392b", "#27864a", "#8e44ad", "#d35400"]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Axes:
    def __init__(self, x_range, y_range):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range

    def px(self, x):
        return PAD_L + (x - self.x0) / (self.x1 - self.x0) * (W - PAD_L - PAD_R)

    def py(self, y):
        return H - PAD_B - (y - self.y0) / (self.y1 - self.y0) * (H - PAD_T - PAD_B)


def _segments(h, d):
    """Split a curve into runs of defined values."""
    runs, cur = [], []
    for x, y in zip(h.tolist(), d.tolist()):
        if math.isnan(y):
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.append((x, y))
    if cur:
        runs.append(cur)
    return runs


def spectrum_svg(path, curves, points=(), title="", x_label="h", y_label="D(h)"):
    """Draw theory ``curves`` as polylines and ``points`` as markers.

    ``curves`` and ``points`` are sequences of ``(label, h, d)``.
    """
    xs = [np.asarray(h, float) for _, h, _ in list(curves) + list(points)]
    x_max = max([float(np.nanmax(x)) for x in xs if x.size] + [1.0])
    ax = _Axes((0.0, x_max), (0.0, 1.05))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
           f'viewBox="0 0 {W} {H}">',
           f'<rect width="{W}" height="{H}" fill="white"/>']
    # axes and ticks
    out.append(f'<line x1="{PAD_L}" y1="{H - PAD_B}" x2="{W - PAD_R}" y2="{H - PAD_B}" '
               'stroke="black"/>')
    out.append(f'<line x1="{PAD_L}" y1="{PAD_T}" x2="{PAD_L}" y2="{H - PAD_B}" '
               'stroke="black"/>')
    for k in range(6):
        xv = x_max * k / 5
        out.append(f'<text x="{_fmt(ax.px(xv))}" y="{H - PAD_B + 18}" font-size="12" '
                   f'text-anchor="middle">{xv:.2f}</text>')
        yv = k / 5
        out.append(f'<text x="{PAD_L - 8}" y="{_fmt(ax.py(yv) + 4)}" font-size="12" '
                   f'text-anchor="end">{yv:.1f}</text>')
    out.append(f'<text x="{W / 2:.0f}" y="{H - 10}" font-size="14" '
               f'text-anchor="middle">{x_label}</text>')
    out.append(f'<text x="16" y="{H / 2:.0f}" font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 16 {H / 2:.0f})">{y_label}</text>')
    if title:
        out.append(f'<text x="{W / 2:.0f}" y="20" font-size="14" '
                   f'text-anchor="middle">{title}</text>')
    for i, (label, h, d) in enumerate(curves):
        color = COLORS[i % len(COLORS)]
        for run in _segments(np.asarray(h, float), np.asarray(d, float)):
            pts = " ".join(f"{_fmt(ax.px(x))},{_fmt(ax.py(y))}" for x, y in run)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                       f'points="{pts}"><title>{label}</title></polyline>')
    for i, (label, h, d) in enumerate(points):
        color = COLORS[(i + len(curves)) % len(COLORS)]
        for x, y in zip(np.asarray(h, float).tolist(), np.asarray(d, float).tolist()):
            if not math.isnan(y):
                out.append(f'<circle cx="{_fmt(ax.px(x))}" cy="{_fmt(ax.py(y))}" r="2.5" '
                           f'fill="{color}"><title>{label}</title></circle>')
    labels = [l for l, _, _ in curves] + [l for l, _, _ in points]
    for i, label in enumerate(labels):
        y = PAD_T + 10 + 16 * i
        color = COLORS[i % len(COLORS)]
        out.append(f'<rect x="{W - PAD_R - 150}" y="{y - 8}" width="10" height="10" '
                   f'fill="{color}"/>')
        out.append(f'<text x="{W - PAD_R - 135}" y="{y + 1}" font-size="12">{label}</text>')
    out.append("</svg>")
    atomic_write_text(path, "\n".join(out) + "\n")
