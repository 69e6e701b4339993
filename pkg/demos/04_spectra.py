"""
Multifractal spectra of one path
================================

The spectrum on an interval is read off the jumps: the supremum of
h * gamma(M(s-)) below 1.  Local spectra at a continuity point and at a
jump follow the same recipe, and a coarse-grained histogram of dyadic
increments gives a data-driven counterpart.  The figure is written as SVG.
"""

from pathlib import Path

import numpy as np

from mfjump import GammaSpec, generate_points, simulate_M
from mfjump.spectrum import coarse_grained_spectrum, interval_spectrum_curve, local_spectrum
from mfjump.svg import spectrum_svg

gamma = GammaSpec.clipped_ramp()
M = simulate_M(gamma, generate_points(3.0, 2.0 ** 14, 2024))
hs = np.linspace(0, 2.5, 251)

theory = interval_spectrum_curve(M, gamma, 0.0, 3.0, hs)
print("apex at h =", 1 / gamma(M.left_limit(3.0)))
print("empty from h =", hs[np.isnan(theory.d)][0])

jump_time = M.jump_times[np.argmax(M.jump_sizes)]
for t in (1.5, jump_time):
    vals = [local_spectrum(M, gamma, t, h) for h in (0.5, 1.0, 1.5, 2.0)]
    print(f"local spectrum at t={t:.4f}:", vals)

coarse = coarse_grained_spectrum(M, j=14, bin_width=0.05)
out = Path("demo_out")
spectrum_svg(out / "spectra.svg", [("D_M((0,3), h)", theory.h, theory.d)],
             [("coarse-grained", coarse.h, coarse.d)], title="spectra of one path")
print("wrote", out / "spectra.svg")
