"""
Simulating the state-dependent jump process
===========================================

A Poisson point system drives both the process M and the stable
subordinators X^alpha.  Every point (t, z) becomes a jump of size
(1 + z) ** (-1 / gamma(M(t-))), so the jumps grow as M climbs through
the region where gamma increases.
"""

import numpy as np

from mfjump import GammaSpec, generate_points, simulate_levy, simulate_M, truncation_error_bound
from mfjump.sde import jump_identity_residual

# gamma(y) = min(1/2 + y/4, 0.9), kept inside [0.05, 0.95]
gamma = GammaSpec.clipped_ramp()

points = generate_points(horizon=3.0, z_max=2.0 ** 14, seed=2024)
print(f"{points.count} points on [0, 3]")

M = simulate_M(gamma, points)
print(f"M(3) = {M.end_value:.4f}, gamma(M(3)) = {gamma(M.end_value):.3f}")

# the jump identity holds to rounding error
print("max |dM ** gamma(M-) - 1/(1+z)| =", jump_identity_residual(M, points, gamma))

# the same points drive the two extreme subordinators
slow, fast = simulate_levy(0.5, points), simulate_levy(0.9, points)
for t in (0.5, 1.0, 2.0, 3.0):
    print(f"t={t}:  X^0.5 = {slow.value(t):8.4f}   M = {M.value(t):8.4f}   X^0.9 = {fast.value(t):8.4f}")

# the mass lost by truncating the marks at z_max, in expectation
print("truncation bound:", truncation_error_bound(gamma.epsilon, 2.0 ** 14, 3.0))

grid = np.linspace(0, 3, 7)
print("M on a coarse grid:", np.round(M.value(grid), 4))
