"""
How the balls B(t_n, lambda_n) cover the line
=============================================

The radii lambda_n = 1/(1 + z_n) are grouped in dyadic bands.  With enough
points the unit-exponent balls cover [0, 1], while raising the radii to a
power delta > 1 leaves gaps.  Within each band the balls pile up only
slowly, which is the weak redundancy the dimension theory needs.
"""

import numpy as np

from mfjump import covering_fraction, generate_points, overlap_counts

points = generate_points(horizon=1.0, z_max=2.0 ** 18, seed=3)

for delta in (1.0, 1.1, 1.25, 1.5, 2.0):
    frac = covering_fraction(points, delta, grid_resolution=20_000)
    print(f"delta = {delta:4.2f}: covered fraction {frac:.4f}")

counts = overlap_counts(points, 4, 17)
for j, n in zip(range(4, 18), counts.tolist()):
    rate = np.log2(max(n, 1)) / j
    print(f"band j = {j:2d}: max overlap N_j = {n:3d}, log2(N_j)/j = {rate:.3f}")
