"""
Pointwise regularity along a path
=================================

At a typical time the approximation rate delta_t equals 1 and the Hölder
exponent is 1/gamma(M(t)).  Here both are estimated at finite scale and
compared with that prediction.
"""

import numpy as np

from mfjump import GammaSpec, generate_points, simulate_M
from mfjump.regularity import regularity_field

gamma = GammaSpec.clipped_ramp()
points = generate_points(horizon=1.0, z_max=2.0 ** 18, seed=5)
M = simulate_M(gamma, points)

ts = np.sort(np.random.default_rng([5, 1]).uniform(0, 1, 500))
field = regularity_field(M, points, gamma, ts)

print("median delta_hat:", np.median(field.delta_hat))
print("share with delta_hat <= 1.25:", np.mean(field.delta_hat <= 1.25))
err = field.h_hat - 1 / gamma(M.value(ts))
print(f"h_hat - 1/gamma: median {np.median(err):+.3f}, median absolute {np.median(np.abs(err)):.3f}")

# a few individual points
for t, d, h, th in list(zip(ts, field.delta_hat, field.h_hat, field.h_theory))[::100]:
    print(f"t={t:.4f}  delta_hat={d:.3f}  h_hat={h:.3f}  1/(delta gamma)={th:.3f}")
