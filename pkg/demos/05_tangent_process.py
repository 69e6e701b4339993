"""
Zooming in: the tangent stable subordinator
===========================================

Rescaled increments (M(t0 + a) - M(t0)) / a ** (1/gamma(M(t0))) approach a
stable subordinator of index gamma(M(t0)) as the window a shrinks.  The
two-sample Kolmogorov-Smirnov distance to exact stable draws tracks the
convergence.
"""

from mfjump import GammaSpec, generate_points, simulate_M
from mfjump.tangent import ks_critical_value, tangent_report

gamma = GammaSpec.clipped_ramp()
base = simulate_M(gamma, generate_points(3.0, 2.0 ** 14, 2024))

for t0 in (0.0, 1.0):
    report = tangent_report(gamma, t0, base, (1e-1, 1e-2, 1e-3), n=3000, seed=1)
    print(f"t0 = {t0}: gamma(M(t0)) = {report.gamma0:.3f}")
    for a, d in zip(report.alpha_levels, report.ks_distances):
        print(f"   a = {a:g}: KS = {d:.4f}")
print("1% critical value for n = m = 3000:", round(ks_critical_value(3000, 3000), 4))
