"""Exact simulation and multifractal analysis of a pure-jump Markov process
whose jump index depends on its current value."""

from .points import (PointSystem, PoissonEvent, band_partition, covering_fraction,
                     generate_points, overlap_counts)
from .sde import (GammaSpec, HypothesisWarning, JumpPath, LevyParams, g_kernel,
                  jump_identity_residual, simulate_levy, simulate_M,
                  truncation_error_bound)
from .regularity import (RegularityField, approximation_rate, exponent_theory,
                         holder_estimate, oscillation, regularity_field)
from .spectrum import (EMPTY, SpectrumCurve, coarse_grained_spectrum, interval_spectrum,
                       levy_spectrum, local_spectrum)
from .tangent import (TangentReport, ks_distance, rescaled_increment_samples,
                      stable_subordinator_samples, tangent_report)

__version__ = "0.1.0"
