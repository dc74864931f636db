"""rmflab: a numerical laboratory for coupled random multiplicative signs.

One uniform coordinate per prime drives a whole family of threshold sign
functions at once; a dyadic interval exchange map permutes those coordinates
measure-preservingly, and truncated Euler products over a shared prime set
turn the resulting telescoping identity into an exactly checkable finite
statement.  Growth experiments probe the slow-divergence and
square-root-cancellation regimes of the partial sums.
"""

from .dyadic import HALF, ONE, DyadicFraction, beta_for_level
from .errors import (ConfigurationError, CoverageError, DomainError, FitError,
                     LabError, PreconditionError, RangeError)
from .sieve import (FactorSummary, SpfTable, build_spf, distinct_prime_counts,
                    factor_summary, mobius_sieve, primes_up_to)
from .sampler import (OmegaAssignment, SignSeries, build_sign_series,
                      coupling_monotone_check, prime_signs, sign_at_prime,
                      splitmix64)
from .iet import (IetSpec, TransformedOmega, apply_T, apply_T_omega,
                  apply_T_power, apply_T_power_numerators, interval_index)
from .dirichlet import (WEIGHT_BETA_THRESHOLD, EulerEvaluation, H_eval,
                        euler_F, exp_form_F, identity_residual,
                        weight_factor, weighted_euler_G, zeta_truncated)
from .growth import (CampaignConfig, CampaignReport, GrowthFit, SeedResult,
                     SelbergDelangeStat, SumGrid, abel_consistency,
                     checkpoint_grid, fit_growth_exponent,
                     monte_carlo_campaign, partial_sums,
                     prime_reciprocal_sign_sum, run_seed,
                     selberg_delange_ratio, weighted_partial_sums,
                     weighted_sum_grid)

__version__ = "0.1.0"
