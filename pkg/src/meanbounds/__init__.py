"""Bivariate means, sharp comparison thresholds, and inequality verification.

The library evaluates the classical arithmetic, geometric, harmonic, and
identric means plus a two-parameter interpolating family, computes the
closed-form sharp thresholds at which the family crosses the identric
mean, and verifies or falsifies the associated inequalities by grid
evaluation, counterexample search, empirical threshold recovery, and
interval-arithmetic sign certification on compact subintervals.
"""

from .means import (
    PositivePair,
    arithmetic_mean,
    gap,
    geometric_mean,
    harmonic_mean,
    identric_mean,
    log_identric_over_arithmetic,
    pair_from_gap,
    q_mean,
)
from .family import (
    CriticalPoint,
    FamilyParams,
    TrinomialRoots,
    critical_point,
    derivative_kernel,
    derivative_kernel_near_one,
    exp_bound_margin,
    log_ratio_limit_at_one,
    log_ratio_q_over_i,
    trinomial_eval,
    trinomial_roots,
)
from .thresholds import (
    ExponentialBoundConstants,
    ThresholdSet,
    exponential_bound_constants,
    membership,
    sharp_thresholds,
    threshold_consistency,
)
from .verify import (
    CertificateNode,
    FalsificationResult,
    GridSpec,
    TwoThirdsPowerReport,
    VerificationReport,
    Witness,
    certificate_leaves,
    certificate_succeeded,
    certify_sign,
    empirical_threshold,
    falsify,
    grid_points,
    verify_convex_power_bound,
    verify_exponential_bounds,
    verify_family_inequality,
    verify_two_thirds_power,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "PositivePair",
    "arithmetic_mean",
    "geometric_mean",
    "harmonic_mean",
    "identric_mean",
    "q_mean",
    "gap",
    "pair_from_gap",
    "log_identric_over_arithmetic",
    "FamilyParams",
    "TrinomialRoots",
    "CriticalPoint",
    "log_ratio_q_over_i",
    "derivative_kernel",
    "derivative_kernel_near_one",
    "trinomial_eval",
    "trinomial_roots",
    "critical_point",
    "log_ratio_limit_at_one",
    "exp_bound_margin",
    "ThresholdSet",
    "ExponentialBoundConstants",
    "sharp_thresholds",
    "membership",
    "exponential_bound_constants",
    "threshold_consistency",
    "GridSpec",
    "Witness",
    "VerificationReport",
    "FalsificationResult",
    "TwoThirdsPowerReport",
    "CertificateNode",
    "grid_points",
    "verify_family_inequality",
    "falsify",
    "empirical_threshold",
    "verify_exponential_bounds",
    "verify_convex_power_bound",
    "verify_two_thirds_power",
    "certify_sign",
    "certificate_leaves",
    "certificate_succeeded",
]
