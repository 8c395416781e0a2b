"""Closed-form sharp thresholds for the mean-comparison family.

For each ``s >= 1`` there are two cutoffs in ``t``: below ``p`` the
two-parameter mean stays under the identric mean for every distinct pair,
and above ``q`` it stays over.  Both have closed forms, and both are
re-derivable from the one-variable analysis conditions ``3 s u <= 1`` and
``u + (2/e)^(2/s) >= 1`` with ``u = (1-2t)^2``; ``threshold_consistency``
checks that round trip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ThresholdSet",
    "ExponentialBoundConstants",
    "sharp_thresholds",
    "membership",
    "exponential_bound_constants",
    "threshold_consistency",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ThresholdSet:
    """Sharp cutoffs for one value of ``s``.

    ``p`` ends the interval of t-values whose mean stays below the
    identric mean; ``q`` starts the interval staying above.  Always
    ``0 < p < q < 1/2``.
    """

    s: float
    p: float
    q: float


@dataclass(frozen=True)
class ExponentialBoundConstants:
    """Sharp coefficients of ``exp(c * v^2)`` bounds on A/I: 1/6 and 1 - ln 2."""

    lower: float
    upper: float


def _two_over_e_pow(s: float) -> float:
    # (2/e)**(2/s) as exp((2/s)(ln 2 - 1)): one rounding in the exponent
    # instead of powering a transcendental base.
    return math.exp((2.0 / s) * (_LN2 - 1.0))


def _one_minus_two_over_e_pow(s: float) -> float:
    # 1 - (2/e)**(2/s) via expm1; the direct subtraction cancels for large s.
    return -math.expm1((2.0 / s) * (_LN2 - 1.0))


def sharp_thresholds(s: float) -> ThresholdSet:
    """Closed forms ``p = (1 - sqrt(1-(2/e)^(2/s)))/2``, ``q = (1 - 1/sqrt(3s))/2``."""
    s = float(s)
    if not (math.isfinite(s) and s >= 1.0):
        raise ValueError(f"s must be >= 1, got {s}")
    p = 0.5 * (1.0 - math.sqrt(_one_minus_two_over_e_pow(s)))
    q = 0.5 - 0.5 / math.sqrt(3.0 * s)
    return ThresholdSet(s=s, p=p, q=q)


def membership(t: float, s: float) -> str:
    """Classify ``t`` against the sharp cutoffs for ``s``.

    Returns "lower_bound_holds" (t <= p, mean below identric everywhere),
    "upper_bound_holds" (t >= q), or "neither".
    """
    t = float(t)
    if not 0.0 <= t <= 0.5:
        raise ValueError(f"t must lie in [0, 1/2], got {t}")
    ts = sharp_thresholds(s)
    if t <= ts.p:
        return "lower_bound_holds"
    if t >= ts.q:
        return "upper_bound_holds"
    return "neither"


def exponential_bound_constants() -> ExponentialBoundConstants:
    return ExponentialBoundConstants(lower=1.0 / 6.0, upper=1.0 - _LN2)


def threshold_consistency(s: float, tol: float = 1e-12) -> bool:
    """Re-derive both cutoffs from the analysis conditions and compare.

    At ``t = p`` the derived ``u = (1-2t)^2`` must satisfy
    ``u + (2/e)^(2/s) = 1``; at ``t = q`` it must satisfy ``3 s u = 1``.
    True when both hold within ``tol``.
    """
    ts = sharp_thresholds(s)
    one_minus_2p = 1.0 - 2.0 * ts.p
    u_p = one_minus_2p * one_minus_2p
    one_minus_2q = 1.0 - 2.0 * ts.q
    u_q = one_minus_2q * one_minus_2q
    lower_ok = abs(u_p + _two_over_e_pow(float(s)) - 1.0) <= tol
    upper_ok = abs(3.0 * float(s) * u_q - 1.0) <= tol
    return lower_ok and upper_ok
