"""One-variable analysis machinery behind the mean comparisons.

For parameters ``(t, s)`` with ``u = (1-2t)^2``, the signed log-difference
between the two-parameter mean and the identric mean reduces to

    log_ratio_q_over_i(params, x) = 1 - atanh(x)/x - ln(1-x^2)/2
                                    + (s/2) ln(1 - u x^2)

as a function of the normalized gap ``x``.  Its derivative is
``derivative_kernel(params, x) / x**2``, and the kernel's monotonicity is in
turn controlled by the sign of a quadratic trinomial in ``X = x^2``.  This
module evaluates all three stably, finds the trinomial's roots and the
kernel's interior zero, and provides the exponential-bound margin family
``exp_bound_margin`` used for the ``exp(c * x^2)`` comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .means import SERIES_CROSSOVER, _lr_with_error_scale

__all__ = [
    "EVAL_LIMIT",
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
]

# Direct evaluation is supported up to this point; beyond it the log terms
# have absorbed every significant digit and the x -> 1 behavior is exposed
# through log_ratio_limit_at_one instead.
EVAL_LIMIT = 1.0 - 1e-12

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(t, s)`` with the derived ``u = (1-2t)^2``.

    ``one_minus_u`` is carried separately so that ``1 - u*x**2`` can be
    formed without cancellation as ``(1-x)(1+x) + one_minus_u * x**2``.
    Construct via :meth:`from_t` or :meth:`from_u`.
    """

    t: float
    s: float
    u: float
    one_minus_u: float

    def __post_init__(self):
        if not (math.isfinite(self.t) and 0.0 <= self.t <= 0.5):
            raise ValueError(f"t must lie in [0, 1/2], got {self.t}")
        if not (math.isfinite(self.s) and self.s >= 1.0):
            raise ValueError(f"s must be >= 1, got {self.s}")
        if not 0.0 <= self.u <= 1.0 or not 0.0 <= self.one_minus_u <= 1.0:
            raise ValueError(f"u must lie in [0, 1], got {self.u}")
        if abs(self.u + self.one_minus_u - 1.0) > 1e-12:
            raise ValueError("inconsistent u and one_minus_u")

    @classmethod
    def from_t(cls, t: float, s: float) -> "FamilyParams":
        t = float(t)
        s = float(s)
        if not 0.0 <= t <= 0.5:
            raise ValueError(f"t must lie in [0, 1/2], got {t}")
        one_minus_2t = 1.0 - 2.0 * t
        return cls(t=t, s=s, u=one_minus_2t * one_minus_2t,
                   one_minus_u=4.0 * t * (1.0 - t))

    @classmethod
    def from_u(cls, u: float, s: float) -> "FamilyParams":
        u = float(u)
        s = float(s)
        if not 0.0 <= u <= 1.0:
            raise ValueError(f"u must lie in [0, 1], got {u}")
        return cls(t=0.5 * (1.0 - math.sqrt(u)), s=s, u=u, one_minus_u=1.0 - u)


@dataclass(frozen=True)
class TrinomialRoots:
    """Real roots of the kernel trinomial, classified against (0, 1].

    ``kind`` is "constant" (u = 0), "linear" (vanishing leading
    coefficient, in particular s = 1) or "quadratic".  ``z0`` is the
    smallest root in (0, 1] when one exists; ``z1`` the root >= 1 when one
    exists.  ``coefficients`` are ``(a2, a1, a0)`` for ``a2*X^2 + a1*X + a0``.
    """

    kind: str
    roots_in_unit: tuple[float, ...]
    z0: float | None
    z1: float | None
    coefficients: tuple[float, float, float]


@dataclass(frozen=True)
class CriticalPoint:
    """Interior zero of the derivative kernel.

    ``one_minus_y0`` is the authoritative location: the zero can sit closer
    to 1 than the spacing of binary64 doubles, in which case ``y0`` rounds
    to 1.0 while ``one_minus_y0`` keeps full precision.
    """

    y0: float
    one_minus_y0: float
    kernel_value: float


def _validate_x(arr: np.ndarray) -> None:
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise ValueError("x must lie strictly inside (0, 1)")
    if np.any(arr > EVAL_LIMIT):
        raise ValueError(f"x is only evaluated up to {EVAL_LIMIT!r}; "
                         "use log_ratio_limit_at_one for the x -> 1 behavior")


def _log_ratio_series(params: FamilyParams, w: np.ndarray) -> np.ndarray:
    # w = x^2.  Coefficients of the even series 1/(2k(2k+1)) - s u^k / (2k).
    u, s = params.u, params.s
    c1 = (1.0 - 3.0 * s * u) / 6.0
    c2 = 1.0 / 20.0 - s * u * u / 4.0
    c3 = 1.0 / 42.0 - s * u ** 3 / 6.0
    c4 = 1.0 / 72.0 - s * u ** 4 / 8.0
    return w * (c1 + w * (c2 + w * (c3 + w * c4)))


def _log_ratio_direct_pieces(params: FamilyParams, x: np.ndarray):
    atanh_over_x = np.arctanh(x) / x
    one_minus_sq = (1.0 - x) * (1.0 + x)
    ln_one_minus_sq = np.log(one_minus_sq)
    if params.u == 0.0:
        m2 = np.zeros_like(x)
    else:
        m2 = 0.5 * params.s * np.log(one_minus_sq + params.one_minus_u * x * x)
    vals = 1.0 - atanh_over_x - 0.5 * ln_one_minus_sq + m2
    scale = 4.0 * (np.abs(atanh_over_x) + 0.5 * np.abs(ln_one_minus_sq)
                   + np.abs(m2) + 1.0)
    return vals, scale


def _log_ratio_with_scale(params: FamilyParams, x: np.ndarray):
    """Values plus absolute-error scale (error <= scale * eps) on an array."""
    w = x * x
    small = x < SERIES_CROSSOVER
    safe = np.where(small, 0.5, x)
    direct, scale_direct = _log_ratio_direct_pieces(params, safe)
    vals = np.where(small, _log_ratio_series(params, w), direct)
    scale_series = w * (1.0 + 3.0 * params.s * params.u) / 3.0
    return vals, np.where(small, scale_series, scale_direct)


def log_ratio_q_over_i(params: FamilyParams, x, method: str = "auto"):
    """Signed log-gap between the two-parameter mean and the identric mean.

    Negative values mean the parameterized mean sits below the identric
    mean at that gap, positive above.  Tends to 0 as ``x -> 0`` and to
    ``log_ratio_limit_at_one(params)`` as ``x -> 1``.  Scalar or array.
    """
    arr = np.asarray(x, dtype=float)
    _validate_x(arr)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if method == "series":
        out = _log_ratio_series(params, arr * arr)
    elif method == "direct":
        out, _ = _log_ratio_direct_pieces(params, arr)
    elif method == "auto":
        out, _ = _log_ratio_with_scale(params, arr)
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(out[0]) if scalar else out


def _kernel_series(params: FamilyParams, x: np.ndarray) -> np.ndarray:
    u, s = params.u, params.s
    w = x * x
    d1 = 1.0 / 3.0 - s * u
    d2 = 1.0 / 5.0 - s * u * u
    d3 = 1.0 / 7.0 - s * u ** 3
    d4 = 1.0 / 9.0 - s * u ** 4
    return x * w * (d1 + w * (d2 + w * (d3 + w * d4)))


def derivative_kernel(params: FamilyParams, x):
    """Kernel ``-x + atanh(x) - s u x^3 / (1 - u x^2)``.

    The log-ratio's derivative equals this kernel divided by ``x**2``;
    the kernel vanishes at 0 and diverges to +inf as ``x -> 1`` whenever
    ``u < 1``.  Scalar or array, same domain as :func:`log_ratio_q_over_i`.
    """
    arr = np.asarray(x, dtype=float)
    _validate_x(arr)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    small = arr < SERIES_CROSSOVER
    safe = np.where(small, 0.5, arr)
    one_minus_usq = (1.0 - safe) * (1.0 + safe) + params.one_minus_u * safe * safe
    if params.u == 0.0:
        rational = np.zeros_like(safe)
    else:
        rational = params.s * params.u * safe ** 3 / one_minus_usq
    direct = -safe + np.arctanh(safe) - rational
    out = np.where(small, _kernel_series(params, arr), direct)
    return float(out[0]) if scalar else out


def derivative_kernel_near_one(params: FamilyParams, eps_from_one: float) -> float:
    """Kernel at ``x = 1 - eps``, parameterized by the distance from 1.

    Usable for ``eps`` far below the spacing of doubles near 1 (down to
    ~1e-300), which is where the kernel's zero lives when ``u`` is large.
    """
    eps = float(eps_from_one)
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps_from_one must lie in (0, 1), got {eps}")
    x = 1.0 - eps  # may round; the log terms below use eps exactly
    atanh_x = 0.5 * (math.log(2.0 - eps) - math.log(eps))
    denom = params.one_minus_u + params.u * eps * (2.0 - eps)
    rational = params.s * params.u * x ** 3 / denom if params.u else 0.0
    return -x + atanh_x - rational


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    c = _SPLITTER * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLITTER * b
    bhi = c - (c - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _coefficients(params: FamilyParams) -> tuple[float, float, float]:
    u, s = params.u, params.s
    return ((1.0 - s) * u * u,
            (3.0 * s + s * u - 2.0) * u,
            1.0 - 3.0 * s * u)


def trinomial_eval(params: FamilyParams, X: float) -> float:
    """Kernel trinomial ``(1-s)u^2 X^2 + (3s+su-2)u X + (1-3su)`` at ``X``.

    Compensated Horner evaluation, so the residual at a computed root is
    dominated by the rounding of the coefficients themselves.  Takes any
    real ``X`` (the variable is ``X = x^2`` but no range is required).
    """
    a2, a1, a0 = _coefficients(params)
    X = float(X)
    p, e1 = _two_prod(a2, X)
    s1, e2 = _two_sum(p, a1)
    p, e3 = _two_prod(s1, X)
    s2, e4 = _two_sum(p, a0)
    return s2 + ((e1 + e2) * X + (e3 + e4))


def trinomial_roots(params: FamilyParams) -> TrinomialRoots:
    """Real roots of the kernel trinomial with the sign classification.

    For ``u = 0`` the trinomial is the constant 1 (kind "constant", no
    roots).  A leading coefficient below 1e-14 of the coefficient scale is
    treated as linear, which covers ``s = 1`` exactly.  The quadratic case
    computes the larger-magnitude root first and derives the other from
    the constant/leading ratio, so nearly-linear cases stay accurate.
    """
    a2, a1, a0 = _coefficients(params)
    if params.u == 0.0:
        return TrinomialRoots("constant", (), None, None, (a2, a1, a0))
    scale = max(abs(a2), abs(a1), abs(a0))
    if abs(a2) < 1e-14 * scale:
        kind = "linear"
        roots = [-a0 / a1]  # a1 = (3s + su - 2) u > 0 for s >= 1, u > 0
    else:
        kind = "quadratic"
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            # Unreachable for s > 1, u > 0: the parabola opens downward and
            # is nonnegative at X = 1, forcing real roots.  Guard anyway.
            return TrinomialRoots(kind, (), None, None, (a2, a1, a0))
        sq = math.sqrt(disc)
        qd = -0.5 * (a1 + math.copysign(sq, a1))
        roots = sorted((qd / a2, a0 / qd)) if qd != 0.0 else [0.0, 0.0]
    tol = 1e-12
    in_unit = tuple(min(r, 1.0) for r in roots if 0.0 < r <= 1.0 + tol)
    z0 = in_unit[0] if in_unit else None
    z1 = max(roots) if roots and max(roots) >= 1.0 - tol else None
    return TrinomialRoots(kind, in_unit, z0, z1, (a2, a1, a0))


def critical_point(params: FamilyParams) -> CriticalPoint:
    """Locate the kernel's unique interior zero when ``3su > 1`` and ``u < 1``.

    The kernel decreases to a negative minimum at ``sqrt(z0)`` (``z0`` the
    trinomial root in ``X = x^2``) and then increases to +inf, so its zero
    is bracketed by ``(sqrt(z0), 1)``.  The search runs in the
    distance-from-one coordinate with a safeguarded geometric-bisection /
    secant iteration, because the zero may sit far below one ulp from 1.

    Raises ValueError when the preconditions fail and RuntimeError when no
    bracket can be established (a precision ceiling, not a disproof).
    """
    u, s = params.u, params.s
    if not 3.0 * s * u > 1.0:
        raise ValueError(f"critical point requires 3su > 1, got 3su = {3.0 * s * u}")
    if not u < 1.0:
        raise ValueError("critical point requires u < 1; the kernel is "
                         "single-signed for u = 1")
    tr = trinomial_roots(params)
    if tr.z0 is None or not 0.0 < tr.z0 < 1.0:
        raise RuntimeError(f"degenerate trinomial configuration: roots {tr}")
    xstar = math.sqrt(tr.z0)
    eps_neg = 1.0 - xstar
    if derivative_kernel_near_one(params, eps_neg) >= 0.0:
        raise RuntimeError("kernel not negative at its minimum; parameters sit "
                           "on the threshold at machine precision")
    # Walk toward 1 in decades until the kernel turns positive.
    eps_pos = None
    cand = eps_neg
    while cand > 1e-300:
        cand *= 0.1
        val = derivative_kernel_near_one(params, cand)
        if val > 0.0:
            eps_pos = cand
            break
        eps_neg = cand
    if eps_pos is None:
        raise RuntimeError("no sign change above eps = 1e-300; the critical "
                           "point is beyond binary64 range")
    f_pos = derivative_kernel_near_one(params, eps_pos)
    f_neg = derivative_kernel_near_one(params, eps_neg)
    best_eps, best_val = (eps_pos, f_pos) if abs(f_pos) < abs(f_neg) else (eps_neg, f_neg)
    for _ in range(200):
        # Relative width in eps: the kernel moves ~0.5 per unit of ln(eps)
        # near 1, so this pins |kernel| to ~1e-15 regardless of how close
        # the zero sits to 1.
        if eps_neg - eps_pos <= 4e-16 * eps_neg:
            break
        mid = math.sqrt(eps_pos * eps_neg)
        # Secant candidate in the log coordinate, safeguarded to the bracket.
        if f_neg != f_pos:
            lp, ln_ = math.log(eps_pos), math.log(eps_neg)
            sec = lp - f_pos * (ln_ - lp) / (f_neg - f_pos)
            if lp < sec < ln_:
                cand = math.exp(sec)
                if eps_pos < cand < eps_neg:
                    mid = cand
        if mid <= eps_pos or mid >= eps_neg:
            mid = 0.5 * (eps_pos + eps_neg)
            if mid <= eps_pos or mid >= eps_neg:
                break
        val = derivative_kernel_near_one(params, mid)
        if abs(val) < abs(best_val):
            best_eps, best_val = mid, val
        if val > 0.0:
            eps_pos, f_pos = mid, val
        elif val < 0.0:
            eps_neg, f_neg = mid, val
        else:
            best_eps, best_val = mid, val
            break
    return CriticalPoint(y0=1.0 - best_eps, one_minus_y0=best_eps,
                         kernel_value=best_val)


def log_ratio_limit_at_one(params: FamilyParams) -> float:
    """Limit of the log-ratio as ``x -> 1``: ``1 - ln 2 + (s/2) ln(1-u)``.

    Returns -inf for ``u = 1``.
    """
    if params.one_minus_u == 0.0:
        return -math.inf
    return (1.0 - _LN2) + 0.5 * params.s * math.log(params.one_minus_u)


def exp_bound_margin(coef: float, x):
    """Margin ``ln(A/I)(x) - coef * x^2`` of the exponential-gap bound.

    Positive everywhere on (0, 1) iff ``coef <= 1/6``; negative everywhere
    iff ``coef >= 1 - ln 2``.  Scalar or array.
    """
    coef = float(coef)
    if not coef > 0.0:
        raise ValueError(f"coefficient must be > 0, got {coef}")
    arr = np.asarray(x, dtype=float)
    _validate_x(arr)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    vals, _ = _exp_bound_margin_with_scale(coef, arr)
    return float(vals[0]) if scalar else vals


def _exp_bound_margin_with_scale(coef: float, x: np.ndarray):
    lr, scale_lr = _lr_with_error_scale(x)
    w = x * x
    return -lr - coef * w, scale_lr + 2.0 * coef * w
