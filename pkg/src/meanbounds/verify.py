"""Grid verification, counterexample search, and sign certification.

Every check here evaluates a margin function on a grid of gap values and
reports the signed worst slack.  Three conventions keep the verdicts
honest at machine precision:

* Grids are endpoint-refined by default: the failure regimes of every
  inequality in scope live in the limits ``x -> 0`` or ``x -> 1``, which a
  uniform grid never reaches.
* Each margin comes with a per-point noise floor derived from the
  evaluation's rounding-error model.  A negative margin smaller than its
  floor is indistinguishable from zero; it is clamped rather than being
  promoted to a counterexample, so parameters sitting exactly on a sharp
  threshold report ``holds_on_grid`` with a zero margin column.
* Any candidate violation is re-evaluated with mpmath at roughly twice
  the working precision before being reported.  A witness that fails the
  recheck is a rounding artifact and is dropped.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import mpmath as mp
import numpy as np

from .family import (
    EVAL_LIMIT,
    FamilyParams,
    _exp_bound_margin_with_scale,
    _log_ratio_with_scale,
)
from .intervals import enclose_log_ratio
from .means import _lr_with_error_scale
from .thresholds import sharp_thresholds

__all__ = [
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
    "TWO_THIRDS_FORWARD_THRESHOLD",
    "TWO_THIRDS_REVERSE_THRESHOLD",
]

_EPS = float(np.finfo(float).eps)
_NOISE_C = 64.0  # multiplier on the rounding-error scale for noise floors
_RECHECK_DPS = 40  # roughly twice the 16 significant digits of binary64
_MAX_RECHECKS = 32

_SIDES = ("lower", "upper")

TWO_THIRDS_FORWARD_THRESHOLD = math.log(1.5) / (1.0 - math.log(2.0))
TWO_THIRDS_REVERSE_THRESHOLD = 1.2


@dataclass(frozen=True)
class GridSpec:
    """Sample layout on the open gap interval.

    ``endpoint_refined`` accumulates points geometrically toward both
    ``x_min`` and ``x_max``; ``uniform`` is a plain linspace.
    """

    count: int = 10_000
    spacing: str = "endpoint_refined"
    x_min: float = 1e-9
    x_max: float = 1.0 - 1e-9

    def __post_init__(self):
        if self.spacing not in ("uniform", "endpoint_refined"):
            raise ValueError(f"unknown spacing {self.spacing!r}")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"count must be an integer >= 2, got {self.count}")
        if not 0.0 < self.x_min < self.x_max < 1.0:
            raise ValueError(f"need 0 < x_min < x_max < 1, got "
                             f"[{self.x_min}, {self.x_max}]")
        if self.x_max > EVAL_LIMIT:
            raise ValueError(f"x_max must not exceed {EVAL_LIMIT!r}")


def grid_points(spec: GridSpec) -> np.ndarray:
    """Strictly increasing sample array for ``spec``."""
    if spec.spacing == "uniform":
        return np.linspace(spec.x_min, spec.x_max, spec.count)
    if spec.x_min < 0.5 < spec.x_max:
        mid = 0.5
    else:
        mid = 0.5 * (spec.x_min + spec.x_max)
    n_low = spec.count // 2
    n_high = spec.count - n_low
    low = np.geomspace(spec.x_min, mid, n_low)
    high = 1.0 - np.geomspace(1.0 - spec.x_max, 1.0 - mid, n_high, endpoint=False)
    return np.concatenate([low, high[::-1]])


@dataclass(frozen=True)
class Witness:
    """A grid point with a confirmed reversed inequality.

    ``pair`` is the normalized argument pair ``(1 + x, 1 - x)`` realizing
    the gap; ``margin_recheck`` is the extended-precision margin value.
    """

    x: float
    pair: tuple[float, float]
    margin: float
    margin_recheck: float
    label: str = ""


@dataclass(frozen=True)
class VerificationReport:
    verdict: str  # "holds_on_grid" | "violated"
    worst_margin: float
    witness: Witness | None
    samples: int
    parameters: dict

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class FalsificationResult:
    found: bool
    witness: Witness | None
    attempts: int
    note: str


@dataclass(frozen=True)
class TwoThirdsPowerReport:
    """Both directions of the fixed-(2/3, 1/3) power comparison.

    ``classification`` is "forward_holds", "reverse_holds", or "neither",
    decided by the grid verdicts; the sharp exponent cutoffs are echoed in
    ``forward_threshold`` / ``reverse_threshold``.
    """

    p: float
    forward: VerificationReport
    reverse: VerificationReport
    classification: str
    forward_threshold: float = TWO_THIRDS_FORWARD_THRESHOLD
    reverse_threshold: float = TWO_THIRDS_REVERSE_THRESHOLD

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CertificateNode:
    x_lo: float
    x_hi: float
    bound_lo: float
    bound_hi: float
    status: str  # proved_negative | proved_positive | split | inconclusive


def _check_side(side: str) -> None:
    if side not in _SIDES:
        raise ValueError(f"side must be one of {_SIDES}, got {side!r}")


# ----------------------------------------------------------------------
# Extended-precision margin rechecks (mpmath, ~2x working precision).
# ----------------------------------------------------------------------

def _mp_log_ratio_q_over_i(t: float, s: float, x: float) -> mp.mpf:
    t, s, x = mp.mpf(t), mp.mpf(s), mp.mpf(x)
    u = (1 - 2 * t) ** 2
    val = 1 - mp.atanh(x) / x - mp.log(1 - x * x) / 2
    if u > 0:
        val += s / 2 * mp.log(1 - u * x * x)
    return val


def _mp_log_a_over_i(x: float) -> mp.mpf:
    x = mp.mpf(x)
    return -(mp.atanh(x) / x - 1 + mp.log(1 - x * x) / 2)


def _mp_family_margin(t: float, s: float, side: str, x: float) -> float:
    with mp.workdps(_RECHECK_DPS):
        val = _mp_log_ratio_q_over_i(t, s, x)
        return float(-val if side == "lower" else val)


def _mp_exp_margin(coef: float, side: str, x: float) -> float:
    with mp.workdps(_RECHECK_DPS):
        g = _mp_log_a_over_i(x) - mp.mpf(coef) * mp.mpf(x) ** 2
        return float(g if side == "lower" else -g)


def _mp_power_margin(p: float, alpha: float, side: str, x: float) -> float:
    with mp.workdps(_RECHECK_DPS):
        p, alpha, x = mp.mpf(p), mp.mpf(alpha), mp.mpf(x)
        i_pow = mp.e ** (-p * _mp_log_a_over_i(float(x)))
        g_pow = (1 - x * x) ** (p / 2)
        lower = i_pow - alpha - (1 - alpha) * g_pow
        return float(lower if side == "lower" else -lower)


# ----------------------------------------------------------------------
# Core grid driver.
# ----------------------------------------------------------------------

def _run_grid_check(
    xs: np.ndarray,
    margins: np.ndarray,
    floors: np.ndarray,
    recheck: Callable[[float], float],
    parameters: dict,
    labels=None,
) -> VerificationReport:
    candidates = np.where(margins < -floors)[0]
    witness = None
    if candidates.size:
        order = candidates[np.argsort(margins[candidates], kind="stable")]
        for idx in order[:_MAX_RECHECKS]:
            x = float(xs[idx])
            label = labels[idx] if labels is not None else ""
            confirmed = recheck(x) if label == "" else recheck(x, label)
            if confirmed < 0.0:
                witness = Witness(
                    x=x,
                    pair=(1.0 + x, 1.0 - x),
                    margin=float(margins[idx]),
                    margin_recheck=confirmed,
                    label=label,
                )
                break
    worst = float(margins.min())
    if witness is not None:
        return VerificationReport("violated", worst, witness, int(xs.size),
                                  parameters)
    # Any remaining negatives sit below their noise floors (or failed the
    # extended-precision recheck): indistinguishable from zero.
    return VerificationReport("holds_on_grid", max(worst, 0.0), None,
                              int(xs.size), parameters)


def _grid_dict(spec: GridSpec) -> dict:
    return {"count": spec.count, "spacing": spec.spacing,
            "x_min": spec.x_min, "x_max": spec.x_max}


def _family_margins(t: float, s: float, side: str, xs: np.ndarray):
    params = FamilyParams.from_t(t, s)
    vals, scale = _log_ratio_with_scale(params, xs)
    sign = -1.0 if side == "lower" else 1.0
    return sign * vals, _NOISE_C * _EPS * scale


def verify_family_inequality(
    t: float,
    s: float,
    side: str,
    grid: GridSpec | None = None,
) -> VerificationReport:
    """Check the strict mean comparison at parameters ``(t, s)`` on a grid.

    ``side="lower"`` asserts the two-parameter mean stays below the
    identric mean (log-ratio negative everywhere); ``side="upper"`` the
    reverse.  The worst margin is the signed minimum slack over the grid.
    """
    _check_side(side)
    spec = grid if grid is not None else GridSpec()
    xs = grid_points(spec)
    margins, floors = _family_margins(float(t), float(s), side, xs)
    parameters = {"check": "family", "t": float(t), "s": float(s),
                  "side": side, "grid": _grid_dict(spec)}
    return _run_grid_check(
        xs, margins, floors,
        lambda x: _mp_family_margin(float(t), float(s), side, x),
        parameters,
    )


_FALSIFY_LOWER_LADDER = tuple(1.0 - 10.0 ** (-k) for k in range(3, 13))
_FALSIFY_UPPER_LADDER = (1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 2e-2, 5e-2)


def falsify(t: float, s: float, side: str) -> FalsificationResult:
    """Search for a concrete gap where the inequality at ``(t, s)`` reverses.

    Requires ``t`` strictly outside the sharp interval for ``side``
    (ValueError otherwise).  Lower-side failures are hunted near ``x = 1``
    and upper-side failures near ``x = 0``, where they must appear; every
    returned witness is confirmed at extended precision.  A not-found
    result signals a precision ceiling, not a disproof.
    """
    _check_side(side)
    t, s = float(t), float(s)
    ts = sharp_thresholds(s)
    if side == "lower" and not t > ts.p:
        raise ValueError(f"t = {t} is not strictly above the sharp lower "
                         f"threshold p = {ts.p}; nothing to falsify")
    if side == "upper" and not t < ts.q:
        raise ValueError(f"t = {t} is not strictly below the sharp upper "
                         f"threshold q = {ts.q}; nothing to falsify")
    ladder = _FALSIFY_LOWER_LADDER if side == "lower" else _FALSIFY_UPPER_LADDER
    xs = np.asarray(ladder)
    margins, floors = _family_margins(t, s, side, xs)
    best = None
    attempts = 0
    for idx in np.argsort(margins, kind="stable"):
        if margins[idx] >= -floors[idx]:
            break
        attempts += 1
        confirmed = _mp_family_margin(t, s, side, float(xs[idx]))
        if confirmed < 0.0:
            x = float(xs[idx])
            best = Witness(x=x, pair=(1.0 + x, 1.0 - x),
                           margin=float(margins[idx]),
                           margin_recheck=confirmed)
            break
    if best is None:
        return FalsificationResult(
            found=False, witness=None, attempts=len(ladder),
            note="no grid point on the search ladder crossed its noise floor "
                 "and survived the extended-precision recheck; the margin is "
                 "below the double-precision resolution at these parameters",
        )
    return FalsificationResult(found=True, witness=best, attempts=attempts,
                               note="")


def empirical_threshold(
    s: float,
    side: str,
    grid: GridSpec | None = None,
    tol: float = 1e-6,
) -> float:
    """Recover the sharp cutoff in ``t`` by bisection on the grid verdict.

    Bisects ``t`` over [0, 1/2] with ``verify_family_inequality`` as the
    predicate.  The result carries a one-sided bias of the order of the
    grid's endpoint resolution (far below ``tol`` for the default grid).
    """
    _check_side(side)
    s = float(s)
    tol = float(tol)
    if tol < 1e-8:
        raise ValueError(f"tol must be >= 1e-8, got {tol}")

    def holds(t: float) -> bool:
        report = verify_family_inequality(t, s, side, grid)
        return report.verdict == "holds_on_grid"

    lo, hi = 0.0, 0.5
    if side == "lower":
        # holds on [0, p], fails above
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if holds(mid):
                lo = mid
            else:
                hi = mid
    else:
        # fails below q, holds on [q, 1/2]
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if holds(mid):
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)


def verify_exponential_bounds(
    p_coef: float,
    q_coef: float,
    grid: GridSpec | None = None,
) -> VerificationReport:
    """Check ``exp(p v^2) < A/I < exp(q v^2)`` on a grid.

    Sharp exactly when ``p_coef <= 1/6`` and ``q_coef >= 1 - ln 2``.  The
    report covers both sides at once; a witness's ``label`` says which
    side failed.
    """
    p_coef, q_coef = float(p_coef), float(q_coef)
    if not (p_coef > 0.0 and q_coef > 0.0):
        raise ValueError("both coefficients must be > 0")
    spec = grid if grid is not None else GridSpec()
    xs = grid_points(spec)
    g_p, scale_p = _exp_bound_margin_with_scale(p_coef, xs)
    g_q, scale_q = _exp_bound_margin_with_scale(q_coef, xs)
    margins = np.concatenate([g_p, -g_q])
    floors = _NOISE_C * _EPS * np.concatenate([scale_p, scale_q])
    both_xs = np.concatenate([xs, xs])
    labels = ["lower"] * xs.size + ["upper"] * xs.size
    parameters = {"check": "exponential_bounds", "p_coef": p_coef,
                  "q_coef": q_coef, "grid": _grid_dict(spec)}

    def recheck(x: float, label: str) -> float:
        coef = p_coef if label == "lower" else q_coef
        return _mp_exp_margin(coef, label, x)

    return _run_grid_check(both_xs, margins, floors, recheck, parameters,
                           labels=labels)


def _power_margins(p: float, alpha: float, side: str, xs: np.ndarray):
    lr, scale_lr = _lr_with_error_scale(xs)
    ln_g = 0.5 * np.log((1.0 - xs) * (1.0 + xs))
    t_i = np.expm1(p * lr)          # I^p/A^p - 1, fully cancellation-free
    t_g = np.expm1(p * ln_g)        # G^p/A^p - 1
    lower = t_i - (1.0 - alpha) * t_g
    # exp(p*lr) and exp(p*ln_g) are <= 1, so the propagated log errors are
    # bounded by p * scale and the expm1 terms contribute their own ulps.
    scale = (np.abs(t_i) + (1.0 - alpha) * np.abs(t_g)
             + p * scale_lr + p * (1.0 - alpha) * (3.0 * np.abs(ln_g) + 1.0))
    margins = lower if side == "lower" else -lower
    return margins, _NOISE_C * _EPS * scale


def verify_convex_power_bound(
    p_exp: float,
    alpha: float,
    side: str,
    grid: GridSpec | None = None,
) -> VerificationReport:
    """Check ``alpha*A^p + (1-alpha)*G^p`` against ``I^p`` on a grid.

    ``side="lower"`` asserts the convex combination stays strictly below
    ``I^p``; ``side="upper"`` strictly above.  The sharp constants are
    ``alpha <= 2/3`` and ``beta >= 2/e`` at ``p = 1``, and
    ``alpha <= (2/e)^p`` and ``beta >= 2/3`` for ``p >= 2``.
    """
    _check_side(side)
    p_exp, alpha = float(p_exp), float(alpha)
    if not p_exp >= 1.0:
        raise ValueError(f"p_exp must be >= 1, got {p_exp}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    spec = grid if grid is not None else GridSpec()
    xs = grid_points(spec)
    margins, floors = _power_margins(p_exp, alpha, side, xs)
    parameters = {"check": "convex_power", "p_exp": p_exp, "alpha": alpha,
                  "side": side, "grid": _grid_dict(spec)}
    return _run_grid_check(
        xs, margins, floors,
        lambda x: _mp_power_margin(p_exp, alpha, side, x),
        parameters,
    )


def verify_two_thirds_power(p_exp: float, grid: GridSpec | None = None) -> TwoThirdsPowerReport:
    """Grid check of ``I^p`` against ``(2/3)A^p + (1/3)G^p``, both directions.

    The forward inequality (``I^p`` below) holds for all pairs iff
    ``p >= ln(3/2)/ln(e/2)``; the reverse holds iff ``p <= 6/5``; strictly
    between the two cutoffs both directions fail somewhere.
    """
    p_exp = float(p_exp)
    if not p_exp > 0.0:
        raise ValueError(f"p_exp must be > 0, got {p_exp}")
    spec = grid if grid is not None else GridSpec()
    xs = grid_points(spec)
    alpha = 2.0 / 3.0
    reports = {}
    for direction, side in (("forward", "upper"), ("reverse", "lower")):
        margins, floors = _power_margins(p_exp, alpha, side, xs)
        parameters = {"check": "two_thirds_power", "p_exp": p_exp,
                      "direction": direction, "grid": _grid_dict(spec)}
        reports[direction] = _run_grid_check(
            xs, margins, floors,
            lambda x, side=side: _mp_power_margin(p_exp, alpha, side, x),
            parameters,
        )
    fwd_ok = reports["forward"].verdict == "holds_on_grid"
    rev_ok = reports["reverse"].verdict == "holds_on_grid"
    if fwd_ok and not rev_ok:
        classification = "forward_holds"
    elif rev_ok and not fwd_ok:
        classification = "reverse_holds"
    else:
        classification = "neither"
    return TwoThirdsPowerReport(p=p_exp, forward=reports["forward"],
                     reverse=reports["reverse"], classification=classification)


def certify_sign(
    t: float,
    s: float,
    x_lo: float,
    x_hi: float,
    sign: str,
    budget: int = 100_000,
) -> list[CertificateNode]:
    """Certify the family log-ratio's sign on ``[x_lo, x_hi]`` by subdivision.

    Adaptive bisection with the outward-rounded monotone enclosure from
    :mod:`meanbounds.intervals`.  Leaves are ``proved_negative`` /
    ``proved_positive`` when the enclosure clears zero; when the node
    budget runs out remaining intervals are marked ``inconclusive``
    (distinct from a disproof, which shows up as a proved leaf of the
    opposite sign).  Returns the full tree in processing order for audit.
    """
    if sign not in ("negative", "positive"):
        raise ValueError(f"sign must be 'negative' or 'positive', got {sign!r}")
    if not 0.0 < x_lo < x_hi < 1.0 or x_hi > EVAL_LIMIT:
        raise ValueError(f"need 0 < x_lo < x_hi <= {EVAL_LIMIT!r}")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    params = FamilyParams.from_t(float(t), float(s))
    nodes: list[CertificateNode] = []
    stack = [(float(x_lo), float(x_hi))]
    while stack:
        a, b = stack.pop()
        enc = enclose_log_ratio(params, a, b)
        if enc.hi < 0.0:
            status = "proved_negative"
        elif enc.lo > 0.0:
            status = "proved_positive"
        else:
            mid = 0.5 * (a + b)
            if len(nodes) + 1 < budget and a < mid < b:
                status = "split"
                stack.append((mid, b))
                stack.append((a, mid))
            else:
                status = "inconclusive"
        nodes.append(CertificateNode(a, b, enc.lo, enc.hi, status))
    return nodes


def certificate_leaves(nodes: list[CertificateNode]) -> list[CertificateNode]:
    return [n for n in nodes if n.status != "split"]


def certificate_succeeded(nodes: list[CertificateNode], sign: str) -> bool:
    """True when every leaf proves the expected sign."""
    want = "proved_negative" if sign == "negative" else "proved_positive"
    leaves = certificate_leaves(nodes)
    return bool(leaves) and all(n.status == want for n in leaves)
