"""Minimal outward-rounded interval kernel for sign certification.

This is deliberately not a general interval library: it provides exactly
the operations needed to enclose the family log-ratio over a compact
subinterval of (0, 1).  Arithmetic results are widened one step with
``math.nextafter`` in each direction; point evaluations of library
logarithms are widened by ``_LIBM_ULPS`` ulps to cover a faithfully (not
correctly) rounded libm.  Division by an interval containing zero is
rejected rather than returning an unbounded interval.

The log-ratio is enclosed through three globally monotone pieces,

    k(x)  = atanh(x)/x            increasing (series has positive terms),
    m1(x) = -ln(1-x^2)/2          increasing,
    m2(x) = (s/2) ln(1-u x^2)     nonincreasing,

each bounded by its values at the interval endpoints, then combined with
interval addition.  Monotone enclosure avoids the catastrophic dependency
blowup a term-by-term product enclosure would have near x = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .family import FamilyParams

__all__ = ["Interval", "enclose_log_ratio"]

# Error allowance, in ulps, for one libm log/log1p/atanh call.
_LIBM_ULPS = 4


def _down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


def _widen_ulps(x: float, n: int) -> tuple[float, float]:
    lo = hi = x
    for _ in range(n):
        lo = _down(lo)
        hi = _up(hi)
    return lo, hi


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with outward-rounded arithmetic."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        x = float(x)
        return cls(x, x)

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(_down(min(products)), _up(max(products)))

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0.0 <= other.hi:
            raise ZeroDivisionError(f"denominator interval {other} contains 0")
        quotients = (self.lo / other.lo, self.lo / other.hi,
                     self.hi / other.lo, self.hi / other.hi)
        return Interval(_down(min(quotients)), _up(max(quotients)))

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo


def _log_point(x: float) -> Interval:
    """Enclosure of ln(x) at an exact double argument."""
    if x <= 0.0:
        raise ValueError(f"log argument must be > 0, got {x}")
    lo, hi = _widen_ulps(math.log(x), _LIBM_ULPS)
    return Interval(lo, hi)


def _log1p_point(x: float) -> Interval:
    if x <= -1.0:
        raise ValueError(f"log1p argument must be > -1, got {x}")
    lo, hi = _widen_ulps(math.log1p(x), _LIBM_ULPS)
    return Interval(lo, hi)


def _atanh_over_x_point(x: float) -> Interval:
    """Enclosure of atanh(x)/x at a double x in (0, 1).

    atanh(x) = (log1p(x) - log(1-x))/2 with 1-x exact for x >= 1/2 and a
    one-ulp widening below that.
    """
    if x >= 0.5:
        one_minus = Interval.point(1.0 - x)  # exact (Sterbenz)
    else:
        lo, hi = _widen_ulps(1.0 - x, 1)
        one_minus = Interval(lo, hi)
    ln_lo = _log_point(one_minus.lo)
    ln_hi = _log_point(one_minus.hi)
    ln_one_minus = Interval(min(ln_lo.lo, ln_hi.lo), max(ln_lo.hi, ln_hi.hi))
    atanh = (_log1p_point(x) - ln_one_minus) * Interval.point(0.5)
    return atanh / Interval.point(x)


def _m1_point(x: float) -> Interval:
    """Enclosure of -ln(1-x^2)/2 at a double x in (0, 1)."""
    if x >= 0.5:
        one_minus = Interval.point(1.0 - x)
    else:
        lo, hi = _widen_ulps(1.0 - x, 1)
        one_minus = Interval(lo, hi)
    prod = one_minus * _one_plus(x)
    ln_lo = _log_point(prod.lo)
    ln_hi = _log_point(prod.hi)
    return Interval(min(ln_lo.lo, ln_hi.lo), max(ln_lo.hi, ln_hi.hi)) \
        * Interval.point(-0.5)


def _one_plus(x: float) -> Interval:
    lo, hi = _widen_ulps(1.0 + x, 1)
    return Interval(lo, hi)


def _m2_point(params: FamilyParams, x: float) -> Interval:
    """Enclosure of (s/2) ln(1 - u x^2) at a double x in (0, 1)."""
    if params.u == 0.0:
        return Interval.point(0.0)
    if x >= 0.5:
        one_minus = Interval.point(1.0 - x)
    else:
        lo, hi = _widen_ulps(1.0 - x, 1)
        one_minus = Interval(lo, hi)
    xi = Interval.point(x)
    omu_lo, omu_hi = _widen_ulps(params.one_minus_u, 1)
    inner = one_minus * _one_plus(x) + Interval(omu_lo, omu_hi) * xi * xi
    if inner.lo <= 0.0:
        raise ValueError("1 - u x^2 enclosure touches 0; x too close to 1")
    ln_lo = _log_point(inner.lo)
    ln_hi = _log_point(inner.hi)
    return Interval(min(ln_lo.lo, ln_hi.lo), max(ln_lo.hi, ln_hi.hi)) \
        * Interval.point(0.5 * params.s)


def enclose_log_ratio(params: FamilyParams, lo: float, hi: float) -> Interval:
    """Rigorous enclosure of the family log-ratio over [lo, hi] in (0, 1).

    Uses endpoint evaluations of the three monotone pieces; the enclosure
    width shrinks linearly with the interval width, so adaptive bisection
    converges wherever the log-ratio is bounded away from zero.
    """
    if not 0.0 < lo <= hi < 1.0:
        raise ValueError(f"need 0 < lo <= hi < 1, got [{lo}, {hi}]")
    # k increasing, m1 increasing, m2 nonincreasing over [lo, hi].
    k = Interval(_atanh_over_x_point(lo).lo, _atanh_over_x_point(hi).hi)
    m1 = Interval(_m1_point(lo).lo, _m1_point(hi).hi)
    m2 = Interval(_m2_point(params, hi).lo, _m2_point(params, lo).hi)
    return Interval.point(1.0) - k + m1 + m2
