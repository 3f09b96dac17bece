"""Gamma and Bessel functions of the first kind, and first positive zeros.

The Bessel routine sums the ascending power series

    J_nu(x) = (x/2)**nu / Gamma(nu + 1) * sum_k (-x**2/4)**k / (k! (nu+1)_k)

in double precision while the terms stay small, and in extended decimal
precision beyond the crossover, where cancellation between large terms would
otherwise eat the significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

from .exceptions import DomainError, SearchError

__all__ = [
    "BesselSpec",
    "BesselZero",
    "gamma_fn",
    "bessel_j",
    "first_bessel_zero",
    "cone_bessel_order",
]

#: Bracketing step for the zero scan; well below the gap between zeros (> pi - eps).
SCAN_STEP = 0.1
#: Width at which zero bisection stops.
BISECTION_WIDTH = 1e-12


@dataclass(frozen=True)
class BesselSpec:
    """Order of a Bessel function of the first kind, restricted to nu >= -1/2."""

    order: float

    def __post_init__(self):
        if not math.isfinite(self.order) or self.order < -0.5:
            raise DomainError(f"Bessel order must be >= -1/2, got {self.order!r}")


@dataclass(frozen=True)
class BesselZero:
    spec: BesselSpec
    value: float
    residual: float


def cone_bessel_order(dim: int) -> BesselSpec:
    """Order (N-3)/2 attached to a cone in dimension ``dim``."""
    return BesselSpec((dim - 3) / 2)


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x!r}")
    return math.gamma(x)


def _crossover(nu):
    return max(12.0, 2.0 * nu)


def _series_float(nu, x):
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if abs(term) < 1e-16 * abs(total) or term == 0.0 or k > 1000:
            return total


def _series_decimal(nu, x):
    # Largest term ~ I_nu(x) ~ e**x, so x/ln(10) digits cancel out.
    digits = 30 + int(x / math.log(10.0)) + 1
    with localcontext() as ctx:
        ctx.prec = digits
        q = -(Decimal(x) * Decimal(x)) / 4
        d_nu = Decimal(nu)
        eps = Decimal(10) ** (-(digits - 5))
        term = Decimal(1)
        total = Decimal(1)
        k = 0
        while True:
            k += 1
            term = term * q / (k * (d_nu + k))
            total += term
            if total != 0 and abs(term) < eps * abs(total):
                break
            if term == 0 or k > 10000:
                break
        return float(total)


def _bessel_j_order(nu, x):
    # Any real order; negative integer orders go through J_{-n} = (-1)^n J_n.
    if nu < 0 and float(nu).is_integer():
        n = int(-nu)
        return (-1) ** n * _bessel_j_order(float(n), x)
    if x == 0.0:
        if nu == 0:
            return 1.0
        return 0.0 if nu > 0 else math.inf
    if x <= _crossover(nu):
        s = _series_float(nu, x)
    else:
        s = _series_decimal(nu, x)
    # Prefactor via logs keeps large nu from overflowing Gamma.
    log_pref = nu * math.log(0.5 * x) - math.lgamma(nu + 1.0)
    sign = math.copysign(1.0, math.gamma(nu + 1.0)) if nu + 1.0 < 0 else 1.0
    return sign * math.exp(log_pref) * s


def _as_spec(spec):
    return spec if isinstance(spec, BesselSpec) else BesselSpec(float(spec))


def bessel_j(spec: BesselSpec | float, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for x >= 0.

    ``spec`` may be a :class:`BesselSpec` or a bare order.
    """
    spec = _as_spec(spec)
    if not x >= 0:
        raise DomainError(f"bessel_j requires x >= 0, got {x!r}")
    return _bessel_j_order(spec.order, float(x))


def first_bessel_zero(spec: BesselSpec | float) -> BesselZero:
    """First positive zero of J_nu.

    Scans upward from the origin in steps of :data:`SCAN_STEP` for the first
    sign change, then bisects the bracket down to :data:`BISECTION_WIDTH`.
    """
    spec = _as_spec(spec)
    nu = spec.order
    limit = nu + 20.0
    # J_nu > 0 on (0, j_1) for nu > -1, so the sign just right of 0 is +.
    lo = 0.0
    k = 1
    while True:
        hi = k * SCAN_STEP
        if hi > limit:
            raise SearchError(f"no sign change of J_{nu} found below x = {limit}")
        f_hi = _bessel_j_order(nu, hi)
        if f_hi <= 0.0:
            break
        lo = hi
        k += 1
    if f_hi == 0.0:
        return BesselZero(spec, hi, 0.0)
    while hi - lo > BISECTION_WIDTH:
        mid = 0.5 * (lo + hi)
        if _bessel_j_order(nu, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    value = 0.5 * (lo + hi)
    return BesselZero(spec, value, abs(_bessel_j_order(nu, value)))
