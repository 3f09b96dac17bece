"""Hardy constants of cones, their analytic bounds, and aperture sweeps.

For a cone C with cross-section D on the unit sphere,

    mu(C) = (N-2)^2/4 + lambda_1(D),

so everything reduces to the angular eigenvalue from :mod:`.eigensolver`.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .eigensolver import DEFAULT_TOL, ConeSpec, EigenResult, lambda1
from .exceptions import DomainError, HardyConeError
from .special_functions import cone_bessel_order, first_bessel_zero

__all__ = [
    "HardyConstant",
    "BoundCheck",
    "BoundsReport",
    "SweepRow",
    "SweepTable",
    "mu_cone",
    "bessel_bounds",
    "convex_lower_bound",
    "bounds_report",
    "sweep",
    "asymptotic_ratio",
    "subcritical_witness",
    "half_space_constant",
    "worker_count",
]

log = logging.getLogger(__name__)

#: Absolute floor added to the solver's error estimate when judging bounds.
BOUND_FLOOR = 1e-8


@dataclass
class HardyConstant:
    cone: ConeSpec
    mu: float
    lambda1: float
    classical_part: float
    error_estimate: float = 0.0

    def __post_init__(self):
        if not self.mu > self.classical_part:
            raise HardyConeError(f"mu={self.mu} not above the classical constant {self.classical_part}")


def half_space_constant(dim: int) -> float:
    """N^2/4, the Hardy constant of the half-space R^N_+."""
    return dim * dim / 4.0


def mu_cone(cone: ConeSpec, tol: float = DEFAULT_TOL, eig: EigenResult | None = None) -> HardyConstant:
    """Optimal Hardy constant of the cone (singularity at the vertex)."""
    if eig is None:
        eig = lambda1(cone, tol)
    classical = cone.classical_part
    return HardyConstant(cone, classical + eig.lam, eig.lam, classical, eig.error_estimate)


def bessel_bounds(cone: ConeSpec) -> tuple[float, float, float]:
    """``(lower, upper, B1)`` from comparing sin t with t on (0, gamma).

    The comparison eigenvalue (B1/gamma)^2 gets multiplied by
    (sin g / g)^(N-2) for the lower bound and its inverse for the upper.
    """
    if cone.dimension < 3:
        raise DomainError("Bessel bounds need N >= 3")
    g = cone.aperture
    b1 = first_bessel_zero(cone_bessel_order(cone.dimension)).value
    base = (b1 / g) ** 2
    factor = (math.sin(g) / g) ** (cone.dimension - 2)
    return factor * base, base / factor, b1


def convex_lower_bound(cone: ConeSpec) -> float | None:
    """(N-1) pi^2 / (4 gamma^2) for convex cones (gamma <= pi/2), else None."""
    if cone.dimension < 3:
        raise DomainError("convex-cone bound needs N >= 3")
    g = cone.aperture
    if g > math.pi / 2:
        return None
    return (cone.dimension - 1) * math.pi ** 2 / (4.0 * g * g)


@dataclass
class BoundCheck:
    name: str
    bound: float
    slack: float

    @property
    def satisfied(self) -> bool:
        return self.slack >= 0.0


@dataclass
class BoundsReport:
    """Computed eigenvalue against the analytic bounds.

    Slack is signed, with the eigenvalue's error estimate plus
    :data:`BOUND_FLOOR` folded in as tolerance: a negative slack is a real
    violation beyond discretization error.
    """

    cone: ConeSpec
    lambda1_numeric: float
    error_estimate: float
    lower_convex: float | None
    lower_bessel: float
    upper_bessel: float
    b1: float
    checks: list[BoundCheck] = field(default_factory=list)

    @property
    def all_satisfied(self) -> bool:
        return all(c.satisfied for c in self.checks)

    @property
    def slack_min(self) -> float:
        return min(c.slack for c in self.checks)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def bounds_report(cone: ConeSpec, tol: float = DEFAULT_TOL, eig: EigenResult | None = None) -> BoundsReport:
    if cone.dimension < 3:
        raise DomainError("bounds_report needs N >= 3")
    if eig is None:
        eig = lambda1(cone, tol)
    lam, err = eig.lam, eig.error_estimate
    eps = err + BOUND_FLOOR
    lower_b, upper_b, b1 = bessel_bounds(cone)
    lower_c = convex_lower_bound(cone)
    checks = [
        BoundCheck("lower_bessel", lower_b, lam - lower_b + eps),
        BoundCheck("upper_bessel", upper_b, upper_b - lam + eps),
    ]
    if lower_c is not None:
        checks.append(BoundCheck("lower_convex", lower_c, lam - lower_c + eps))
    return BoundsReport(cone, lam, err, lower_c, lower_b, upper_b, b1, checks)


@dataclass
class SweepRow:
    gamma: float
    lambda1: float = math.nan
    mu: float = math.nan
    error_estimate: float = math.nan
    bounds: BoundsReport | None = None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class SweepTable:
    dim: int
    rows: list[SweepRow]
    monotone: bool = True
    violations: list[int] = field(default_factory=list)

    @property
    def gammas(self):
        return np.array([r.gamma for r in self.rows])

    @property
    def lambdas(self):
        return np.array([r.lambda1 for r in self.rows])

    @property
    def bounds_ok(self) -> bool:
        return all(r.bounds is None or r.bounds.all_satisfied for r in self.rows if not r.failed)


def _sweep_row(args):
    dim, gamma, tol = args
    row = SweepRow(gamma)
    try:
        cone = ConeSpec(dim, gamma)
        eig = lambda1(cone, tol)
        row.lambda1 = eig.lam
        row.mu = cone.classical_part + eig.lam
        row.error_estimate = eig.error_estimate
        if dim >= 3:
            row.bounds = bounds_report(cone, tol, eig)
    except Exception as exc:  # a failed row must not abort the sweep
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def worker_count(env_var="HARDY_CONE_THREADS") -> int:
    """Parallelism cap from the environment; 0 or unset means all CPUs."""
    raw = os.environ.get(env_var, "").strip()
    n = int(raw) if raw else 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def sweep(dim: int, gamma_min: float, gamma_max: float, steps: int,
          tol: float = DEFAULT_TOL, workers: int = 1) -> SweepTable:
    """Eigenvalues on a uniform aperture grid, checked for strict decrease.

    A drop between neighbours smaller than twice their combined error
    estimate is inconclusive rather than a violation.
    """
    if int(steps) != steps or steps < 2:
        raise DomainError("steps must be an integer >= 2")
    if not (0.0 < gamma_min < gamma_max < math.pi):
        raise DomainError("need 0 < gamma_min < gamma_max < pi")
    if dim < 2:
        raise DomainError("dimension must be >= 2")
    gammas = np.linspace(gamma_min, gamma_max, int(steps))
    jobs = [(dim, float(g), tol) for g in gammas]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]

    table = SweepTable(dim, rows)
    for i in range(len(rows) - 1):
        a, b = rows[i], rows[i + 1]
        if a.failed or b.failed:
            continue
        gap = a.lambda1 - b.lambda1
        noise = 2.0 * (a.error_estimate + b.error_estimate)
        if gap <= 0.0 and abs(gap) > noise:
            table.violations.append(i)
    table.monotone = not table.violations
    return table


def asymptotic_ratio(dim: int, gamma: float, tol: float = DEFAULT_TOL) -> float:
    """lambda_1(gamma) gamma^2 / B1^2, which tends to 1 as gamma -> 0."""
    if dim < 3:
        raise DomainError("asymptotic_ratio needs N >= 3")
    eig = lambda1(ConeSpec(dim, gamma), tol)
    b1 = first_bessel_zero(cone_bessel_order(dim)).value
    return eig.lam * gamma * gamma / (b1 * b1)


def subcritical_witness(dim: int, gamma: float, tol: float = DEFAULT_TOL) -> HardyConstant:
    """A cone strictly larger than the half-space whose constant is below N^2/4.

    Any smooth domain squeezed between a compact subset of the cone carrying a
    near-optimal test function and the cone itself inherits mu < N^2/4.
    """
    if not (math.pi / 2 < gamma < math.pi):
        raise DomainError("witness cone needs pi/2 < gamma < pi")
    h = mu_cone(ConeSpec(dim, gamma), tol)
    if not h.mu + h.error_estimate < half_space_constant(dim):
        raise AssertionError(
            f"mu={h.mu} is not below N^2/4={half_space_constant(dim)}; solver failure")
    return h
