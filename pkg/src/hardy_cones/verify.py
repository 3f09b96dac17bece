"""Numerical checks of Hardy-type inequalities and identities on trial functions.

Each check evaluates both sides of an inequality by composite Gauss
quadrature on an explicit trial function and reports a signed slack.
Axisymmetric trials ``u(r, theta) = rho(r) phi(theta)`` on a cone separate
into products of one-dimensional integrals; the angular coordinates other
than the polar angle contribute a common factor and cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .eigensolver import ConeSpec, EigenResult
from .exceptions import DomainError, ResidualError, SupportError
from .quadrature import IntervalMap, integrate, tensor_nodes

__all__ = [
    "TrialFunction1D",
    "RadialProfile",
    "AngularProfile",
    "AxisymmetricTrial",
    "RayleighSample",
    "InequalityReport",
    "IdentityCheckParams",
    "IdentityCheckReport",
    "hardy_1d_check",
    "log_lemma_check",
    "cone_rayleigh",
    "improved_log_check",
    "identity_l11_check",
    "poly_trial",
    "power_trial",
    "logsine_trial",
    "poly_profile",
    "logsine_profile",
    "cosine_profile",
    "eigen_profile",
    "QUAD_RTOL",
]

#: Relative quadrature tolerance for the inequality checks.
QUAD_RTOL = 1e-10
_R_FLOOR = 1e-250
MAX_LEVEL = 12


# ---------------------------------------------------------------------------
# 1-d trial functions


@dataclass
class TrialFunction1D:
    """Trial function on ``(lo, hi)``, zero at both ends unless noted.

    ``u`` and ``du`` take radii; ``rmap`` is the change of variables used to
    integrate over the support.
    """

    id: str
    params: tuple
    lo: float
    hi: float
    u: Callable
    du: Callable
    rmap: IntervalMap
    vanishes_at_lo: bool = True
    # Optional (numerator, denominator) integrands of the Hardy quotient as
    # functions of the map variable t, for families that underflow in r.
    hardy_integrands: Callable | None = None

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi):
            raise SupportError(f"{self.id}: support ({self.lo}, {self.hi}) must satisfy 0 <= lo < hi")


def poly_trial(p, q, lo, hi):
    """``u = (r-lo)^p (hi-r)^q``; ``p, q >= 1`` keeps u' bounded."""
    if p < 1 or q < 1:
        raise SupportError(f"poly trial needs p, q >= 1, got p={p}, q={q}")

    def u(r):
        return (r - lo) ** p * (hi - r) ** q

    def du(r):
        return p * (r - lo) ** (p - 1) * (hi - r) ** q - q * (r - lo) ** p * (hi - r) ** (q - 1)

    return TrialFunction1D("poly", (p, q), lo, hi, u, du, IntervalMap(lo, hi))


def power_trial(a, hi):
    """Near-minimizer ``u = r^(1/2+a) (1 - r/hi)`` of the 1-d Hardy quotient.

    Integrated through ``r = hi t^k`` with ``k = 1/(2a)``, under which both
    ``u'^2 dr`` and ``u^2/r^2 dr`` become ``k hi^(2a)`` times a bounded
    polynomial in ``s = r/hi``.  Those are evaluated in log space so that
    ``t^k`` underflowing for small a costs nothing.
    """
    if not a > 0:
        raise SupportError("power trial needs a > 0")
    e = 0.5 + a
    k = 1.0 / (2.0 * a)

    def u(r):
        return r ** e * (1.0 - r / hi)

    def du(r):
        return e * r ** (e - 1.0) * (1.0 - r / hi) - r ** e / hi

    def integrands(t):
        with np.errstate(under="ignore", divide="ignore"):
            s = np.exp(k * np.log(t))
        jac = k * hi ** (2.0 * a)  # r^(2a-1) dr/dt, constant for this k
        num = (e * (1.0 - s) - s) ** 2 * jac
        den = (1.0 - s) ** 2 * jac
        return np.vstack([num, den])

    return TrialFunction1D("power", (a,), 0.0, hi, u, du, IntervalMap(0.0, hi, "power", k),
                           hardy_integrands=integrands)


def logsine_trial(lo, hi, shift=0.5):
    """``u = r^shift sin(pi log(r/lo) / log(hi/lo))`` on ``(lo, hi)``.

    With ``shift = 1/2`` the 1-d Hardy quotient is exactly
    ``1/4 + pi^2 / log(hi/lo)^2``.
    """
    if not lo > 0:
        raise SupportError("log-sine trial needs lo > 0")
    ell = math.log(hi / lo)

    def u(r):
        return r ** shift * np.sin(math.pi * np.log(r / lo) / ell)

    def du(r):
        s = math.pi * np.log(r / lo) / ell
        return r ** (shift - 1.0) * (shift * np.sin(s) + (math.pi / ell) * np.cos(s))

    return TrialFunction1D("logsine", (shift,), lo, hi, u, du, IntervalMap(lo, hi, "exp"))


# ---------------------------------------------------------------------------
# samples and reports


@dataclass
class RayleighSample:
    numerator: float
    denominator: float
    quotient: float
    quadrature_nodes: int
    est_quad_error: float

    @classmethod
    def from_parts(cls, num, den, nodes, err):
        if not den > 0:
            raise DomainError("denominator vanishes; trial function is identically zero")
        return cls(float(num), float(den), float(num / den), int(nodes), float(err))


@dataclass
class InequalityReport:
    """Both sides of ``lhs >= rhs`` evaluated on one trial."""

    name: str
    lhs: float
    rhs: float
    sample: RayleighSample
    details: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        """Relative slack ``(lhs - rhs) / lhs``."""
        return (self.lhs - self.rhs) / abs(self.lhs)

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def _mapped(trial_map, g, rtol=QUAD_RTOL, max_level=None, panels=8):
    max_level = MAX_LEVEL if max_level is None else max_level
    def f(t):
        r, dr = trial_map(t)
        with np.errstate(all="ignore"):
            val = g(r) * dr
        # A power map squeezes nodes into subnormal radii where the product
        # singular-factor * Jacobian overflows; the transformed integrand is
        # bounded there and those nodes carry negligible weight.
        return np.where(r > _R_FLOOR, val, 0.0)
    return integrate(f, np.linspace(0.0, 1.0, panels + 1), rtol=rtol, max_level=max_level)


# ---------------------------------------------------------------------------
# one-dimensional inequalities


def hardy_1d_check(trial: TrialFunction1D, rtol=QUAD_RTOL, max_level=MAX_LEVEL) -> RayleighSample:
    """Quotient ``int u'^2 / int u^2/r^2``; never below 1/4 for u(0) = 0."""
    if trial.lo == 0.0 and not trial.vanishes_at_lo:
        raise SupportError("1-d Hardy check needs u(0) = 0")

    if trial.hardy_integrands is not None:
        res = integrate(trial.hardy_integrands, np.linspace(0.0, 1.0, 9), rtol=rtol, max_level=max_level)
    else:
        def g(r):
            return np.vstack([trial.du(r) ** 2, (trial.u(r) / r) ** 2])
        res = _mapped(trial.rmap, g, rtol, max_level)
    num, den = res.value
    return RayleighSample.from_parts(num, den, res.nodes, res.error)


def log_lemma_check(trial: TrialFunction1D, R: float, L: float, rtol=QUAD_RTOL,
                    max_level=MAX_LEVEL) -> InequalityReport:
    """``int_0^R w'^2 r dr >= 1/4 int_0^R w^2 / (r^2 log^2(L/r)) r dr``.

    The right side is computed with ``r = L exp(-1/tau)``, under which it
    becomes ``int w(r(tau))^2 dtau`` over ``(0, 1/log(L/R))``: bounded and
    free of the slow logarithmic decay at the origin.
    """
    if not L > R:
        raise DomainError(f"need L > R, got L={L}, R={R}")
    if not (trial.lo == 0.0 and trial.hi == R):
        raise SupportError("log-lemma trial must live on (0, R)")

    lhs = _mapped(trial.rmap, lambda r: trial.du(r) ** 2 * r, rtol, max_level)
    tau_max = 1.0 / math.log(L / R)

    def f(tau):
        with np.errstate(divide="ignore", under="ignore"):
            r = L * np.exp(-1.0 / tau)
        return trial.u(r) ** 2

    rhs = integrate(f, np.linspace(0.0, tau_max, 9), rtol=rtol, max_level=max_level)
    sample = RayleighSample.from_parts(lhs.value, rhs.value, lhs.nodes + rhs.nodes, max(lhs.error, rhs.error))
    return InequalityReport("log_lemma", lhs.value, 0.25 * rhs.value, sample, {"R": R, "L": L})


# ---------------------------------------------------------------------------
# cone trials


@dataclass
class RadialProfile:
    """``rho`` on ``(lo, hi)`` vanishing at both ends (or decaying fast enough at 0)."""

    rho: Callable
    drho: Callable
    rmap: IntervalMap
    label: str = ""


@dataclass
class AngularProfile:
    """``phi`` on ``(0, gamma)`` with ``phi(gamma) = 0``; ``breaks`` are its panel ends."""

    phi: Callable
    dphi: Callable
    gamma: float
    breaks: np.ndarray
    label: str = ""


@dataclass
class AxisymmetricTrial:
    radial: RadialProfile
    angular: AngularProfile

    def __post_init__(self):
        phi_end = float(self.angular.phi(np.array([self.angular.gamma]))[0])
        if abs(phi_end) > 1e-12:
            raise SupportError(f"angular profile must vanish at gamma (phi(gamma) = {phi_end:.3g})")


def poly_profile(p, lo, hi, dim):
    """``rho = (r-lo)^p (hi-r)^p``."""
    def rho(r):
        return (r - lo) ** p * (hi - r) ** p

    def drho(r):
        return p * (r - lo) ** (p - 1) * (hi - r) ** p - p * (r - lo) ** p * (hi - r) ** (p - 1)

    return RadialProfile(rho, drho, IntervalMap(lo, hi), f"poly{p}")


def logsine_profile(lo, hi, dim):
    """``r^(-(N-2)/2) sin(pi log(r/lo)/log(hi/lo))``.

    Radial quotient ``int rho'^2 r^(N-1) / int rho^2 r^(N-3)`` equals
    ``(N-2)^2/4 + pi^2/log(hi/lo)^2``, approaching the optimal radial constant.
    """
    t = logsine_trial(lo, hi, shift=-(dim - 2) / 2.0)
    return RadialProfile(t.u, t.du, t.rmap, "logsine")


def cosine_profile(gamma):
    """``cos(pi theta / (2 gamma))``; equals cos(theta) on the half-space."""
    c = math.pi / (2.0 * gamma)

    def phi(th):
        return np.cos(c * th)

    def dphi(th):
        return -c * np.sin(c * th)

    return AngularProfile(phi, dphi, gamma, np.linspace(0.0, gamma, 9), "cosine")


def eigen_profile(eig: EigenResult, gamma):
    """Piecewise-linear interpolant of a computed ground state."""
    nodes = np.asarray(eig.nodes, dtype=float)
    vals = eig.eigenfunction_nodal
    slopes = np.diff(vals) / np.diff(nodes)

    def phi(th):
        return np.interp(th, nodes, vals)

    def dphi(th):
        idx = np.clip(np.searchsorted(nodes, th, side="right") - 1, 0, len(slopes) - 1)
        return slopes[idx]

    return AngularProfile(phi, dphi, gamma, nodes, "eigen")


def _angular_integrals(ang: AngularProfile, dim, rtol, max_level):
    def f(th):
        w = np.sin(th) ** (dim - 2)
        return np.vstack([ang.phi(th) ** 2 * w, ang.dphi(th) ** 2 * w])
    # breaks follow the profile, so P1 interpolants are smooth on every panel
    return integrate(f, ang.breaks, order=8, rtol=rtol, max_level=max_level)


def _radial_integrals(rad: RadialProfile, dim, rtol, max_level, L=None):
    def g(r):
        rows = [rad.drho(r) ** 2 * r ** (dim - 1), rad.rho(r) ** 2 * r ** (dim - 3)]
        if L is not None:
            rows.append(rad.rho(r) ** 2 * r ** (dim - 3) / np.log(L / r) ** 2)
        return np.vstack(rows)
    return _mapped(rad.rmap, g, rtol, max_level)


def cone_rayleigh(cone: ConeSpec, trial: AxisymmetricTrial, rtol=QUAD_RTOL,
                  max_level=MAX_LEVEL) -> RayleighSample:
    """Hardy quotient ``int |grad u|^2 / int u^2/|x|^2`` of an axisymmetric trial.

    Never below the cone's optimal constant.
    """
    if cone.dimension < 3:
        raise DomainError("cone_rayleigh needs N >= 3")
    if abs(trial.angular.gamma - cone.aperture) > 1e-12:
        raise SupportError("angular profile aperture does not match the cone")
    ang = _angular_integrals(trial.angular, cone.dimension, rtol, max_level)
    rad = _radial_integrals(trial.radial, cone.dimension, rtol, max_level)
    a_phi, b_phi = ang.value
    r_grad, r_mass = rad.value
    num = r_grad * a_phi + r_mass * b_phi
    den = r_mass * a_phi
    return RayleighSample.from_parts(num, den, ang.nodes + rad.nodes, ang.error + rad.error)


def improved_log_check(dim: int, trial: AxisymmetricTrial, L: float, rtol=QUAD_RTOL,
                       max_level=MAX_LEVEL) -> InequalityReport:
    """Half-ball inequality with logarithmic remainder.

    ``int |grad v|^2 >= N^2/4 int v^2/|x|^2 + 1/4 int v^2/(|x|^2 log^2(L/|x|))``
    for ``v`` supported in the half-ball of radius R < L.
    """
    if dim < 2:
        raise DomainError("need N >= 2")
    if abs(trial.angular.gamma - math.pi / 2) > 1e-12:
        raise SupportError("half-ball trial needs angular support (0, pi/2)")
    R = trial.radial.rmap.hi
    if not L > R:
        raise DomainError(f"need L > R, got L={L}, R={R}")
    ang = _angular_integrals(trial.angular, dim, rtol, max_level)
    rad = _radial_integrals(trial.radial, dim, rtol, max_level, L=L)
    a_phi, b_phi = ang.value
    r_grad, r_mass, r_log = rad.value
    lhs = r_grad * a_phi + r_mass * b_phi
    hardy = r_mass * a_phi
    log_term = r_log * a_phi
    rhs = dim * dim / 4.0 * hardy + 0.25 * log_term
    sample = RayleighSample.from_parts(lhs, hardy, ang.nodes + rad.nodes, ang.error + rad.error)
    return InequalityReport("improved_log", lhs, rhs, sample,
                            {"hardy_integral": hardy, "log_integral": log_term, "L": L, "R": R})


# ---------------------------------------------------------------------------
# change-of-variables identity in the plane


def bump(s):
    """Smooth bump ``exp(-1/(1-s^2))`` on (-1, 1), zero outside."""
    s = np.asarray(s, dtype=float)
    inside = np.abs(s) < 1.0
    out = np.zeros_like(s)
    si = s[inside]
    out[inside] = np.exp(-1.0 / (1.0 - si * si))
    return out


def dbump(s):
    s = np.asarray(s, dtype=float)
    inside = np.abs(s) < 1.0
    out = np.zeros_like(s)
    si = s[inside]
    q = 1.0 - si * si
    out[inside] = np.exp(-1.0 / q) * (-2.0 * si / (q * q))
    return out


@dataclass(frozen=True)
class IdentityCheckParams:
    """Paraboloid ``x2 > gamma_parab x1^2`` and a tensor bump on ``box``.

    ``box = (x1_lo, x1_hi, x2_lo, x2_hi)``; ``c_exp`` defaults to N/2 = 1.
    ``levels`` are the panels per direction of successive refinements.
    """

    gamma_parab: float
    c_exp: float = 1.0
    box: tuple = (0.2, 0.6, 0.8, 1.4)
    levels: tuple = (32, 64, 128)
    order: int = 2
    tol: float = 1e-6

    def __post_init__(self):
        x1_lo, x1_hi, x2_lo, x2_hi = self.box
        if not (x1_lo < x1_hi and x2_lo < x2_hi):
            raise SupportError(f"degenerate box {self.box}")
        # min of x2 - g x1^2 over the closed box sits at a corner or at x1 = 0.
        x1_cands = [x1_lo, x1_hi] + ([0.0] if x1_lo < 0.0 < x1_hi else [])
        gap = min(x2_lo - self.gamma_parab * x1 * x1 for x1 in x1_cands)
        if not gap > 0:
            raise SupportError(f"box {self.box} not strictly inside x2 > {self.gamma_parab} x1^2")
        if not self.levels or any(int(p) != p or p < 1 for p in self.levels):
            raise DomainError("levels must be positive panel counts")
        if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
            raise DomainError(f"levels must increase strictly, got {self.levels}")


@dataclass
class IdentityCheckReport:
    lhs: float
    term_grad: float
    term_hardy: float
    term_mixed: float
    residual: float
    relative_residual: float
    level_residuals: list = field(default_factory=list)
    observed_orders: list = field(default_factory=list)
    hardy_integral: float = 0.0
    remainder_term: float | None = None
    remainder_slack: float | None = None

    @property
    def min_order(self) -> float:
        return min(self.observed_orders) if self.observed_orders else math.nan


def _identity_terms(p: IdentityCheckParams, panels, dim=2):
    g, C = p.gamma_parab, p.c_exp
    x1_lo, x1_hi, x2_lo, x2_hi = p.box
    a, w1 = 0.5 * (x1_lo + x1_hi), 0.5 * (x1_hi - x1_lo)
    b, w2 = 0.5 * (x2_lo + x2_hi), 0.5 * (x2_hi - x2_lo)
    X1, X2, W = tensor_nodes(p.box, panels, p.order)
    s1, s2 = (X1 - a) / w1, (X2 - b) / w2
    B1, B2 = bump(s1), bump(s2)
    v = B1 * B2
    v1 = dbump(s1) / w1 * B2
    v2 = B1 * dbump(s2) / w2

    rho2 = X1 * X1 + X2 * X2
    rho = np.sqrt(rho2)
    d = X2 - g * X1 * X1  # distance-like factor to the paraboloid boundary
    # u = v * G with G = |x|^C / d
    G = rho ** C / d
    G1 = 2.0 * g * X1 * rho ** C / d ** 2 + C * rho ** (C - 2.0) * X1 / d
    G2 = -(rho ** C) / d ** 2 + C * rho ** (C - 2.0) * X2 / d
    u = v * G
    u1 = v1 * G + v * G1
    u2 = v2 * G + v * G2

    lhs = np.sum(W * (v1 ** 2 + v2 ** 2))
    term_grad = np.sum(W * d ** 2 * rho ** (-2.0 * C) * (u1 ** 2 + u2 ** 2))
    hardy_int = np.sum(W * v * v / rho2)
    term_hardy = (C * dim - C * C) * hardy_int
    term_mixed = 2.0 * g * np.sum(W * ((dim - 1) * rho2 - C * X1 * X1) * d * rho ** (-2.0 * C - 2.0) * u * u)
    remainder = g * (dim - 2) * np.sum(W * v * v / d)
    return lhs, term_grad, term_hardy, term_mixed, hardy_int, remainder


def identity_l11_check(params: IdentityCheckParams, dim: int = 2, raise_on_residual: bool = True) -> IdentityCheckReport:
    """Balance the change-of-variables identity for ``u = v |x|^C / (x2 - g x1^2)``.

    ``int |grad v|^2 = int d^2 |x|^-2C |grad u|^2 + (CN - C^2) int v^2/|x|^2
    + 2g int ((N-1)|x|^2 - C x1^2) d |x|^(-2C-2) u^2``  with ``d = x2 - g x1^2``.

    Computed at each refinement level in ``params.levels``; the report holds
    the finest level plus the observed convergence orders of the residual.
    """
    if dim != 2:
        raise DomainError("the identity check runs in the plane only")
    rel = []
    for panels in params.levels:
        lhs, tg, th, tm, hardy_int, remainder = _identity_terms(params, panels, dim)
        residual = lhs - (tg + th + tm)
        scale = max(abs(lhs), abs(tg), abs(th), abs(tm))
        rel.append(abs(residual) / scale)
    orders = []
    for (p0, e0), (p1, e1) in zip(zip(params.levels, rel), zip(params.levels[1:], rel[1:])):
        if e1 == 0.0:
            orders.append(math.inf)
        else:
            orders.append(math.log(e0 / e1) / math.log(p1 / p0))
    report = IdentityCheckReport(lhs, tg, th, tm, residual, rel[-1], rel, orders, hardy_int)
    if params.gamma_parab > 0 and abs(params.c_exp - dim / 2.0) < 1e-15:
        report.remainder_term = remainder
        report.remainder_slack = lhs - dim * dim / 4.0 * hardy_int - remainder
    if raise_on_residual and report.relative_residual > params.tol:
        raise ResidualError(
            f"identity residual {report.relative_residual:.3g} exceeds {params.tol:.3g}; "
            "quadrature under-resolved", report)
    return report
