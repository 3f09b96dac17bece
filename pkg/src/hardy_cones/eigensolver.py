"""Principal eigenvalue of the degenerate angular Sturm-Liouville problem.

For a cone of aperture ``gamma`` in R^N (N >= 3) the first Dirichlet
eigenvalue of the spherical Laplacian on the axisymmetric cap is the infimum
of

    int_0^gamma u'(t)^2 w(t) dt  /  int_0^gamma u(t)^2 w(t) dt

over functions vanishing at ``gamma``, with ``w(t) = sin(t)**(N-2)``.  The
comparison problem uses ``w(t) = t**(N-2)`` instead.  The weight vanishes at
``t = 0``, so no condition is imposed there: the natural (weighted Neumann)
condition comes out of the variational form.

Discretization is conforming P1 Galerkin, so every discrete eigenvalue is an
upper bound of the continuous one.  The smallest generalized eigenvalue of
the tridiagonal pencil ``(A, M)`` is isolated by bisection on the inertia of
``A - sigma M`` and the vector by one shifted inverse iteration.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .exceptions import AssemblyError, ConvergenceError, DomainError

__all__ = [
    "ConeSpec",
    "WeightKind",
    "Mesh",
    "DiscretePencil",
    "EigenResult",
    "build_mesh",
    "assemble",
    "smallest_eigenpair",
    "sturm_count",
    "lambda1",
    "lambda1_star",
    "axis_flux",
    "DEFAULT_TOL",
]

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_GRADING = 2.0
#: Gauss-Legendre points per element for weight integrals.
QUAD_ORDER = 6
START_N = 64
MAX_N = 2 ** 15
#: Relative bisection width used by the mesh-refinement driver.
INNER_TOL = 1e-14


@dataclass(frozen=True)
class ConeSpec:
    """Axisymmetric cone in R^N with half-opening ``aperture`` (radians).

    For ``dimension == 2`` the aperture is the full opening of the planar
    sector, which is the usual convention for 2-d sectors.
    """

    dimension: int
    aperture: float

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.dimension!r}")
        if not (0.0 < self.aperture < math.pi):
            raise DomainError(f"aperture must lie in (0, pi), got {self.aperture!r}")

    @property
    def classical_part(self) -> float:
        return (self.dimension - 2) ** 2 / 4.0


class WeightKind(enum.Enum):
    TRIG_POWER = "trig"  # sin(t)**(N-2), the true cap
    PURE_POWER = "pure"  # t**(N-2), the comparison problem

    def evaluate(self, t, dim):
        base = np.sin(t) if self is WeightKind.TRIG_POWER else np.asarray(t, dtype=float)
        return base ** (dim - 2)


@dataclass(frozen=True)
class Mesh:
    nodes: np.ndarray
    grading_exponent: float

    @property
    def n(self) -> int:
        return len(self.nodes) - 1


@dataclass
class DiscretePencil:
    """Symmetric tridiagonal pencil on the unconstrained nodes 0..n-1."""

    stiffness_diag: np.ndarray
    stiffness_offdiag: np.ndarray
    mass_diag: np.ndarray
    mass_offdiag: np.ndarray

    def __len__(self):
        return len(self.stiffness_diag)

    def quadratic_forms(self, v):
        """Return ``(v^T A v, v^T M v)``."""
        v = np.asarray(v, dtype=float)
        a = v @ (self.stiffness_diag * v) + 2.0 * (self.stiffness_offdiag @ (v[:-1] * v[1:]))
        m = v @ (self.mass_diag * v) + 2.0 * (self.mass_offdiag @ (v[:-1] * v[1:]))
        return float(a), float(m)

    def rayleigh(self, v):
        a, m = self.quadratic_forms(v)
        return a / m

    def mass_times(self, v):
        out = self.mass_diag * v
        out[:-1] += self.mass_offdiag * v[1:]
        out[1:] += self.mass_offdiag * v[:-1]
        return out

    def dense(self):
        """Dense ``(A, M)``; meant for tests and small pencils."""
        A = np.diag(self.stiffness_diag) + np.diag(self.stiffness_offdiag, 1) + np.diag(self.stiffness_offdiag, -1)
        M = np.diag(self.mass_diag) + np.diag(self.mass_offdiag, 1) + np.diag(self.mass_offdiag, -1)
        return A, M


@dataclass
class EigenResult:
    lam: float
    eigenvector: np.ndarray
    mesh_n: int
    error_estimate: float
    weight: WeightKind
    nodes: np.ndarray = field(repr=False, default=None)
    history: list = field(repr=False, default_factory=list)

    @property
    def eigenfunction_nodal(self):
        """Nodal values including the Dirichlet zero at the aperture."""
        return np.append(self.eigenvector, 0.0)


def build_mesh(cone: ConeSpec, n: int, grading_exponent: float = DEFAULT_GRADING) -> Mesh:
    """Graded mesh ``t_i = gamma * (i/n)**grading`` clustering nodes at the axis."""
    if int(n) != n or n < 8:
        raise DomainError(f"mesh needs n >= 8 elements, got {n!r}")
    if not grading_exponent >= 1.0:
        raise DomainError(f"grading exponent must be >= 1, got {grading_exponent!r}")
    s = np.arange(n + 1, dtype=float) / n
    nodes = cone.aperture * s ** grading_exponent
    nodes[-1] = cone.aperture
    return Mesh(nodes, float(grading_exponent))


_GX, _GW = np.polynomial.legendre.leggauss(QUAD_ORDER)


def assemble(mesh: Mesh, dim: int, weight: WeightKind) -> DiscretePencil:
    """P1 stiffness and mass matrices for the weighted quotient.

    The node at the aperture carries the Dirichlet condition and is dropped;
    node 0 on the axis is left free.
    """
    if dim < 3:
        raise DomainError("the axisymmetric reduction needs N >= 3; use lambda1 for N = 2")
    nodes = np.asarray(mesh.nodes, dtype=float)
    h = np.diff(nodes)
    mid = 0.5 * (nodes[:-1] + nodes[1:])
    t = mid[:, None] + 0.5 * h[:, None] * _GX[None, :]
    s = 0.5 * (1.0 + _GX)
    ww = 0.5 * h[:, None] * _GW[None, :] * weight.evaluate(t, dim)

    k = ww.sum(axis=1) / h ** 2
    m_ll = (ww * (1.0 - s) ** 2).sum(axis=1)
    m_rr = (ww * s ** 2).sum(axis=1)
    m_lr = (ww * s * (1.0 - s)).sum(axis=1)

    n = mesh.n
    a_diag = np.zeros(n + 1)
    m_diag = np.zeros(n + 1)
    a_diag[:-1] += k
    a_diag[1:] += k
    m_diag[:-1] += m_ll
    m_diag[1:] += m_rr

    pencil = DiscretePencil(a_diag[:n], -k[: n - 1], m_diag[:n], m_lr[: n - 1])
    if np.any(pencil.mass_diag <= 0.0):
        raise AssemblyError("non-positive mass diagonal; mesh or weight is degenerate")
    return pencil


def sturm_count(pencil: DiscretePencil, sigma: float) -> int:
    """Number of eigenvalues of ``(A, M)`` strictly below ``sigma``.

    Counts negative pivots of the LDL^T factorization of ``A - sigma M``
    (Sylvester's law of inertia; M is positive definite).
    """
    a = (pencil.stiffness_diag - sigma * pencil.mass_diag).tolist()
    b = (pencil.stiffness_offdiag - sigma * pencil.mass_offdiag).tolist()
    tiny = 1e-300
    d = a[0]
    count = 1 if d < 0.0 else 0
    for ai, bi in zip(a[1:], b):
        if d == 0.0:
            d = tiny
        d = ai - bi * bi / d
        if d < 0.0:
            count += 1
    return count


def _banded(pencil, sigma):
    n = len(pencil)
    ab = np.zeros((3, n))
    off = pencil.stiffness_offdiag - sigma * pencil.mass_offdiag
    ab[0, 1:] = off
    ab[1, :] = pencil.stiffness_diag - sigma * pencil.mass_diag
    ab[2, :-1] = off
    return ab


def smallest_eigenpair(pencil: DiscretePencil, tol: float = INNER_TOL):
    """Smallest generalized eigenpair of a tridiagonal pencil.

    Returns ``(lam, vector)``; the vector is M-normalized with its first
    nonzero entry positive.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    n = len(pencil)
    if n == 1:
        lam = pencil.stiffness_diag[0] / pencil.mass_diag[0]
        return float(lam), np.array([1.0 / math.sqrt(pencil.mass_diag[0])])

    lo = 0.0
    a1, m1 = pencil.quadratic_forms(np.ones(n))
    if not (m1 > 0.0 and a1 > 0.0):
        raise ConvergenceError("all-ones vector has non-positive energy or mass; pencil invariants broken")
    hi = a1 / m1
    if sturm_count(pencil, lo) != 0:
        raise ConvergenceError("pencil has a non-positive eigenvalue; stiffness is not definite")
    # The all-ones Rayleigh quotient is an upper bound; nudge it so the count sees it.
    hi *= 1.0 + 1e-12
    if sturm_count(pencil, hi) < 1:
        raise ConvergenceError("Rayleigh upper bound does not bracket an eigenvalue")
    width = hi - lo
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if sturm_count(pencil, mid) >= 1:
            hi = mid
        else:
            lo = mid
        if not (hi - lo) < width:
            raise ConvergenceError("bisection interval stopped shrinking")
        width = hi - lo
    sigma = 0.5 * (lo + hi)

    rhs = pencil.mass_times(np.ones(n))
    try:
        vec = solve_banded((1, 1), _banded(pencil, sigma), rhs)
    except np.linalg.LinAlgError:
        # sigma hit the eigenvalue to the last bit; any shift just below works
        vec = solve_banded((1, 1), _banded(pencil, lo * (1.0 - 1e-10)), rhs)
    vec /= math.sqrt(pencil.quadratic_forms(vec)[1])
    nz = np.flatnonzero(vec)
    if nz.size and vec[nz[0]] < 0:
        vec = -vec
    rq = pencil.rayleigh(vec)
    lam = min(max(rq, lo), hi)
    return float(lam), vec


def _solve_on(cone, n, weight, grading):
    mesh = build_mesh(cone, n, grading)
    lam, vec = smallest_eigenpair(assemble(mesh, cone.dimension, weight))
    return lam, vec, mesh


def _refine(cone, weight, tol, grading, start_n, max_n):
    if not tol > 0:
        raise DomainError("tol must be positive")
    n = start_n
    lam_prev, _, _ = _solve_on(cone, n, weight, grading)
    extrap_prev = None
    history = [(n, lam_prev, None)]
    while True:
        n *= 2
        lam, vec, mesh = _solve_on(cone, n, weight, grading)
        # P1 eigenvalue error is O(h^2): eliminate it.
        extrap = (4.0 * lam - lam_prev) / 3.0
        history.append((n, lam, extrap))
        if extrap_prev is not None:
            change = abs(extrap - extrap_prev)
            if change <= tol * abs(extrap):
                return EigenResult(extrap, vec, n, change, weight, mesh.nodes, history)
        if 2 * n > max_n:
            change = abs(extrap - extrap_prev) if extrap_prev is not None else abs(lam - lam_prev)
            log.warning("lambda1 refinement hit n=%d with relative change %.3g > tol %.3g",
                        n, change / abs(extrap), tol)
            return EigenResult(extrap, vec, n, change, weight, mesh.nodes, history)
        lam_prev, extrap_prev = lam, extrap


def lambda1(cone: ConeSpec, tol: float = DEFAULT_TOL, *, grading: float = DEFAULT_GRADING,
            start_n: int = START_N, max_n: int = MAX_N) -> EigenResult:
    """Principal Dirichlet eigenvalue of the spherical Laplacian on the cone's cap.

    N = 2 returns the exact sector value pi^2/gamma^2.  For N >= 3 the P1
    eigenvalue is computed on successively doubled meshes, Richardson
    extrapolated, and refined until two consecutive extrapolants agree to
    ``tol`` relative; their difference is the error estimate.
    """
    if cone.dimension == 2:
        lam = math.pi ** 2 / cone.aperture ** 2
        return EigenResult(lam, np.empty(0), 0, 0.0, WeightKind.TRIG_POWER)
    return _refine(cone, WeightKind.TRIG_POWER, tol, grading, start_n, max_n)


def lambda1_star(cone: ConeSpec, tol: float = DEFAULT_TOL, *, grading: float = DEFAULT_GRADING,
                 start_n: int = START_N, max_n: int = MAX_N) -> EigenResult:
    """First eigenvalue of the comparison problem with weight t^(N-2).

    Its exact value is (B1/gamma)^2, B1 the first zero of J_{(N-3)/2}.
    """
    if cone.dimension < 3:
        raise DomainError("lambda1_star needs N >= 3")
    return _refine(cone, WeightKind.PURE_POWER, tol, grading, start_n, max_n)


def axis_flux(result: EigenResult, dim: int) -> float:
    """Discrete weighted flux ``w(t1) (u1 - u0) / (t1 - t0)`` at the axis.

    Tends to zero under refinement: the hidden Neumann condition at t = 0.
    """
    t0, t1 = result.nodes[0], result.nodes[1]
    u = result.eigenfunction_nodal
    w1 = float(result.weight.evaluate(np.array(t1), dim))
    return abs(w1 * (u[1] - u[0]) / (t1 - t0))
