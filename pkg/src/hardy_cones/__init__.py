"""Optimal Hardy constants of cones and numerical checks of Hardy-type inequalities.

The constant of a cone with aperture gamma in R^N is
``(N-2)^2/4 + lambda_1(gamma)``, with ``lambda_1`` the principal eigenvalue of
a degenerate Sturm-Liouville problem on ``(0, gamma)``.
"""

__version__ = "0.1.0"

from .exceptions import (
    AssemblyError,
    ConvergenceError,
    DomainError,
    HardyConeError,
    QuadratureError,
    ResidualError,
    SearchError,
    SupportError,
)
from .special_functions import BesselSpec, BesselZero, bessel_j, cone_bessel_order, first_bessel_zero, gamma_fn
from .eigensolver import (
    ConeSpec,
    DiscretePencil,
    EigenResult,
    Mesh,
    WeightKind,
    assemble,
    build_mesh,
    lambda1,
    lambda1_star,
    smallest_eigenpair,
)
from .hardy import (
    BoundsReport,
    HardyConstant,
    SweepTable,
    asymptotic_ratio,
    bessel_bounds,
    bounds_report,
    convex_lower_bound,
    mu_cone,
    subcritical_witness,
    sweep,
)
from .verify import (
    AxisymmetricTrial,
    IdentityCheckParams,
    IdentityCheckReport,
    RayleighSample,
    TrialFunction1D,
    cone_rayleigh,
    hardy_1d_check,
    identity_l11_check,
    improved_log_check,
    log_lemma_check,
)

__all__ = [
    "BesselSpec",
    "BesselZero",
    "bessel_j",
    "cone_bessel_order",
    "first_bessel_zero",
    "gamma_fn",
    "AssemblyError",
    "ConvergenceError",
    "DomainError",
    "HardyConeError",
    "QuadratureError",
    "ResidualError",
    "SearchError",
    "SupportError",
    "ConeSpec",
    "DiscretePencil",
    "EigenResult",
    "Mesh",
    "WeightKind",
    "assemble",
    "build_mesh",
    "lambda1",
    "lambda1_star",
    "smallest_eigenpair",
    "BoundsReport",
    "HardyConstant",
    "SweepTable",
    "asymptotic_ratio",
    "bessel_bounds",
    "bounds_report",
    "convex_lower_bound",
    "mu_cone",
    "subcritical_witness",
    "sweep",
    "AxisymmetricTrial",
    "IdentityCheckParams",
    "IdentityCheckReport",
    "RayleighSample",
    "TrialFunction1D",
    "cone_rayleigh",
    "hardy_1d_check",
    "identity_l11_check",
    "improved_log_check",
    "log_lemma_check",
]
