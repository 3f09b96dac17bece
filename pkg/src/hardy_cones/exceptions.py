"""Exception hierarchy shared by all modules."""


class HardyConeError(Exception):
    """Base class for errors raised by :mod:`hardy_cones`."""


class DomainError(HardyConeError, ValueError):
    """An argument lies outside the domain of the operation."""


class SearchError(HardyConeError):
    """A root search found no sign change in its scan window."""


class AssemblyError(HardyConeError):
    """The discrete pencil violates its structural invariants."""


class ConvergenceError(HardyConeError):
    """An iterative procedure failed to converge.

    ``partial`` holds whatever intermediate result was available, or None.
    """

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class SupportError(HardyConeError, ValueError):
    """A trial function is not supported where the check requires it."""


class QuadratureError(ConvergenceError):
    """Composite quadrature did not reach its tolerance within the level cap."""


class ResidualError(HardyConeError):
    """An identity check left a residual above its tolerance."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report
