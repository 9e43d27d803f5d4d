"""Exception types shared across the package."""


class SwallowtailError(Exception):
    """Base class for all errors raised by this package."""


class ToleranceNotReached(SwallowtailError):
    """Adaptive quadrature ran out of subdivisions before meeting the target.

    Carries the best available result in ``partial`` so callers that can
    tolerate a degraded answer (e.g. grid scans) may still use it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DegenerateScaling(SwallowtailError):
    """The large-parameter rescaling is undefined (z = 0)."""


class PathStalled(SwallowtailError):
    """Steepest-descent tracing could not continue (nearby saddle collision)."""


class RegimeError(SwallowtailError):
    """Operation invoked outside the saddle regime it is defined for."""


class DomainError(SwallowtailError):
    """Input outside the mathematical domain of the operation."""


class NoConvergence(SwallowtailError):
    """Iterative refinement failed to converge within the iteration budget."""


class SeedOutOfRange(SwallowtailError):
    """Refinement seed lies outside the configured feasible range."""
