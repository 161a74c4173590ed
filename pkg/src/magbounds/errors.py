"""Exception types shared across the package."""


class MagboundsError(Exception):
    """Base class for all errors raised by magbounds."""


class DomainError(MagboundsError, ValueError):
    """An argument lies outside the domain of a function."""


class PreconditionError(MagboundsError, ValueError):
    """A documented precondition of an operation does not hold."""


class TruncationError(MagboundsError):
    """A series or ladder was truncated below its safe length."""


class ConvergenceError(MagboundsError):
    """An iterative method failed to converge."""


class ToleranceError(MagboundsError):
    """A numerical search could not reach the requested tolerance."""


class FluxWarning(UserWarning):
    """Lattice flux per plaquette too large for continuum comparisons."""


class BoundaryMaximumWarning(UserWarning):
    """A supremum search ended at the edge of its scan interval."""
