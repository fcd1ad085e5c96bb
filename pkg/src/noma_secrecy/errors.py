"""Exception types shared across the package."""


class NomaSecrecyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(NomaSecrecyError, ValueError):
    """An argument violates a documented precondition."""


class ConfigurationError(NomaSecrecyError, ValueError):
    """A scenario, scheme, or experiment configuration is invalid."""


class SingularMatrixError(NomaSecrecyError):
    """A matrix that must have independent columns is numerically rank deficient."""


class DeflationError(NomaSecrecyError):
    """A pencil denominator is not positive definite on the search subspace."""


class DegenerateRealizationError(NomaSecrecyError):
    """A channel realization hit a measure-zero degeneracy; callers may redraw."""


class BoundaryError(NomaSecrecyError, ValueError):
    """A power split sits on an excluded boundary of the feasible set."""


class NumericalDegeneracyError(NomaSecrecyError):
    """Consecutive degenerate realizations exhausted the redraw budget."""
