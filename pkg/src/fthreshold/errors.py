"""Exception hierarchy shared by every module.

DomainError covers bad input (wrong field, zero form, non-coprime generators).
ResourceError signals that a configured size cap would be exceeded.
InternalConsistencyError is raised when two independent computations that
must agree do not; it indicates a bug rather than bad input.
"""


class FThresholdError(Exception):
    """Base class for all package errors."""


class DomainError(FThresholdError, ValueError):
    """Input outside the domain of an operation."""


class ParseError(DomainError):
    """Malformed polynomial, field or ideal text."""


class InfiniteColengthError(DomainError):
    """Generators share a common factor, so the quotient is infinite."""


class ResourceError(FThresholdError):
    """A configured cap (cells, degree, exponent) would be exceeded."""


class InternalConsistencyError(FThresholdError, AssertionError):
    """Two independent routes to the same quantity disagree."""
