class BaseError(Exception):
    pass


class DomainError(BaseError):
    """Raised when an input lies outside the domain an operation is defined on."""
    pass


class SequenceSyntaxError(DomainError):
    pass


class NotKneadingError(DomainError):
    pass


class NotMIAError(DomainError):
    """Raised when the strip transition matrix is not irreducible and aperiodic."""
    pass


class ConventionError(DomainError):
    """Raised when an input breaks a labelling convention.

    This typically happens when:
    1. A periodic kneading sequence has a period word ending in 0
    2. A height is requested outside the range the word construction covers
    """
    pass


class HeightNotFoundError(DomainError):
    """Raised when the height search passes its denominator cap."""
    pass


class EscapeError(DomainError):
    """Raised when an orbit of the rectangle model reaches a rectangle boundary.

    The orbit computed up to that point is kept on the exception.
    """

    def __init__(self, message: str, partial_orbit: list | None = None):
        super().__init__(message)
        self.partial_orbit = list(partial_orbit or [])


class InternalConsistencyError(BaseError):
    """Raised when two independent computations of the same quantity disagree."""
    pass
