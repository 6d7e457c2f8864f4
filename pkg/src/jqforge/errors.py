"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError -> 2, domain errors -> 3,
and the "no answer exists" pair NotFoundError / NoSolutionError -> 4.
"""


class JqError(Exception):
    """Base class for package errors."""


class ParseError(JqError, ValueError):
    """Input text does not match the expected grammar."""


class DomainError(JqError, ValueError):
    """Arguments are outside the domain of the requested operation."""


class NotInZ2Error(DomainError):
    """A scalar with even denominator appeared where a 2-adic integer is required."""


class UndefinedError(DomainError):
    """The requested closed form does not exist for these arguments."""


class UnsupportedCoefficientsError(DomainError):
    """The solver only handles scalar coefficients; a non-constant one was supplied."""


class IndecomposableError(DomainError):
    """No decomposition of the requested kind exists."""


class NotFoundError(JqError):
    """The search space was exhausted without finding the requested object."""


class ResolutionFailedError(NotFoundError):
    """A decomposition search ran to completion but no admissible candidate appeared."""


class NoSolutionError(NotFoundError):
    """A linear problem is inconsistent; carries the index of the offending constraint."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"no solution; first inconsistent constraint at index {index}")
