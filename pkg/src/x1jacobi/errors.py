"""Exception hierarchy shared across the library.

Every error raised by this package derives from X1JacobiError so callers
can catch library failures with a single except clause.  Parameter-input
problems additionally derive from ParameterError (and ValueError), which
the service layer maps to HTTP 400 and the CLI maps to exit code 2.
"""


class X1JacobiError(Exception):
    """Base class for all library errors."""


class ParameterError(X1JacobiError, ValueError):
    """Invalid (alpha, beta) input; subclasses name the violated constraint."""


class RangeError(ParameterError):
    """alpha or beta lies outside the open interval (-1, inf)."""


class EqualityError(ParameterError):
    """alpha == beta."""


class SignError(ParameterError):
    """alpha and beta have mixed signs, or one of them is zero."""


class CaseError(ParameterError):
    """Signs agree but the pair fits neither admissible ordering
    (beta > alpha > 0 or -1 < beta < alpha < 0)."""


class DomainError(X1JacobiError, ValueError):
    """Evaluation point outside the admissible interval."""


class NullityError(X1JacobiError):
    """The pencil null space did not have dimension exactly one."""

    def __init__(self, nullity: int, message: str = ""):
        self.nullity = nullity
        super().__init__(message or f"null space has dimension {nullity}, expected 1")


class PrecisionError(X1JacobiError):
    """Quadrature-rule construction failed to converge."""


class ConvergenceError(X1JacobiError):
    """An adaptive numerical process exhausted its budget without converging."""


class ThresholdError(X1JacobiError):
    """A fit was requested too close to a classification threshold."""


class DegenerateError(X1JacobiError):
    """The requested quantity is identically zero, so no decay exponent exists."""
