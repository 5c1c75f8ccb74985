"""Exception hierarchy shared by all vonroos modules."""


class VonRoosError(Exception):
    """Base class for every error raised by this package."""


class ParseError(VonRoosError, ValueError):
    """Malformed operator or weight expression.

    ``column`` is 1-based and points at the offending token.
    """

    def __init__(self, message, text="", column=None):
        self.text = text
        self.column = column
        if column is not None:
            message = f"{message} at column {column}"
        super().__init__(message)


class DomainError(VonRoosError, ValueError):
    """A parameter lies outside its admissible range."""


class ConsistencyError(VonRoosError, RuntimeError):
    """An internal self-check failed; this signals a bug in the engine."""


class DegenerateSampleError(VonRoosError, ValueError):
    """Sample points do not determine the interpolant; more samples are needed."""


class WeightEvaluationError(VonRoosError, ArithmeticError):
    """A weight function produced a non-finite or negative value."""


class CoefficientError(VonRoosError, ArithmeticError):
    """The total weight is not positive or the integrand is not finite."""


class ConvergenceError(VonRoosError, ArithmeticError):
    """Quadrature refinement did not reach the requested tolerance.

    ``best`` holds the estimate from the highest order tried.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class EigenSolverError(VonRoosError, ArithmeticError):
    """The tridiagonal eigensolver failed to converge."""
