"""Exception types shared across the package."""


class InsufficientDigitsError(ValueError):
    """Raised when a continued-fraction prefix is too short for the request."""


class SingularMatrixError(ArithmeticError):
    """Raised when a finite tridiagonal matrix is numerically singular."""


class ConsistencyError(RuntimeError):
    """An internal invariant (e.g. subword complexity) was violated."""
