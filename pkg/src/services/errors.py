"""Exception types raised by the ranking services."""
from typing import Optional, Sequence


class HreError(Exception):
    """Base class for all ranking engine errors."""


class UndefinedIndexError(HreError, ValueError):
    """The inconsistency index is not defined for the given matrix size."""


class NonReciprocalError(HreError, ValueError):
    """An operation that relies on m_ij = 1/m_ji received a non-reciprocal matrix."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class SingularMatrixError(HreError, ArithmeticError):
    """Gaussian elimination met a pivot below the singularity threshold."""

    def __init__(self, message: str, column: Optional[int] = None):
        super().__init__(message)
        self.column = column


class ConvergenceError(HreError, ArithmeticError):
    """Power iteration did not converge within the iteration cap."""

    def __init__(self, message: str, last_iterate: Sequence[float], residual: float):
        super().__init__(message)
        self.last_iterate = tuple(last_iterate)
        self.residual = residual


class InputFormatError(HreError, ValueError):
    """A matrix, reference or solution file could not be parsed."""

    def __init__(self, path: str, line: int, column: int, message: str):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column
