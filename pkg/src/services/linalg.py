"""Small dense linear algebra: elimination with partial pivoting, inversion, power iteration.

Matrices here are at most a few hundred rows, so everything works on dense
numpy arrays and no backend abstraction is offered.
"""
import logging
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from src.config.settings import settings
from src.services.errors import ConvergenceError, SingularMatrixError

logger = logging.getLogger(__name__)

DenseMatrix = npt.NDArray[np.float64]
DenseVector = npt.NDArray[np.float64]


def as_dense_matrix(a, square: bool = False) -> DenseMatrix:
    """Validate and convert *a* into a 2-D float64 array with finite entries."""
    array = np.array(a, dtype=np.float64)
    if array.ndim != 2 or array.shape[0] == 0 or array.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {array.shape}")
    if square and array.shape[0] != array.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("matrix entries must be finite")
    return array


def as_dense_vector(b, length: Optional[int] = None) -> DenseVector:
    """Validate and convert *b* into a 1-D float64 array with finite entries."""
    array = np.array(b, dtype=np.float64)
    if array.ndim != 1 or array.size == 0:
        raise ValueError(f"expected a non-empty vector, got shape {array.shape}")
    if length is not None and array.size != length:
        raise ValueError(f"expected a vector of length {length}, got {array.size}")
    if not np.all(np.isfinite(array)):
        raise ValueError("vector entries must be finite")
    return array


def _eliminate(a: DenseMatrix, rhs: DenseMatrix, threshold: float) -> DenseMatrix:
    """Solve a @ X = rhs for a block of right-hand sides. Works on copies."""
    a = a.copy()
    x = rhs.copy()
    n = a.shape[0]
    scale = float(np.max(np.abs(a)))
    tol = threshold * scale if scale > 0 else threshold

    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[pivot, col]) <= tol:
            raise SingularMatrixError(
                f"matrix is singular: pivot {a[pivot, col]:.3e} in column {col + 1} "
                f"is below {tol:.3e}",
                column=col + 1,
            )
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            x[[col, pivot]] = x[[pivot, col]]
        factors = a[col + 1:, col] / a[col, col]
        a[col + 1:, col:] -= np.outer(factors, a[col, col:])
        x[col + 1:] -= np.outer(factors, x[col])

    for row in range(n - 1, -1, -1):
        x[row] = (x[row] - a[row, row + 1:] @ x[row + 1:]) / a[row, row]
    return x


def solve_linear(a, b, threshold: Optional[float] = None) -> DenseVector:
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting.

    Args:
        a: Square coefficient matrix
        b: Right-hand side with matching length
        threshold: Pivot threshold relative to max|a_ij| (default from settings)

    Returns:
        The solution vector x

    Raises:
        SingularMatrixError: If a pivot falls below the threshold
    """
    a = as_dense_matrix(a, square=True)
    b = as_dense_vector(b, length=a.shape[0])
    threshold = settings.singular_threshold if threshold is None else threshold
    x = _eliminate(a, b[:, None], threshold)[:, 0]

    residual = float(np.max(np.abs(a @ x - b)))
    if residual > 1e-9 * (1.0 + float(np.max(np.abs(b)))):
        logger.warning("Linear solve residual %.3e exceeds the accuracy target (n=%d)", residual, a.shape[0])
    return x


def invert(a, threshold: Optional[float] = None) -> DenseMatrix:
    """Return the inverse of a square matrix.

    Raises:
        SingularMatrixError: If the matrix is singular
    """
    a = as_dense_matrix(a, square=True)
    threshold = settings.singular_threshold if threshold is None else threshold
    return _eliminate(a, np.eye(a.shape[0]), threshold)


def power_iteration(
    m,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> Tuple[float, DenseVector]:
    """Dominant eigenpair of a positive matrix.

    Starts from the uniform vector and renormalizes to unit L1 norm every step.
    Stops when successive iterates differ by at most ``tol * max|v|``, which is
    the same as ``max|m v - lambda v| <= tol * lambda * max|v|``.

    Returns:
        Tuple of (eigenvalue, eigenvector summing to 1)

    Raises:
        ConvergenceError: If the iteration cap is reached
    """
    m = as_dense_matrix(m, square=True)
    if np.any(m <= 0):
        raise ValueError("power iteration requires a strictly positive matrix")
    tol = settings.power_iteration_tol if tol is None else tol
    max_iter = settings.power_iteration_max_iter if max_iter is None else max_iter
    if tol <= 0:
        raise ValueError("tol must be positive")

    n = m.shape[0]
    v = np.full(n, 1.0 / n)
    residual = float("inf")
    for iteration in range(1, max_iter + 1):
        w = m @ v
        eigenvalue = float(w.sum())
        residual = float(np.max(np.abs(w - eigenvalue * v)))
        if residual <= tol * eigenvalue * float(np.max(np.abs(v))):
            logger.debug("Power iteration converged after %d steps (lambda=%.12g)", iteration, eigenvalue)
            return eigenvalue, v
        v = w / eigenvalue

    raise ConvergenceError(
        f"power iteration did not converge within {max_iter} iterations (residual {residual:.3e})",
        last_iterate=v,
        residual=residual,
    )


def is_z_matrix(a) -> bool:
    """True when every off-diagonal entry is nonpositive."""
    a = as_dense_matrix(a, square=True)
    off_diagonal = a[~np.eye(a.shape[0], dtype=bool)]
    return bool(np.all(off_diagonal <= 0))


def is_nonsingular_m_matrix(a, tolerance: float = 1e-12) -> bool:
    """Check that a Z-matrix is a nonsingular M-matrix.

    Uses the inverse-positivity characterization: the inverse exists and is
    entrywise nonnegative (down to ``-tolerance`` for rounding).
    """
    if not is_z_matrix(a):
        return False
    try:
        inverse = invert(a)
    except SingularMatrixError:
        return False
    return bool(np.all(inverse >= -tolerance))
