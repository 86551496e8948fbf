"""Multiplicative-error function of a priority vector, its derivatives and optimality checks.

e(mu) = sum_i sum_j (ln m_ij - ln(mu_i / mu_j))^2. At a solution of the
geometric heuristic the partial derivatives over the unknown concepts vanish.
The Hessian there is diag(1/mu) * 4(nI - J) * diag(1/mu), which is singular
in the direction of mu itself (e is invariant under rescaling all priorities),
so over all n coordinates it is only positive semidefinite; the block over
the unknown concepts is positive definite whenever a reference concept exists.
"""
import logging
from typing import Iterable, Optional

import numpy as np

from src.config.settings import settings
from src.models.diagnostics import OptimalityReport
from src.models.pairwise import PcMatrix, PriorityVector
from src.services.consistency import validate
from src.services.errors import NonReciprocalError

logger = logging.getLogger(__name__)

_DOMINANCE_MARGIN = 1e-12


def _inputs(mu: PriorityVector, matrix: PcMatrix) -> tuple[np.ndarray, np.ndarray]:
    if mu.n != matrix.n:
        raise ValueError(f"priority vector has {mu.n} entries, matrix has {matrix.n} concepts")
    log_m = np.log(matrix.to_array())
    np.fill_diagonal(log_m, 0.0)
    return np.log(mu.to_array()), log_m


def _require_reciprocal(matrix: PcMatrix) -> None:
    report = validate(matrix)
    if not report.reciprocal:
        raise NonReciprocalError(
            "the gradient simplification assumes m_ij = 1/m_ji; the matrix has "
            f"{len(report.violations)} reciprocity violation(s) (use error_gradient_general)",
            report=report,
        )


def error_function(mu: PriorityVector, matrix: PcMatrix) -> float:
    """Sum of squared logarithmic (multiplicative) errors."""
    log_mu, log_m = _inputs(mu, matrix)
    residual = log_m - (log_mu[:, None] - log_mu[None, :])
    np.fill_diagonal(residual, 0.0)
    return float(np.sum(residual ** 2))


def error_gradient(mu: PriorityVector, matrix: PcMatrix) -> tuple[float, ...]:
    """
    Analytic partial derivatives of e for a reciprocal matrix.

    de/dmu_i = -4 (sum_{j != i}(ln mu_j + ln m_ij) - (n-1) ln mu_i) / mu_i

    Raises:
        NonReciprocalError: If the matrix is not reciprocal
    """
    _require_reciprocal(matrix)
    log_mu, log_m = _inputs(mu, matrix)
    n = matrix.n
    inner = (log_mu.sum() - log_mu) + log_m.sum(axis=1) - (n - 1) * log_mu
    return tuple(float(g) for g in -4.0 * inner / mu.to_array())


def error_gradient_general(mu: PriorityVector, matrix: PcMatrix) -> tuple[float, ...]:
    """
    Analytic partial derivatives of e without assuming reciprocity.

    de/dmu_i = (4(n-1) ln mu_i - 4 sum_{j != i} ln mu_j
                + 2 sum_{r != i} ln m_ri - 2 sum_{j != i} ln m_ij) / mu_i
    """
    log_mu, log_m = _inputs(mu, matrix)
    n = matrix.n
    inner = (
        4.0 * (n - 1) * log_mu
        - 4.0 * (log_mu.sum() - log_mu)
        + 2.0 * log_m.sum(axis=0)
        - 2.0 * log_m.sum(axis=1)
    )
    return tuple(float(g) for g in inner / mu.to_array())


def error_gradient_numeric(
    mu: PriorityVector,
    matrix: PcMatrix,
    step: Optional[float] = None,
) -> tuple[float, ...]:
    """Central finite differences of e with step ``step * mu_i`` per coordinate."""
    step = settings.finite_difference_step if step is None else step
    base = mu.to_array()
    gradient = []
    for i in range(base.size):
        h = step * base[i]
        forward, backward = base.copy(), base.copy()
        forward[i] += h
        backward[i] -= h
        e_plus = error_function(PriorityVector(values=tuple(forward)), matrix)
        e_minus = error_function(PriorityVector(values=tuple(backward)), matrix)
        gradient.append((e_plus - e_minus) / (2.0 * h))
    return tuple(gradient)


def hessian(mu: PriorityVector) -> np.ndarray:
    """Hessian of e at a stationary point: 4(n-1)/mu_i^2 on the diagonal, -4/(mu_i mu_j) elsewhere."""
    u = 1.0 / mu.to_array()
    n = u.size
    h = -4.0 * np.outer(u, u)
    np.fill_diagonal(h, 4.0 * (n - 1) * u ** 2)
    return h


def _dominant(h: np.ndarray) -> bool:
    diag = np.abs(np.diag(h))
    off = np.abs(h).sum(axis=1) - diag
    return bool(np.all(diag - off > _DOMINANCE_MARGIN * diag))


def _eigen_range(h: np.ndarray) -> tuple[float, float]:
    eigenvalues = np.linalg.eigvalsh(h)
    return float(eigenvalues[0]), float(eigenvalues[-1])


def optimality_report(
    solution: PriorityVector,
    matrix: PcMatrix,
    unknown: Optional[Iterable[int]] = None,
) -> OptimalityReport:
    """
    Evaluate e, its gradient and the Hessian conditions at *solution*.

    Args:
        solution: Strictly positive priorities
        matrix: Reciprocal PC matrix
        unknown: Optional 0-based positions of the free (unknown) concepts;
            when given, the gradient maximum and the restricted Hessian checks
            use only these coordinates

    Raises:
        NonReciprocalError: If the matrix is not reciprocal
    """
    gradient = np.array(error_gradient(solution, matrix))
    mu = solution.to_array()
    n = mu.size
    free = sorted(set(unknown)) if unknown is not None else None
    if free is not None and any(not 0 <= i < n for i in free):
        raise ValueError(f"unknown positions must lie in 0..{n - 1}")

    others = mu.sum() - mu
    sum_bound_condition = bool(np.all(mu < (n - 1) * others))

    h = hessian(solution)
    lowest, highest = _eigen_range(h)
    tol = settings.definiteness_tolerance * abs(highest)

    restricted_dominant = restricted_pd = None
    if free:
        block = h[np.ix_(free, free)]
        restricted_dominant = _dominant(block)
        block_low, block_high = _eigen_range(block)
        restricted_pd = block_low > settings.definiteness_tolerance * abs(block_high)
        gradient_max = float(np.max(np.abs(gradient[free])))
    else:
        gradient_max = float(np.max(np.abs(gradient)))

    report = OptimalityReport(
        error_value=error_function(solution, matrix),
        gradient_max=gradient_max,
        gradient=tuple(float(g) for g in gradient),
        sum_bound_condition=sum_bound_condition,
        hessian_dominant=_dominant(h),
        hessian_positive_definite=lowest > tol,
        hessian_positive_semidefinite=lowest >= -tol,
        hessian_min_eigenvalue=lowest,
        hessian_max_eigenvalue=highest,
        unknowns=tuple(i + 1 for i in free) if free is not None else None,
        restricted_dominant=restricted_dominant,
        restricted_positive_definite=restricted_pd,
    )
    logger.debug(
        "Optimality: e=%.6g, max|grad|=%.3e, sum bound=%s",
        report.error_value, report.gradient_max, report.sum_bound_condition,
    )
    return report
