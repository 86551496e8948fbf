"""Reciprocity, consistency and Koczkodaj inconsistency of PC matrices."""
import itertools
import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from src.config.settings import settings
from src.models.pairwise import ConsistencyReport, PcMatrix, PriorityVector, ReciprocityViolation
from src.services.errors import NonReciprocalError, UndefinedIndexError

logger = logging.getLogger(__name__)


def _triad_value(m_ij: float, m_ik: float, m_kj: float) -> float:
    """min(|1 - m_ij / (m_ik m_kj)|, |1 - (m_ik m_kj) / m_ij|)."""
    q = m_ij / (m_ik * m_kj)
    return min(abs(1.0 - q), abs(1.0 - 1.0 / q))


def _reciprocity_violations(a: np.ndarray, tol: float) -> list[ReciprocityViolation]:
    n = a.shape[0]
    violations = []
    for i, j in itertools.combinations(range(n), 2):
        product = float(a[i, j] * a[j, i])
        if abs(product - 1.0) > tol:
            violations.append(ReciprocityViolation(i=i + 1, j=j + 1, product=product))
    return violations


def _is_consistent(a: np.ndarray, tol: float) -> bool:
    # m_ij m_jk m_ki for every (i, j, k) at once
    triple = a[:, :, None] * a[None, :, :] * a.T[:, None, :]
    return bool(np.all(np.abs(triple - 1.0) <= tol))


def _reduced_index(a: np.ndarray) -> Tuple[float, Optional[Tuple[int, int, int]]]:
    worst, worst_triad = 0.0, None
    for i, j, k in itertools.combinations(range(a.shape[0]), 3):
        value = _triad_value(a[i, j], a[i, k], a[k, j])
        if worst_triad is None or value > worst:
            worst, worst_triad = value, (i + 1, j + 1, k + 1)
    return worst, worst_triad


def validate(
    matrix: PcMatrix,
    reciprocity_tolerance: Optional[float] = None,
    consistency_tolerance: Optional[float] = None,
) -> ConsistencyReport:
    """
    Check reciprocity and consistency of a PC matrix and measure its inconsistency.

    The Koczkodaj index is filled in only for reciprocal matrices with n > 2.

    Args:
        matrix: The PC matrix
        reciprocity_tolerance: Allowed |m_ij m_ji - 1| (default from settings)
        consistency_tolerance: Allowed |m_ij m_jk m_ki - 1| (default from settings)

    Returns:
        ConsistencyReport
    """
    r_tol = settings.reciprocity_tolerance if reciprocity_tolerance is None else reciprocity_tolerance
    c_tol = settings.consistency_tolerance if consistency_tolerance is None else consistency_tolerance
    a = matrix.to_array()

    violations = _reciprocity_violations(a, r_tol)
    reciprocal = not violations
    consistent = reciprocal and _is_consistent(a, c_tol)

    koczkodaj, worst_triad = None, None
    if reciprocal and matrix.n > 2:
        koczkodaj, worst_triad = _reduced_index(a)
    elif not reciprocal:
        logger.info("Matrix is not reciprocal: %d violating pair(s)", len(violations))

    return ConsistencyReport(
        n=matrix.n,
        reciprocal=reciprocal,
        violations=violations,
        consistent=consistent,
        koczkodaj=koczkodaj,
        worst_triad=worst_triad,
    )


def _require_index_domain(matrix: PcMatrix) -> np.ndarray:
    if matrix.n <= 2:
        raise UndefinedIndexError(f"the Koczkodaj index is defined only for n > 2, got n={matrix.n}")
    a = matrix.to_array()
    violations = _reciprocity_violations(a, settings.reciprocity_tolerance)
    if violations:
        report = validate(matrix)
        first = violations[0]
        raise NonReciprocalError(
            f"the Koczkodaj index requires a reciprocal matrix; {len(violations)} pair(s) violate "
            f"reciprocity, e.g. ({first.i}, {first.j}) with m_ij * m_ji = {first.product:.6g}",
            report=report,
        )
    return a


def koczkodaj_index(matrix: PcMatrix) -> float:
    """
    Koczkodaj's inconsistency index of a reciprocal matrix.

    For a reciprocal matrix every ordering of a triple {i, j, k} yields either
    q or 1/q for q = m_ij / (m_ik m_kj), and the triad value is symmetric under
    q -> 1/q, so one evaluation per unordered triple suffices.

    Raises:
        UndefinedIndexError: If n <= 2
        NonReciprocalError: If the matrix is not reciprocal within tolerance
    """
    a = _require_index_domain(matrix)
    return _reduced_index(a)[0]


def koczkodaj_index_exhaustive(matrix: PcMatrix) -> float:
    """Koczkodaj's index by enumeration of all ordered triads with i, j, k distinct."""
    a = _require_index_domain(matrix)
    n = a.shape[0]
    worst = 0.0
    for i, j, k in itertools.permutations(range(n), 3):
        worst = max(worst, _triad_value(a[i, j], a[i, k], a[k, j]))
    return worst


def normalize(values: Sequence[float], method: Optional[str] = None) -> PriorityVector:
    """
    Wrap positive values as a PriorityVector, whose ``normalized`` view sums to 1.

    Raises:
        ValueError: If any value is nonpositive or not finite
    """
    values = tuple(float(v) for v in values)
    for i, value in enumerate(values, start=1):
        if not math.isfinite(value) or value <= 0:
            raise ValueError(f"cannot normalize: value {i} is {value!r}; all values must be strictly positive")
    return PriorityVector(values=values, method=method)


def consistent_from_weights(weights: Sequence[float], labels: Optional[Sequence[str]] = None) -> PcMatrix:
    """Build the consistent matrix m_ij = w_i / w_j from positive weights."""
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size < 2 or np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be a vector of at least 2 strictly positive finite numbers")
    return PcMatrix.from_array(np.divide.outer(w, w), labels=labels)


def reciprocity_warnings(matrix: PcMatrix) -> Tuple[str, ...]:
    """Warnings to attach to results computed from a non-reciprocal matrix."""
    report = validate(matrix)
    if report.reciprocal:
        return ()
    first = report.violations[0]
    message = (
        f"matrix is not reciprocal: {len(report.violations)} violating pair(s), "
        f"e.g. m_{first.i},{first.j} * m_{first.j},{first.i} = {first.product:.6g}"
    )
    logger.warning(message)
    return (message,)
