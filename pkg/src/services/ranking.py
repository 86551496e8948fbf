"""Ranking of a judgment matrix by any supported method, assembled into a RankReport."""
import hashlib
import json
import logging
import math
from typing import Optional, Sequence, Tuple

from src.config.settings import settings
from src.models.pairwise import HreProblem, PcMatrix, PriorityVector, ReferenceAssignment
from src.models.reports import RankReport
from src.services.classic import ev_method, gm_method
from src.services.consistency import validate
from src.services.hre import solve_arithmetic, solve_geometric_detailed
from src.services.optimality import optimality_report

logger = logging.getLogger(__name__)

METHODS = ("hre-geom", "hre-arith", "ev", "gm")
HRE_METHODS = ("hre-geom", "hre-arith")
TIE_TOLERANCE = 1e-12


def competition_ranks(values: Sequence[float]) -> Tuple[int, ...]:
    """
    1-based rank of each concept: one plus the number of strictly larger values.

    Values within TIE_TOLERANCE (relative) of the previous value in descending
    order share its rank, so (0.2, 0.5, 0.2, 0.1) ranks as (2, 1, 2, 4).
    """
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    ranks = [0] * len(values)
    for position, i in enumerate(order):
        previous = order[position - 1] if position else None
        if previous is not None and math.isclose(values[i], values[previous], rel_tol=TIE_TOLERANCE):
            ranks[i] = ranks[previous]
        else:
            ranks[i] = position + 1
    return tuple(ranks)


def ranking_order(values: Sequence[float]) -> Tuple[int, ...]:
    """1-based indices by descending value; tied concepts in ascending index order."""
    ranks = competition_ranks(values)
    return tuple(i + 1 for i in sorted(range(len(values)), key=lambda i: (ranks[i], i)))


def input_digest(
    matrix: PcMatrix,
    reference: Optional[ReferenceAssignment],
    method: str,
    base: Optional[float],
) -> str:
    """sha256 over a canonical JSON rendering of everything that determines the result."""
    canonical = {
        "matrix": [[repr(float(x)) for x in row] for row in matrix.entries],
        "known": {str(i): repr(float(v)) for i, v in reference.known.items()} if reference else None,
        "method": method,
        "base": repr(float(base)) if base is not None else None,
    }
    payload = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def rank(
    matrix: PcMatrix,
    reference: Optional[ReferenceAssignment] = None,
    method: Optional[str] = None,
    base: Optional[float] = None,
    normalize: bool = False,
) -> RankReport:
    """
    Derive priorities for *matrix* and collect diagnostics.

    Args:
        matrix: The PC matrix
        reference: Known values; required by the heuristic rating methods
        method: One of METHODS (default from settings)
        base: Logarithm base for the geometric heuristic's intermediate values
        normalize: Report the normalized vector as ``priorities``

    Returns:
        RankReport; ``feasible`` is False when the arithmetic solution has
        nonpositive entries

    Raises:
        ValueError: For an unknown method or a missing reference set
        SingularMatrixError: If the arithmetic system is singular
    """
    method = method or settings.default_method
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose one of {', '.join(METHODS)}")
    consistency = validate(matrix)

    problem = None
    b = log_solution = None
    feasible = True
    if method in HRE_METHODS:
        if reference is None:
            raise ValueError(f"method {method} needs known reference values")
        problem = HreProblem(matrix=matrix, reference=reference)
        if method == "hre-geom":
            solution = solve_geometric_detailed(problem, base)
            base = solution.system.base
            raw = solution.priorities.values
            warnings = list(solution.priorities.warnings)
            b = tuple(float(x) for x in solution.system.b)
            log_solution = tuple(float(x) for x in solution.log_solution)
        else:
            result = solve_arithmetic(problem)
            base = None
            raw, feasible, warnings = result.raw, result.feasible, list(result.warnings)
            b = tuple(float(x) for x in result.system.b)
    else:
        vector = ev_method(matrix) if method == "ev" else gm_method(matrix)
        base = None
        raw, warnings = vector.values, list(vector.warnings)
        if reference is not None:
            warnings.append(f"known values are not used by method {method}")

    normalized = None
    optimality = None
    if feasible:
        priorities = PriorityVector(values=raw, method=method)
        normalized = priorities.normalized
        if problem is not None and consistency.reciprocal:
            optimality = optimality_report(priorities, matrix, unknown=problem.unknown_positions)

    use_normalized = normalize and normalized is not None
    report = RankReport(
        method=method,
        feasible=feasible,
        scale="normalized" if use_normalized else "raw",
        priorities=normalized if use_normalized else raw,
        raw=raw,
        normalized=normalized,
        ranking=ranking_order(raw),
        ranks=competition_ranks(raw),
        labels=matrix.labels,
        known=dict(reference.known) if problem is not None else None,
        base=base,
        b=b,
        log_solution=log_solution,
        consistency=consistency,
        optimality=optimality,
        warnings=warnings,
        input_digest=input_digest(matrix, reference if problem is not None else None, method, base),
    )
    logger.debug("Ranked %d concepts with %s: order %s", matrix.n, method, report.ranking)
    return report
