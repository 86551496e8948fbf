"""Heuristic rating estimation with a reference set.

Two heuristics estimate each unknown priority from all the others:

* arithmetic: mu_j is the mean of m_ji * mu_i over i != j, a linear system
  A mu = b that can have nonpositive (infeasible) solutions;
* geometric: mu_j is the geometric mean of the same products; after taking
  logarithms the system matrix has diagonal n-1 and off-diagonal -1, a
  nonsingular M-matrix whenever at least one concept is known, so a strictly
  positive solution always exists.

Unknown concepts are solved in ascending index order and merged back with the
known values into the original concept order.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.config.settings import settings
from src.models.pairwise import HreProblem, PriorityVector
from src.services.consistency import reciprocity_warnings
from src.services.errors import SingularMatrixError
from src.services.linalg import DenseMatrix, DenseVector, solve_linear

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArithmeticSystem:
    """A mu = b for the arithmetic heuristic, unknowns only."""

    a: DenseMatrix
    b: DenseVector
    unknowns: Tuple[int, ...]      # 0-based concept of each system row
    index_map: Tuple[int, ...]     # internal position -> original 0-based position

    @property
    def diagonally_dominant(self) -> bool:
        """Strict row dominance of A, a sufficient condition for a feasible solution."""
        off = np.abs(self.a).sum(axis=1) - np.abs(np.diag(self.a))
        return bool(np.all(np.abs(np.diag(self.a)) > off))


@dataclass(frozen=True)
class GeometricSystem:
    """A_hat mu_hat = b for the logarithmic form of the geometric heuristic."""

    a_hat: DenseMatrix
    b: DenseVector                 # in the reporting base
    b_natural: DenseVector         # natural-log constants actually solved
    base: float
    unknowns: Tuple[int, ...]
    index_map: Tuple[int, ...]

    @property
    def row_sums(self) -> DenseVector:
        return self.a_hat.sum(axis=1)


@dataclass(frozen=True)
class ArithmeticResult:
    """Outcome of the arithmetic heuristic; infeasibility is a value, not an error."""

    feasible: bool
    raw: Tuple[float, ...]                    # full vector in original order, may hold values <= 0
    priorities: Optional[PriorityVector]      # set only when feasible
    system: ArithmeticSystem
    warnings: Tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class GeometricSolution:
    """The geometric system, its logarithmic solution and the resulting priorities."""

    system: GeometricSystem
    log_solution: DenseVector      # mu_hat of the unknowns in the reporting base
    priorities: PriorityVector


def _check_base(base: Optional[float]) -> float:
    base = settings.default_base if base is None else float(base)
    if not math.isfinite(base) or base <= 1:
        raise ValueError(f"logarithm base must be a finite number greater than 1, got {base!r}")
    return base


def _merge(problem: HreProblem, unknown_values: np.ndarray) -> np.ndarray:
    full = np.empty(problem.n)
    full[list(problem.unknown_positions)] = unknown_values
    full[list(problem.known_positions)] = problem.known_values()
    return full


def build_arithmetic_system(problem: HreProblem) -> ArithmeticSystem:
    """
    Rearrange mu_j = (1/(n-1)) sum_{i != j} m_ji mu_i over the unknowns as A mu = b.

    A has unit diagonal and -m_ij/(n-1) off the diagonal; b_i collects the
    known terms (1/(n-1)) sum_{j known} m_ij mu_j.
    """
    m = problem.matrix.to_array()
    unknown, known = list(problem.unknown_positions), list(problem.known_positions)
    scale = 1.0 / (problem.n - 1)

    a = -scale * m[np.ix_(unknown, unknown)]
    np.fill_diagonal(a, 1.0)
    b = scale * (m[np.ix_(unknown, known)] @ problem.known_values())
    return ArithmeticSystem(
        a=a,
        b=b,
        unknowns=problem.unknown_positions,
        index_map=problem.permutation,
    )


def solve_arithmetic(problem: HreProblem) -> ArithmeticResult:
    """
    Solve the arithmetic heuristic.

    Returns:
        ArithmeticResult; ``feasible`` is False when some unknown priority is
        not strictly positive, with the raw solution kept for inspection

    Raises:
        SingularMatrixError: If A is singular (no solution)
    """
    warnings = reciprocity_warnings(problem.matrix)
    system = build_arithmetic_system(problem)
    if not system.diagonally_dominant:
        logger.debug("Arithmetic system is not diagonally dominant; feasibility is not guaranteed")

    x = solve_linear(system.a, system.b)
    full = _merge(problem, x)
    raw = tuple(float(v) for v in full)

    if np.all(np.isfinite(x)) and np.all(x > 0):
        priorities = PriorityVector(values=raw, method="hre-arith", warnings=warnings)
        return ArithmeticResult(feasible=True, raw=raw, priorities=priorities, system=system, warnings=warnings)

    bad = [problem.unknown_positions[r] + 1 for r in range(len(x)) if not x[r] > 0]
    message = f"arithmetic HRE solution is infeasible: nonpositive priority for concept(s) {bad}"
    logger.info(message)
    return ArithmeticResult(
        feasible=False,
        raw=raw,
        priorities=None,
        system=system,
        warnings=warnings + (message,),
    )


def build_geometric_system(problem: HreProblem, base: Optional[float] = None) -> GeometricSystem:
    """
    Logarithmic form of the geometric heuristic over the unknowns.

    b_i = sum_{j unknown, j != i} log m_ij + log g_i with
    g_i = prod_{j known} m_ij mu_j; A_hat has n-1 on the diagonal and -1
    elsewhere, so it depends on n and k only and every row sums to n-k.
    """
    base = _check_base(base)
    log_m = np.log(problem.matrix.to_array())
    unknown, known = list(problem.unknown_positions), list(problem.known_positions)
    k = len(unknown)

    block = log_m[np.ix_(unknown, unknown)]
    judgments = block.sum(axis=1) - np.diag(block)
    log_g = (log_m[np.ix_(unknown, known)] + np.log(problem.known_values())).sum(axis=1)
    b_natural = judgments + log_g

    a_hat = -np.ones((k, k))
    np.fill_diagonal(a_hat, problem.n - 1.0)
    return GeometricSystem(
        a_hat=a_hat,
        b=b_natural / math.log(base),
        b_natural=b_natural,
        base=base,
        unknowns=problem.unknown_positions,
        index_map=problem.permutation,
    )


def solve_geometric_detailed(problem: HreProblem, base: Optional[float] = None) -> GeometricSolution:
    """
    Solve the geometric heuristic and keep the intermediate logarithmic solution.

    The solve runs in natural logarithms; ``base`` only changes the reported
    b and mu_hat, never the priorities.
    """
    warnings = reciprocity_warnings(problem.matrix)
    system = build_geometric_system(problem, base)
    try:
        log_unknowns = solve_linear(system.a_hat, system.b_natural)
    except SingularMatrixError as exc:
        # A_hat is a nonsingular M-matrix for every 1 <= k <= n-1
        raise RuntimeError(f"internal invariant failure: geometric system reported singular ({exc})") from exc

    full = _merge(problem, np.exp(log_unknowns))
    priorities = PriorityVector(
        values=tuple(float(v) for v in full),
        method="hre-geom",
        warnings=warnings,
    )
    return GeometricSolution(
        system=system,
        log_solution=log_unknowns / math.log(system.base),
        priorities=priorities,
    )


def solve_geometric(
    problem: HreProblem,
    base: Optional[float] = None,
    normalize: bool = False,
) -> PriorityVector:
    """
    Priorities from the geometric heuristic, always strictly positive.

    Args:
        problem: Matrix and reference assignment
        base: Logarithm base used for the intermediate report (default from settings)
        normalize: Return the values rescaled to sum to 1 instead of natural units
    """
    priorities = solve_geometric_detailed(problem, base).priorities
    if normalize:
        return PriorityVector(values=priorities.normalized, method=priorities.method, warnings=priorities.warnings)
    return priorities


def geometric_residual(solution: PriorityVector, problem: HreProblem) -> float:
    """
    Largest relative violation of mu_j = (prod_{i != j} m_ji mu_i)^(1/(n-1)) over unknown j.
    """
    if solution.n != problem.n:
        raise ValueError(f"solution has {solution.n} entries, problem has {problem.n} concepts")
    log_m = np.log(problem.matrix.to_array())
    log_mu = np.log(solution.to_array())
    n = problem.n

    worst = 0.0
    for j in problem.unknown_positions:
        others = [i for i in range(n) if i != j]
        target = math.exp(float((log_m[j, others] + log_mu[others]).sum()) / (n - 1))
        worst = max(worst, abs(solution.values[j] - target) / solution.values[j])
    return worst
