"""Randomized experiments comparing feasibility of the geometric and arithmetic heuristics.

Every trial draws its own generator from ``SeedSequence([seed, n, sigma_index, trial])``,
so a trial's outcome does not depend on which thread ran it or in what order.
Cells are aggregated in trial order with exact summation.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from src.config.settings import settings
from src.models.experiments import ExperimentCell, ExperimentConfig, ExperimentResult
from src.models.pairwise import HreProblem, PcMatrix, ReferenceAssignment
from src.services.consistency import consistent_from_weights, koczkodaj_index, validate
from src.services.errors import NonReciprocalError, SingularMatrixError
from src.services.hre import solve_arithmetic, solve_geometric

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence]

WEIGHT_BOUND = 9.0


@dataclass(frozen=True)
class TrialOutcome:
    """What a single trial observed."""

    koczkodaj: float
    geometric_feasible: bool
    geometric_singular: bool
    arithmetic_feasible: bool
    arithmetic_singular: bool
    arithmetic_dominant: bool
    geometric_error: Optional[float]
    arithmetic_error: Optional[float]


def gen_weights(n: int, seed: SeedLike) -> np.ndarray:
    """Positive weights drawn log-uniformly in [1/9, 9]."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    rng = np.random.default_rng(seed)
    bound = math.log(WEIGHT_BOUND)
    return np.exp(rng.uniform(-bound, bound, size=n))


def gen_consistent(n: int, seed: SeedLike) -> PcMatrix:
    """Consistent matrix m_ij = w_i / w_j for weights from :func:`gen_weights`."""
    return consistent_from_weights(gen_weights(n, seed))


def perturb_reciprocal(
    matrix: PcMatrix,
    sigma: float,
    seed: SeedLike,
    scale_bound: Optional[float] = None,
) -> PcMatrix:
    """
    Multiply each upper-triangle judgment by exp(N(0, sigma)) and rebuild the lower triangle.

    Upper entries are clamped to [1/S, S] and the lower triangle is set to
    their exact reciprocals. With sigma = 0 the matrix is returned as is.

    Raises:
        NonReciprocalError: If the input matrix is not reciprocal
        ValueError: If sigma < 0 or S <= 1
    """
    if not sigma >= 0:
        raise ValueError(f"sigma must be >= 0, got {sigma!r}")
    bound = settings.scale_bound if scale_bound is None else float(scale_bound)
    if not bound > 1:
        raise ValueError(f"scale bound must be greater than 1, got {bound!r}")
    report = validate(matrix)
    if not report.reciprocal:
        raise NonReciprocalError("only reciprocal matrices can be perturbed", report=report)
    if sigma == 0:
        return matrix

    rng = np.random.default_rng(seed)
    a = np.array(matrix.to_array())
    n = matrix.n
    upper = np.triu_indices(n, k=1)
    noisy = np.clip(a[upper] * np.exp(rng.normal(0.0, sigma, size=upper[0].size)), 1.0 / bound, bound)
    a[upper] = noisy
    a[upper[1], upper[0]] = 1.0 / noisy
    np.fill_diagonal(a, 1.0)
    return PcMatrix.from_array(a, labels=matrix.labels)


def _recovery_error(values: Sequence[float], weights: np.ndarray, unknown: Sequence[int]) -> float:
    return max(abs(values[j] - weights[j]) / weights[j] for j in unknown)


def build_trial_problem(
    config: ExperimentConfig, n: int, sigma_index: int, trial: int
) -> Tuple[HreProblem, np.ndarray, List[int]]:
    """
    Recreate the problem of one trial from its coordinates.

    Returns:
        The problem, the generating weights and the sorted 0-based unknown positions
    """
    sigma = config.sigmas[sigma_index]
    gen_seed, noise_seed, pick_seed = np.random.SeedSequence([config.seed, n, sigma_index, trial]).spawn(3)

    weights = gen_weights(n, gen_seed)
    matrix = perturb_reciprocal(consistent_from_weights(weights), sigma, noise_seed, config.scale_bound)

    rng = np.random.default_rng(pick_seed)
    k = int(rng.integers(1, n)) if config.k_rule == "random" else config.k_rule
    unknown = sorted(int(i) for i in rng.choice(n, size=k, replace=False))
    known = {i + 1: float(weights[i]) for i in range(n) if i not in unknown}
    problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known=known))
    return problem, weights, unknown


def run_trial(config: ExperimentConfig, n: int, sigma_index: int, trial: int) -> TrialOutcome:
    """Run one trial of the (n, sigma) cell."""
    sigma = config.sigmas[sigma_index]
    problem, weights, unknown = build_trial_problem(config, n, sigma_index, trial)
    matrix = problem.matrix

    geometric_feasible = geometric_singular = False
    geometric_error = None
    try:
        mu = solve_geometric(problem)
        geometric_feasible = True
        geometric_error = _recovery_error(mu.values, weights, unknown)
    except RuntimeError:
        geometric_singular = True
        logger.error("Geometric system singular for n=%d, sigma=%g, trial %d", n, sigma, trial)
    except ValidationError:
        logger.error("Geometric solution not strictly positive for n=%d, sigma=%g, trial %d", n, sigma, trial)

    arithmetic_feasible = arithmetic_singular = arithmetic_dominant = False
    arithmetic_error = None
    try:
        result = solve_arithmetic(problem)
        arithmetic_dominant = result.system.diagonally_dominant
        if result.feasible:
            arithmetic_feasible = True
            arithmetic_error = _recovery_error(result.raw, weights, unknown)
    except SingularMatrixError:
        arithmetic_singular = True
        logger.info("Arithmetic system singular for n=%d, sigma=%g, trial %d", n, sigma, trial)

    return TrialOutcome(
        koczkodaj=koczkodaj_index(matrix),
        geometric_feasible=geometric_feasible,
        geometric_singular=geometric_singular,
        arithmetic_feasible=arithmetic_feasible,
        arithmetic_singular=arithmetic_singular,
        arithmetic_dominant=arithmetic_dominant,
        geometric_error=geometric_error,
        arithmetic_error=arithmetic_error,
    )


def _aggregate(n: int, sigma: float, outcomes: List[TrialOutcome]) -> ExperimentCell:
    trials = len(outcomes)

    def rate(flag: str) -> float:
        return sum(1 for o in outcomes if getattr(o, flag)) / trials

    def worst(attr: str) -> Optional[float]:
        errors = [getattr(o, attr) for o in outcomes if getattr(o, attr) is not None]
        return max(errors) if errors else None

    return ExperimentCell(
        n=n,
        sigma=sigma,
        trials=trials,
        geometric_feasible_rate=rate("geometric_feasible"),
        arithmetic_feasible_rate=rate("arithmetic_feasible"),
        mean_koczkodaj=math.fsum(o.koczkodaj for o in outcomes) / trials,
        geometric_singular_count=sum(1 for o in outcomes if o.geometric_singular),
        arithmetic_singular_count=sum(1 for o in outcomes if o.arithmetic_singular),
        arithmetic_dominant_rate=rate("arithmetic_dominant"),
        geometric_max_recovery_error=worst("geometric_error"),
        arithmetic_max_recovery_error=worst("arithmetic_error"),
    )


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """
    Run every trial of every (n, sigma) cell and aggregate per cell.

    Trial failures are counted, never raised. The result is identical for
    any ``config.workers``.
    """
    tasks = [
        (n, sigma_index, trial)
        for n in config.sizes
        for sigma_index in range(len(config.sigmas))
        for trial in range(config.trials)
    ]
    logger.info(
        "Running %d trials over %d cell(s) with %d worker(s)",
        len(tasks), len(tasks) // config.trials, config.workers,
    )

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(lambda task: run_trial(config, *task), tasks))
    else:
        outcomes = [run_trial(config, *task) for task in tasks]

    cells = []
    for start in range(0, len(tasks), config.trials):
        n, sigma_index, _ = tasks[start]
        cells.append(_aggregate(n, config.sigmas[sigma_index], outcomes[start:start + config.trials]))
    return ExperimentResult(config=config, cells=cells)
