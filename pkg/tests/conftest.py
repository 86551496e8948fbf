"""Test configuration for pytest."""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root directory to Python path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.models.pairwise import HreProblem, ReferenceAssignment  # noqa: E402
from src.services.experiments import gen_weights, perturb_reciprocal  # noqa: E402
from src.services.consistency import consistent_from_weights  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the matrix and known-value files."""
    return FIXTURES


@pytest.fixture
def problem_factory():
    """Build a random HRE problem whose reference values are the generating weights.

    Returns a callable ``(seed, n, sigma) -> (problem, weights)``.
    """
    def build(seed: int, n: int, sigma: float):
        rng = np.random.default_rng(seed)
        weights = gen_weights(n, int(rng.integers(2 ** 32)))
        matrix = perturb_reciprocal(consistent_from_weights(weights), sigma, int(rng.integers(2 ** 32)))
        k = int(rng.integers(1, n))
        unknown = set(int(i) for i in rng.choice(n, size=k, replace=False))
        known = {i + 1: float(weights[i]) for i in range(n) if i not in unknown}
        problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known=known))
        return problem, weights

    return build
