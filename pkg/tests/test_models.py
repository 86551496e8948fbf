"""Tests for Pydantic models."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.models.diagnostics import OptimalityReport
from src.models.experiments import ExperimentConfig
from src.models.pairwise import (
    ConsistencyReport,
    HreProblem,
    PcMatrix,
    PriorityVector,
    ReferenceAssignment,
)
from src.models.reports import RankReport

CONSISTENT = [[1, 2, 4], [0.5, 1, 2], [0.25, 0.5, 1]]


def test_pc_matrix_creation():
    """Test creating a PcMatrix from nested lists."""
    matrix = PcMatrix(entries=CONSISTENT, labels=["a", "b", "c"])

    assert matrix.n == 3
    assert matrix.entries[0] == (1.0, 2.0, 4.0)
    assert matrix.labels == ("a", "b", "c")


def test_pc_matrix_array_is_read_only():
    """Test that to_array returns a read-only copy."""
    array = PcMatrix(entries=CONSISTENT).to_array()

    assert array.dtype == np.float64
    with pytest.raises(ValueError):
        array[0, 1] = 3.0


def test_pc_matrix_from_array():
    """Test building a PcMatrix from a numpy array."""
    matrix = PcMatrix.from_array(np.array(CONSISTENT))
    assert matrix == PcMatrix(entries=CONSISTENT)


@pytest.mark.parametrize(
    "entries, message",
    [
        ([[1]], "at least 2 concepts"),
        ([[1, 2], [0.5]], "row 2 has 1 entries"),
        ([[1, 0], [1, 1]], r"entry \(1, 2\)"),
        ([[1, -2], [0.5, 1]], r"entry \(1, 2\)"),
        ([[1, 2], [math.inf, 1]], r"entry \(2, 1\)"),
        ([[1, 2], [0.5, 2]], r"diagonal entry \(2, 2\)"),
    ],
)
def test_pc_matrix_validation(entries, message):
    """Test that invalid matrices are rejected with the offending entry named."""
    with pytest.raises(ValidationError, match=message):
        PcMatrix(entries=entries)


def test_pc_matrix_label_count():
    """Test that the label count must match n."""
    with pytest.raises(ValidationError, match="expected 3 labels"):
        PcMatrix(entries=CONSISTENT, labels=["a", "b"])


def test_reference_assignment_sorted():
    """Test that known values are stored in ascending index order."""
    reference = ReferenceAssignment(known={3: 7.0, 2: 5.0})
    assert list(reference.known) == [2, 3]


@pytest.mark.parametrize("known", [{}, {0: 1.0}, {1: 0.0}, {1: -3.0}, {2: math.nan}])
def test_reference_assignment_validation(known):
    """Test rejection of empty sets, bad indices and nonpositive values."""
    with pytest.raises(ValidationError):
        ReferenceAssignment(known=known)


def test_reference_assignment_scaled():
    """Test scaling every known value."""
    scaled = ReferenceAssignment(known={1: 2.0, 3: 4.0}).scaled(1.5)
    assert scaled.known == {1: 3.0, 3: 6.0}


def test_hre_problem_positions():
    """Test the unknown/known split and the internal permutation."""
    matrix = PcMatrix(entries=np.ones((5, 5)).tolist())
    problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known={2: 5.0, 3: 7.0}))

    assert problem.n == 5
    assert problem.k == 3
    assert problem.unknown_positions == (0, 3, 4)
    assert problem.known_positions == (1, 2)
    assert problem.permutation == (0, 3, 4, 1, 2)
    assert problem.inverse_permutation == (0, 3, 4, 1, 2)
    np.testing.assert_array_equal(problem.known_values(), [5.0, 7.0])


def test_hre_problem_inverse_permutation_round_trip():
    """Test that the inverse permutation undoes the permutation."""
    matrix = PcMatrix(entries=np.ones((6, 6)).tolist())
    problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known={1: 1.0, 5: 2.0}))

    for internal, original in enumerate(problem.permutation):
        assert problem.inverse_permutation[original] == internal


def test_hre_problem_rejects_out_of_range_reference():
    """Test that reference indices must lie within the matrix."""
    with pytest.raises(ValidationError, match="out of range"):
        HreProblem(matrix=PcMatrix(entries=CONSISTENT), reference=ReferenceAssignment(known={4: 1.0}))


def test_hre_problem_needs_an_unknown():
    """Test that at least one concept must remain unknown."""
    with pytest.raises(ValidationError, match="at least one concept must be unknown"):
        HreProblem(
            matrix=PcMatrix(entries=CONSISTENT),
            reference=ReferenceAssignment(known={1: 4.0, 2: 2.0, 3: 1.0}),
        )


def test_priority_vector_normalized():
    """Test the normalized view sums to one."""
    vector = PriorityVector(values=(2.0, 2.0, 4.0), method="gm")

    assert vector.normalized == pytest.approx((0.25, 0.25, 0.5))
    assert math.fsum(vector.normalized) == pytest.approx(1.0)
    assert "normalized" in vector.model_dump()


@pytest.mark.parametrize("values", [(), (1.0, 0.0), (1.0, -1.0), (math.inf,)])
def test_priority_vector_validation(values):
    """Test rejection of empty or nonpositive priority vectors."""
    with pytest.raises(ValidationError):
        PriorityVector(values=values)


def test_consistency_report_requires_reciprocity_for_consistency():
    """Test that a consistent matrix must be reported reciprocal."""
    with pytest.raises(ValidationError, match="necessarily reciprocal"):
        ConsistencyReport(n=3, reciprocal=False, consistent=True)


def test_optimality_report_dominance_implies_definiteness():
    """Test the dominance => positive definiteness implication."""
    fields = dict(
        error_value=0.0,
        gradient_max=0.0,
        gradient=(0.0, 0.0),
        sum_bound_condition=True,
        hessian_positive_semidefinite=True,
        hessian_min_eigenvalue=0.0,
        hessian_max_eigenvalue=1.0,
    )
    with pytest.raises(ValidationError):
        OptimalityReport(hessian_dominant=True, hessian_positive_definite=False, **fields)

    report = OptimalityReport(hessian_dominant=False, hessian_positive_definite=False, **fields)
    assert report.unknowns is None


def test_experiment_config_defaults():
    """Test ExperimentConfig defaults and sizes."""
    config = ExperimentConfig(n_min=4, n_max=6, trials=10, sigmas=(0.5,))

    assert config.k_rule == "random"
    assert config.scale_bound == 9.0
    assert list(config.sizes) == [4, 5, 6]


@pytest.mark.parametrize(
    "overrides",
    [
        {"n_min": 2},
        {"n_max": 65},
        {"n_min": 7, "n_max": 6},
        {"trials": 0},
        {"sigmas": ()},
        {"sigmas": (-0.1,)},
        {"scale_bound": 1.0},
        {"k_rule": 4},
        {"k_rule": "all"},
    ],
)
def test_experiment_config_validation(overrides):
    """Test invalid experiment configurations are rejected."""
    fields = {"n_min": 4, "n_max": 6, "trials": 10, "sigmas": (0.5,)}
    fields.update(overrides)
    with pytest.raises(ValidationError):
        ExperimentConfig(**fields)


def test_rank_report_ranking_must_be_permutation():
    """Test that RankReport rejects a ranking that is not a permutation."""
    consistency = ConsistencyReport(n=2, reciprocal=True, consistent=True)
    fields = dict(
        method="gm", priorities=(0.5, 0.5), raw=(0.5, 0.5), ranks=(1, 1), consistency=consistency,
        input_digest="x",
    )

    assert RankReport(ranking=(1, 2), **fields).feasible
    with pytest.raises(ValidationError, match="permutation"):
        RankReport(ranking=(1, 1), **fields)


def test_rank_report_ranks_follow_ranking():
    """Test that ranking and per-concept ranks must agree."""
    consistency = ConsistencyReport(n=2, reciprocal=True, consistent=True)
    fields = dict(method="gm", priorities=(0.7, 0.3), raw=(0.7, 0.3), consistency=consistency, input_digest="x")

    assert RankReport(ranking=(1, 2), ranks=(1, 2), **fields).ranks == (1, 2)
    with pytest.raises(ValidationError, match="order of rank"):
        RankReport(ranking=(2, 1), ranks=(1, 2), **fields)
    with pytest.raises(ValidationError, match="one entry per concept"):
        RankReport(ranking=(1, 2), ranks=(1,), **fields)
