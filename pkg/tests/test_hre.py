"""Tests for the arithmetic and geometric heuristic rating estimation."""
import math

import numpy as np
import pytest

from src.models.pairwise import HreProblem, PcMatrix, ReferenceAssignment
from src.services.errors import SingularMatrixError
from src.services.experiments import gen_weights
from src.services.consistency import consistent_from_weights
from src.services.hre import (
    build_arithmetic_system,
    build_geometric_system,
    geometric_residual,
    solve_arithmetic,
    solve_geometric,
    solve_geometric_detailed,
)
from src.services.linalg import invert, is_nonsingular_m_matrix
from src.services.loaders import load_known, load_matrix


def _problem(fixtures_dir, matrix_file, known_file):
    return HreProblem(
        matrix=load_matrix(fixtures_dir / matrix_file),
        reference=load_known(fixtures_dir / known_file),
    )


def test_example_one_geometric(fixtures_dir):
    """Test the five-entity example: intermediate system, logarithms and priorities."""
    problem = _problem(fixtures_dir, "example_one_computed_matrix.csv", "example_one_known.json")
    solution = solve_geometric_detailed(problem, base=10)

    np.testing.assert_array_equal(solution.system.a_hat, [[4, -1, -1], [-1, 4, -1], [-1, -1, 4]])
    assert tuple(solution.system.b) == pytest.approx((0.620, 0.949, 0.537), abs=1e-3)
    assert tuple(solution.system.b) == pytest.approx(
        (math.log10(25 / 6), math.log10(80 / 9), math.log10(3.4453125)), abs=1e-12
    )
    assert tuple(solution.log_solution) == pytest.approx((0.335, 0.400, 0.318), abs=1e-3)

    mu = solution.priorities
    assert mu.method == "hre-geom"
    assert mu.values == pytest.approx((2.16, 5, 7, 2.514, 2.08), rel=5e-3)
    assert mu.values[1:3] == (5.0, 7.0)
    assert mu.normalized == pytest.approx((0.115, 0.267, 0.373, 0.134, 0.111), abs=1e-3)


def test_example_one_printed_matrix(fixtures_dir):
    """Test the reciprocal five-entity matrix against the closed-form inverse of A_hat."""
    problem = _problem(fixtures_dir, "example_one_matrix.csv", "example_one_known.json")
    solution = solve_geometric_detailed(problem)

    b = np.asarray(solution.system.b)
    assert tuple(b) == pytest.approx((0.6198, 0.9311, 0.5495), abs=1e-3)
    # (5I - J)^-1 b = (b + sum(b)/2) / 5
    np.testing.assert_allclose(solution.log_solution, (b + b.sum() / 2) / 5, rtol=1e-12)
    assert solution.priorities.warnings == ()


def test_example_two_geometric(fixtures_dir):
    """Test the TV-show example in natural units."""
    problem = _problem(fixtures_dir, "example_two_matrix.csv", "example_two_known.json")
    solution = solve_geometric_detailed(problem, base=10)

    assert tuple(solution.system.b) == pytest.approx((19.137, 19.895, 19.627, 20.118, 21.286), abs=2e-3)
    assert tuple(solution.log_solution) == pytest.approx((6.561, 6.656, 6.623, 6.684, 6.830), abs=2e-3)
    unknowns = solution.priorities.values[:5]
    assert unknowns == pytest.approx((3_643_307, 4_530_955, 4_196_128, 4_831_326, 6_761_938), rel=5e-3)
    assert solution.priorities.values[5:] == (5_500_000.0, 4_500_000.0, 4_950_000.0)
    assert any("not reciprocal" in w for w in solution.priorities.warnings)


def test_two_concepts():
    """Test the smallest problem: one unknown, one known."""
    matrix = PcMatrix(entries=[[1, 3], [1 / 3, 1]])
    problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known={2: 2.0}))

    system = build_arithmetic_system(problem)
    np.testing.assert_allclose(system.a, [[1.0]])
    np.testing.assert_allclose(system.b, [6.0])

    arithmetic = solve_arithmetic(problem)
    assert arithmetic.feasible
    assert arithmetic.raw == pytest.approx((6.0, 2.0))

    geometric = build_geometric_system(problem, base=math.e)
    np.testing.assert_allclose(geometric.b_natural, [math.log(6.0)])
    assert solve_geometric(problem).values == pytest.approx((6.0, 2.0))


def test_arithmetic_system_structure(fixtures_dir):
    """Test A has unit diagonal and -m_ij/(n-1) elsewhere."""
    problem = _problem(fixtures_dir, "example_one_matrix.csv", "example_one_known.json")
    system = build_arithmetic_system(problem)
    m = problem.matrix.to_array()

    assert system.unknowns == (0, 3, 4)
    assert system.index_map == (0, 3, 4, 1, 2)
    np.testing.assert_allclose(np.diag(system.a), 1.0)
    assert system.a[0, 1] == pytest.approx(-m[0, 3] / 4)
    assert system.b[0] == pytest.approx((m[0, 1] * 5 + m[0, 2] * 7) / 4)


def test_arithmetic_example_one(fixtures_dir):
    """Test the arithmetic heuristic solves A mu = b on the five-entity example."""
    problem = _problem(fixtures_dir, "example_one_matrix.csv", "example_one_known.json")
    result = solve_arithmetic(problem)
    system = result.system

    x = np.array([result.raw[i] for i in system.unknowns])
    np.testing.assert_allclose(system.a @ x, system.b, atol=1e-12)
    np.testing.assert_allclose(x, np.linalg.solve(system.a, system.b), rtol=1e-10)
    assert result.feasible
    assert result.priorities.method == "hre-arith"


def test_arithmetic_infeasible(fixtures_dir):
    """Test an inconsistent matrix whose arithmetic solution is negative."""
    problem = _problem(fixtures_dir, "arithmetic_infeasible_matrix.csv", "arithmetic_infeasible_known.json")
    result = solve_arithmetic(problem)

    assert not result.feasible
    assert result.priorities is None
    assert result.raw[:3] == pytest.approx((-27 / 165,) * 3)
    assert result.raw[3] == 1.0
    assert any("infeasible" in w for w in result.warnings)
    assert not result.system.diagonally_dominant

    assert solve_geometric(problem).values == pytest.approx((1.0, 1.0, 1.0, 1.0))


def test_arithmetic_singular():
    """Test that a singular arithmetic system raises."""
    matrix = PcMatrix(entries=[[1, 2, 1], [2, 1, 1], [1, 1, 1]])
    problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known={3: 1.0}))

    with pytest.raises(SingularMatrixError):
        solve_arithmetic(problem)
    assert all(v > 0 for v in solve_geometric(problem).values)


def test_consistent_fixture_exact(fixtures_dir):
    """Test both heuristics recover (4, 2, 1) from the consistent fixture."""
    problem = _problem(fixtures_dir, "consistent_matrix.csv", "consistent_known.json")

    assert solve_geometric(problem).values == pytest.approx((4.0, 2.0, 1.0), rel=1e-12)
    assert solve_arithmetic(problem).raw == pytest.approx((4.0, 2.0, 1.0), rel=1e-12)


def test_normalized_output(fixtures_dir):
    """Test solve_geometric(normalize=True) sums to one."""
    problem = _problem(fixtures_dir, "consistent_matrix.csv", "consistent_known.json")
    vector = solve_geometric(problem, normalize=True)

    assert vector.values == pytest.approx((4 / 7, 2 / 7, 1 / 7), rel=1e-12)


@pytest.mark.parametrize("base", [1.0, 0.5, -10.0, math.inf])
def test_invalid_base(fixtures_dir, base):
    """Test that the logarithm base must exceed 1."""
    problem = _problem(fixtures_dir, "consistent_matrix.csv", "consistent_known.json")
    with pytest.raises(ValueError, match="base"):
        solve_geometric(problem, base=base)


def test_geometric_always_exists(problem_factory):
    """Test strictly positive solutions and M-matrix systems on 1000 random problems."""
    sigmas = (0.5, 1.0, 2.0)
    for trial in range(1000):
        n = 4 + trial % 6
        problem, _ = problem_factory(trial, n, sigmas[trial % 3])
        solution = solve_geometric_detailed(problem)

        assert all(math.isfinite(v) and v > 0 for v in solution.priorities.values)
        assert np.all(invert(solution.system.a_hat) >= -1e-12)
        assert np.allclose(solution.system.row_sums, n - problem.k)


def test_geometric_system_is_m_matrix_for_every_k():
    """Test A_hat is a nonsingular M-matrix for k = 1..n-1."""
    n = 6
    weights = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    matrix = consistent_from_weights(weights)
    for k in range(1, n):
        known = {i: weights[i - 1] for i in range(k + 1, n + 1)}
        problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known=known))
        assert problem.k == k
        assert is_nonsingular_m_matrix(build_geometric_system(problem).a_hat)


def test_consistent_recovery():
    """Test both heuristics recover generating weights on 100 consistent problems."""
    rng = np.random.default_rng(99)
    for trial in range(100):
        n = int(rng.integers(3, 10))
        weights = gen_weights(n, trial)
        matrix = consistent_from_weights(weights)
        k = int(rng.integers(1, n))
        unknown = set(int(i) for i in rng.choice(n, size=k, replace=False))
        known = {i + 1: float(weights[i]) for i in range(n) if i not in unknown}
        problem = HreProblem(matrix=matrix, reference=ReferenceAssignment(known=known))

        np.testing.assert_allclose(solve_geometric(problem).values, weights, rtol=1e-9)
        arithmetic = solve_arithmetic(problem)
        assert arithmetic.feasible
        np.testing.assert_allclose(arithmetic.raw, weights, rtol=1e-9)


def test_base_invariance(problem_factory):
    """Test the priorities do not depend on the logarithm base."""
    for seed in range(20):
        problem, _ = problem_factory(seed, 7, 1.0)
        base_ten = solve_geometric_detailed(problem, base=10)
        natural = solve_geometric_detailed(problem, base=math.e)

        np.testing.assert_allclose(base_ten.priorities.values, natural.priorities.values, rtol=1e-9)
        np.testing.assert_allclose(base_ten.system.b * math.log(10), natural.system.b, rtol=1e-9, atol=1e-12)


def test_scale_invariance(problem_factory):
    """Test scaling the reference values scales every unknown by the same factor."""
    factor = 7.3
    for seed in range(20):
        problem, _ = problem_factory(seed, 6, 0.5)
        scaled = HreProblem(matrix=problem.matrix, reference=problem.reference.scaled(factor))

        original = np.array(solve_geometric(problem).values)
        rescaled = np.array(solve_geometric(scaled).values)
        np.testing.assert_allclose(rescaled, factor * original, rtol=1e-10)


def test_permutation_invariance(problem_factory):
    """Test relabeling concepts permutes the solution the same way."""
    problem, _ = problem_factory(5, 6, 1.0)
    order = [3, 0, 5, 1, 4, 2]
    m = problem.matrix.to_array()
    permuted_matrix = PcMatrix.from_array(m[np.ix_(order, order)])
    new_index = {old: new for new, old in enumerate(order)}
    known = {new_index[i - 1] + 1: v for i, v in problem.reference.known.items()}
    permuted = HreProblem(matrix=permuted_matrix, reference=ReferenceAssignment(known=known))

    original = np.array(solve_geometric(problem).values)
    np.testing.assert_allclose(solve_geometric(permuted).values, original[order], rtol=1e-10)


def test_geometric_residual(problem_factory):
    """Test the solution satisfies the geometric-mean equations."""
    problem, _ = problem_factory(3, 8, 2.0)
    assert geometric_residual(solve_geometric(problem), problem) < 1e-9
