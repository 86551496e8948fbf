"""Tests for API endpoints."""
from fastapi.testclient import TestClient
import pytest

from src.main import app

client = TestClient(app)

EXAMPLE_ONE = [
    [1, 3 / 5, 4 / 7, 5 / 8, 5 / 9],
    [5 / 3, 1, 5 / 7, 5 / 2, 10 / 3],
    [7 / 4, 7 / 5, 1, 7 / 2, 4],
    [8 / 5, 2 / 5, 2 / 7, 1, 4 / 3],
    [9 / 5, 3 / 10, 1 / 4, 3 / 4, 1],
]


def test_health_check():
    """Test the health endpoint."""
    response = client.get("/health")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert "version" in data


def test_check_endpoint():
    """Test the consistency report endpoint."""
    response = client.post("/check", json={"matrix": EXAMPLE_ONE})
    assert response.status_code == 200
    data = response.json()
    assert data["reciprocal"] is True
    assert data["koczkodaj"] == pytest.approx(0.757, abs=1e-3)
    assert data["worst_triad"] == [1, 3, 5]


def test_check_rejects_invalid_matrix():
    """Test a nonpositive entry is rejected with 422."""
    response = client.post("/check", json={"matrix": [[1, 0], [1, 1]]})
    assert response.status_code == 422


def test_rank_endpoint():
    """Test geometric ranking with labels."""
    response = client.post(
        "/rank",
        json={
            "matrix": EXAMPLE_ONE,
            "labels": ["A", "B", "C", "D", "E"],
            "known": {"2": 5, "3": 7},
        },
    )
    assert response.status_code == 200
    data = response.json()
    assert data["method"] == "hre-geom"
    assert data["labels"] == ["A", "B", "C", "D", "E"]
    assert data["ranking"] == [3, 2, 4, 1, 5]
    assert data["raw"][1:3] == [5.0, 7.0]
    assert data["optimality"]["restricted_positive_definite"] is True


def test_rank_endpoint_gm_normalized():
    """Test a classic method with normalized output."""
    response = client.post(
        "/rank", json={"matrix": [[1, 1], [1, 1]], "method": "gm", "normalize": True}
    )
    assert response.status_code == 200
    assert response.json()["priorities"] == pytest.approx([0.5, 0.5])


def test_rank_endpoint_infeasible():
    """Test an infeasible arithmetic solution is a regular response."""
    matrix = [[1, 9, 1 / 9, 1], [1 / 9, 1, 9, 1], [9, 1 / 9, 1, 1], [1, 1, 1, 1]]
    response = client.post("/rank", json={"matrix": matrix, "known": {"4": 1}, "method": "hre-arith"})
    assert response.status_code == 200
    assert response.json()["feasible"] is False


def test_rank_endpoint_singular():
    """Test a singular arithmetic system maps to 409."""
    matrix = [[1, 2, 1], [2, 1, 1], [1, 1, 1]]
    response = client.post("/rank", json={"matrix": matrix, "known": {"3": 1}, "method": "hre-arith"})
    assert response.status_code == 409


def test_rank_endpoint_errors():
    """Test missing references, unknown methods and bad reference indices."""
    assert client.post("/rank", json={"matrix": EXAMPLE_ONE}).status_code == 400
    assert client.post("/rank", json={"matrix": EXAMPLE_ONE, "method": "x", "known": {"2": 5}}).status_code == 400
    assert client.post("/rank", json={"matrix": EXAMPLE_ONE, "known": {"9": 5}}).status_code == 422
    assert client.post("/rank", json={"matrix": EXAMPLE_ONE, "known": {"2": 5}, "base": 1}).status_code == 422


def test_diagnose_endpoint():
    """Test diagnostics of the computed and a provided solution."""
    response = client.post("/diagnose", json={"matrix": EXAMPLE_ONE, "known": {"2": 5, "3": 7}})
    assert response.status_code == 200
    assert response.json()["gradient_max"] <= 1e-6

    response = client.post("/diagnose", json={"matrix": [[1, 1], [1, 1]], "solution": [1, 1]})
    assert response.status_code == 200
    assert response.json()["error_value"] == 0.0

    assert client.post("/diagnose", json={"matrix": [[1, 1], [1, 1]]}).status_code == 400


def test_simulate_endpoint():
    """Test a small seeded experiment."""
    payload = {"n_min": 4, "n_max": 4, "trials": 10, "sigmas": [0.0], "seed": 5}
    response = client.post("/simulate", json=payload)
    assert response.status_code == 200
    cells = response.json()["cells"]
    assert len(cells) == 1
    assert cells[0]["geometric_feasible_rate"] == 1.0
    assert client.post("/simulate", json=payload).json() == response.json()


def test_simulate_endpoint_validation():
    """Test invalid experiment configs are rejected."""
    response = client.post("/simulate", json={"n_min": 2, "n_max": 4, "trials": 10, "sigmas": [0.5]})
    assert response.status_code == 422


def test_rank_endpoint_rejects_repeated_index():
    """Test two keys naming the same concept are rejected."""
    response = client.post("/rank", json={"matrix": EXAMPLE_ONE, "known": {"2": 5, "02": 7}})
    assert response.status_code == 422


def test_rank_endpoint_shared_ranks():
    """Test equal priorities share a rank."""
    response = client.post("/rank", json={"matrix": [[1, 1], [1, 1]], "method": "gm"})
    assert response.status_code == 200
    assert response.json()["ranks"] == [1, 1]
