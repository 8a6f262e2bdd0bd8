"""
Test suite for RecurrentGF API endpoints.

This module contains tests for all API endpoints including:
- Root endpoint (/) - endpoint index
- Status and health endpoints
- Engine endpoints (/genfunc, /solve, /green, /expand, /verify)
- Request validation and error mapping
"""

import json

import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.tests.conftest import PROBLEMS_DIR

client = TestClient(app)


def load(stem):
    return json.loads((PROBLEMS_DIR / f"{stem}.json").read_text(encoding="utf-8"))


def test_root():
    """Test the root endpoint lists the application and its routes."""
    response = client.get("/")
    assert response.status_code == 200
    data = response.json()
    assert data["application"] == "RecurrentGF"
    assert data["version"] == "1.0.0"
    assert "POST /genfunc" in data["endpoints"]


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert "sympy" in data


def test_status():
    """Test the status endpoint returns version, limits and statistics."""
    client.post("/genfunc", json=load("fibonacci"))
    response = client.get("/status")
    assert response.status_code == 200
    data = response.json()
    assert data["application"] == "RecurrentGF"
    assert data["version"] == "1.0.0"
    assert data["limits"]["max_box_cells"] > 0
    assert data["stats"]["total_requests"] >= 1
    assert "genfunc" in data["stats"]["operations"]


def test_genfunc_worked_example():
    """Test the worked example assembles to (z - 1)/P."""
    response = client.post("/genfunc?short_names=true", json=load("worked_example"))
    assert response.status_code == 200
    data = response.json()
    assert data["variables"] == ["z", "w"]
    assert data["numerator"] == [{"alpha": [1, 0], "c": "1"}, {"alpha": [0, 0], "c": "-1"}]
    assert data["denominator"] == load("worked_example")["expected"]["denominator"]


def test_solve_fibonacci():
    response = client.post("/solve", json={"problem": load("fibonacci"), "box": [8]})
    assert response.status_code == 200
    data = response.json()
    assert data["kind"] == "solution"
    assert [e["value"] for e in data["entries"]] == ["0", "1", "1", "2", "3", "5", "8", "13", "21"]


def test_solve_box_too_small():
    response = client.post("/solve", json={"problem": load("worked_example"), "box": [1, 0]})
    assert response.status_code == 400
    assert response.json()["detail"]["code"] == "BoxTooSmall"


def test_green_shift():
    response = client.post("/green", json={"problem": load("shift"), "tau": [0]})
    assert response.status_code == 200
    data = response.json()
    assert data["numerator"] == [{"alpha": [0], "c": "1"}]
    assert data["denominator"] == [{"alpha": [1], "c": "1"}, {"alpha": [0], "c": "-1"}]


def test_green_outside_X0():
    response = client.post("/green", json={"problem": load("worked_example"), "tau": [2, 1]})
    assert response.status_code == 400
    assert response.json()["detail"]["code"] == "Tau0NotInX0"


def test_expand():
    gf = {"numerator": [{"alpha": [0], "c": "1"}], "denominator": [{"alpha": [1], "c": "1"}, {"alpha": [0], "c": "-1"}]}
    response = client.post("/expand", json={"gf": gf, "order": 3})
    assert response.status_code == 200
    data = response.json()
    assert data["kind"] == "expansion"
    assert [e["value"] for e in data["entries"]] == ["1"] * 4


def test_expand_not_expandable():
    gf = {
        "numerator": [{"alpha": [0, 0], "c": "1"}],
        "denominator": [{"alpha": [1, 0], "c": "1"}, {"alpha": [0, 1], "c": "1"}],
    }
    response = client.post("/expand", json={"gf": gf, "order": 2})
    assert response.status_code == 422
    assert response.json()["detail"]["code"] == "NotExpandableAtInfinity"


def test_verify_worked_example():
    response = client.post("/verify", json={"problem": load("worked_example"), "box": [10, 6]})
    assert response.status_code == 200
    data = response.json()
    assert data["passed"] is True
    assert [c["name"] for c in data["checks"]][:2] == ["oracle", "residual"]


def test_verify_failure_is_a_report():
    """Test a failing verification is returned with status 200 and passed = false."""
    problem = load("worked_example")
    problem["data"]["entries"][1]["value"] = "5"
    response = client.post("/verify", json={"problem": problem, "box": [6, 4]})
    assert response.status_code == 200
    assert response.json()["passed"] is False


def test_unsupported_face_data():
    problem = {
        "dim": 3,
        "m": [1, 1, 1],
        "coeffs": [{"alpha": [1, 1, 1], "c": "1"}, {"alpha": [0, 0, 0], "c": "-1"}],
        "data": {"rays": [{"anchor": [1, 1, 0], "direction": 0, "rec_coeffs": ["-1", "1"], "initial": ["1"]}]},
    }
    response = client.post("/genfunc", json=problem)
    assert response.status_code == 422
    assert response.json()["detail"]["code"] == "UnsupportedFaceData"


@pytest.mark.parametrize("change,expected_status", [
    (lambda p: p["coeffs"][0].update(c=0.5), 422),
    (lambda p: p["coeffs"][0].update(c="1/0"), 422),
    (lambda p: p.update(m=[2]), 422),
    (lambda p: p.update(coeffs=p["coeffs"][1:]), 400),
    (lambda p: p["data"]["entries"].append({"x": [2, 1], "value": "1"}), 400),
])
def test_genfunc_invalid(change, expected_status):
    """Test invalid requests return appropriate error codes."""
    problem = load("worked_example")
    change(problem)
    response = client.post("/genfunc", json=problem)
    assert response.status_code == expected_status
