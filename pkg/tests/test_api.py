"""HTTP 接口"""

import math

import pytest
from fastapi.testclient import TestClient

from api.dependencies import RateLimiter
from api.main import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_root_and_health(client):
    assert client.get("/").status_code == 200
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"
    assert "X-Request-ID" in response.headers


def test_table(client):
    response = client.get("/api/table", params={"n": 2})
    assert response.status_code == 200
    assert response.json()["n"] == 2


def test_verify(client):
    response = client.get("/api/verify", params={"n": 2})
    assert response.status_code == 200
    assert response.json()["summary"]["passed"] is True


@pytest.mark.parametrize("n", [1, 99])
def test_dimension_bounds(client, n):
    assert client.get("/api/table", params={"n": n}).status_code == 422


def test_classify_uses_aliases(client):
    body = {"n": 2, "point": {"x": 3 * math.pi / 4}, "grid": 33}
    response = client.post("/api/classify", json=body)
    assert response.status_code == 200
    data = response.json()
    assert data["class"] == "free"
    assert "type" in data


def test_classify_singular_branch(client):
    response = client.post("/api/classify", json={"n": 3, "point": {}, "grid": 33})
    assert response.status_code == 200
    assert response.json()["branch"] == "AN"


def test_domain_error_is_422(client):
    body = {"n": 3, "point": {"nu": {"zp": [1.0, 2.0]}}}
    response = client.post("/api/classify", json=body)
    assert response.status_code == 422
    assert response.json()["error"] == "UsageError"


def test_request_validation_error(client):
    response = client.post("/api/classify", json={"point": {}})
    assert response.status_code == 422
    assert response.json()["errors"]


def test_scan_circle(client):
    response = client.get("/api/scan-circle", params={"n": 2, "samples": 4})
    assert response.status_code == 200
    assert [row["kind"] for row in response.json()] == ["singular", "free", "singular", "free"]


def test_angles(client):
    response = client.post("/api/angles", json={"n": 3, "point": {"nu": {"pp": 0.7}}})
    assert response.status_code == 200
    data = response.json()
    assert data["type"] == "II"
    assert len(data["angles"]) == 4


def test_curve(client):
    response = client.post("/api/curve", json={"n": 2, "point": {}, "samples": 5})
    assert response.status_code == 200
    assert len(response.json()) == 5


def test_horizon(client):
    response = client.post("/api/horizon", json={"n": 2, "tol": 1e-6})
    assert response.status_code == 200
    assert response.json()["t_star"] == pytest.approx(math.pi / 2, abs=1e-6)


def test_horizon_without_crossing(client):
    response = client.post("/api/horizon", json={"n": 2, "lo": 0.7, "hi": 0.8, "tol": 1e-3})
    assert response.status_code == 422
    assert response.json()["error"] == "NoCrossing"


def test_rate_limiter_window():
    limiter = RateLimiter(requests_per_minute=2)
    assert limiter.is_allowed("1.2.3.4")
    assert limiter.is_allowed("1.2.3.4")
    assert not limiter.is_allowed("1.2.3.4")
    assert limiter.is_allowed("5.6.7.8")


def test_rate_limiter_forgets_idle_clients():
    limiter = RateLimiter(requests_per_minute=2, window=60.0)
    for i in range(50):
        assert limiter.is_allowed(f"10.0.0.{i}", now=100.0)
    assert len(limiter.requests) == 50
    assert limiter.is_allowed("10.0.1.1", now=200.0)
    assert set(limiter.requests) == {"10.0.1.1"}


def test_verify_is_rate_limited(client):
    from api.dependencies import get_rate_limiter

    strict = RateLimiter(requests_per_minute=1)
    app.dependency_overrides[get_rate_limiter] = lambda: strict
    try:
        assert client.get("/api/verify", params={"n": 2}).status_code == 200
        assert client.get("/api/verify", params={"n": 2}).status_code == 429
    finally:
        app.dependency_overrides.clear()


def test_even_grid_is_rejected(client):
    response = client.post("/api/classify", json={"n": 2, "point": {}, "grid": 32})
    assert response.status_code == 422
