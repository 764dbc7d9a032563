"""
Integration tests for the FastAPI application.
Uses httpx.AsyncClient with the ASGI transport (no running server needed).
Fixtures are provided by tests/conftest.py.
"""

from __future__ import annotations

import pytest
from fastapi import HTTPException

from multexact import __version__
from multexact.api.errors import http_errors
from multexact.exceptions import SupportTooLarge

EXAMPLE = {"k": 2, "trt": [80, 13, 1, 0], "ctr": [57, 12, 10, 2]}
TOY_MARGINS = {"m": [2, 1, 1, 0], "n_trt": 2, "n_ctr": 2}


class TestHealth:
    async def test_health_ok(self, client):
        r = await client.get("/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok", "version": __version__}


class TestDistEndpoints:
    async def test_joint_from_margins(self, client):
        r = await client.post("/dist/joint", json={"margins": TOY_MARGINS})
        assert r.status_code == 200
        body = r.json()
        assert body["total_weight"] == "6"
        assert [p["weight"] for p in body["points"]] == ["2", "2", "1", "1"]
        assert all(p["alt_mass"] is None for p in body["points"])

    async def test_joint_with_alternative(self, client):
        r = await client.post("/dist/joint", json={
            "table": EXAMPLE, "subset": [0], "alt": "trt=0.9,0.9;ctr=0.75,0.75",
        })
        assert r.status_code == 200
        masses = [p["alt_mass"] for p in r.json()["points"]]
        assert abs(sum(masses) - 1.0) < 1e-9

    async def test_table_and_margins_are_exclusive(self, client):
        r = await client.post("/dist/joint", json={"table": EXAMPLE, "margins": TOY_MARGINS})
        assert r.status_code == 422

    async def test_fisher(self, client):
        r = await client.post("/dist/fisher", json={"table": EXAMPLE})
        assert r.status_code == 200
        body = r.json()
        assert body["alpha"] == 0.025
        assert [e["critical_value"] for e in body["endpoints"]] == [91, 85]
        assert round(body["endpoints"][0]["p"], 4) == 0.0005

    async def test_category_labels(self, client):
        r = await client.post("/dist/fisher", json={
            "table": {"k": 2, "categories": ["00", "01", "10", "11"],
                      "trt": [0, 1, 13, 80], "ctr": [2, 10, 12, 57]},
        })
        assert r.status_code == 200
        assert [e["t"] for e in r.json()["endpoints"]] == [93, 81]


class TestRegionEndpoint:
    async def test_bonferroni_region(self, client):
        r = await client.post("/region", json={
            "table": EXAMPLE, "method": {"name": "bonf-unweighted"},
        })
        assert r.status_code == 200
        body = r.json()
        assert [b["c"] for b in body["boundaries"]] == [92, 86]
        assert body["size"] == 177

    async def test_optimal_area_on_toy(self, client):
        r = await client.post("/region", json={
            "margins": TOY_MARGINS, "method": {"name": "optimal-area"}, "alpha": "0.3",
        })
        assert r.status_code == 200
        body = r.json()
        assert body["members"] == [[2, 2]]
        assert body["level_num"] == "1" and body["level_den"] == "6"

    async def test_power_method_without_alternative(self, client):
        r = await client.post("/region", json={
            "table": EXAMPLE, "method": {"name": "optimal-power"},
        })
        assert r.status_code == 422
        assert "alternative" in r.json()["detail"]

    def test_support_too_large_maps_to_413(self):
        with pytest.raises(HTTPException) as exc:
            with http_errors():
                raise SupportTooLarge("support enumeration", 10)
        assert exc.value.status_code == 413


class TestClosedTestEndpoint:
    async def test_greedy(self, client):
        r = await client.post("/test", json={"table": EXAMPLE, "method": {"name": "greedy"}})
        assert r.status_code == 200
        body = r.json()
        assert body["global"]["rejected"] is True
        assert [e["rejected"] for e in body["elementary"]] == [True, False]
        assert [round(e["p"], 4) for e in body["elementary"]] == [0.0005, 0.3361]
        assert body["assumption"]

    async def test_without_p_values(self, client):
        r = await client.post("/test", json={
            "table": EXAMPLE, "method": {"name": "bonf-hkt"}, "with_p_values": False,
        })
        assert r.status_code == 200
        assert r.json()["global"]["p"] is None

    async def test_bad_alpha(self, client):
        r = await client.post("/test", json={
            "table": EXAMPLE, "method": {"name": "greedy"}, "alpha": "1.5",
        })
        assert r.status_code == 422

    async def test_bad_counts(self, client):
        r = await client.post("/test", json={
            "table": {"k": 2, "trt": [1, 2, 3], "ctr": [1, 2, 3]}, "method": {"name": "greedy"},
        })
        assert r.status_code == 422


class TestPowerEndpoint:
    async def test_exact_power(self, client):
        r = await client.post("/power/exact", json={
            "scenario": {"n": 3, "p_trt": [0.8, 0.8], "p_ctr": [0.2, 0.2], "alpha": "0.1"},
            "method": {"name": "bonf-hkt"},
        })
        assert r.status_code == 200
        body = r.json()
        assert body["mode"] == "exact"
        assert 0.0 <= body["all"] <= body["any"] <= body["global"] <= 1.0

    async def test_infeasible_rho(self, client):
        r = await client.post("/power/exact", json={
            "scenario": {"n": 3, "p_trt": [0.9, 0.1], "p_ctr": [0.5, 0.5], "rho": 0.9},
            "method": {"name": "bonf-hkt"},
        })
        assert r.status_code == 422
        assert "feasible" in r.json()["detail"]
