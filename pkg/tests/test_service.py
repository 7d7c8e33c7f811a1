"""HTTP surface: health, stop listing, planning, error mapping, static UI."""

import math

import pytest
from fastapi.testclient import TestClient

from optimile import __version__
from optimile.bipartite import build_bipartite_graph
from optimile.fares import FareConfig
from optimile.geo import GeoPoint
from optimile.network import generate_grid_city
from optimile.planner import Query, solve
from optimile.service import create_app

from helpers import make_network

FARES = FareConfig()


@pytest.fixture(scope="module")
def city():
    net = generate_grid_city(3, 3, 1.0)
    return net, build_bipartite_graph(net, 2)


@pytest.fixture(scope="module")
def client(city):
    net, graph = city
    return TestClient(create_app(net, graph))


# Origin just off the SW corner stop, destination just off the NE corner.
PLAN_PARAMS = {
    "from_lat": 28.601,
    "from_lon": 77.201,
    "to_lat": 28.619,
    "to_lon": 77.221,
}


class TestHealth:
    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        assert resp.json() == {
            "status": "ok",
            "service": "optimile",
            "version": __version__,
            "stops": 9,
            "routes": 6,
            "max_transfers": 2,
        }


class TestStops:
    def test_listing_matches_network(self, client, city):
        net, _ = city
        resp = client.get("/network/stops")
        assert resp.status_code == 200
        body = resp.json()
        assert len(body) == len(net.stops)
        for out, stop in zip(body, net.stops):
            assert out == {
                "id": stop.id,
                "name": stop.name,
                "lat": stop.location.lat,
                "lon": stop.location.lon,
                "mode": stop.mode,
            }


class TestPlan:
    def test_best_plan_matches_library(self, client, city):
        _, graph = city
        resp = client.get("/plan", params=PLAN_PARAMS)
        assert resp.status_code == 200
        body = resp.json()

        query = Query(
            origin=GeoPoint(PLAN_PARAMS["from_lat"], PLAN_PARAMS["from_lon"]),
            destination=GeoPoint(PLAN_PARAMS["to_lat"], PLAN_PARAMS["to_lon"]),
            max_fare_rs=60,
            w_lm=0.2,
            w_pt=0.8,
            lm_range_km=5.0,
            transfer_penalty_min=0.0,
            max_transfers=graph.max_transfers,
        )
        plan = solve(query, graph, FARES)
        best = body["best"]
        assert best["entry_stop"] == plan.entry_stop
        assert best["exit_stop"] == plan.exit_stop
        assert best["transfers"] == plan.transfers
        assert best["cost"] == plan.cost
        assert best["fare"]["total_rs"] == plan.fare.total_rs
        assert best["total_distance_km"] == plan.total_distance_km

    def test_plan_fields_are_self_consistent(self, client):
        body = client.get("/plan", params=PLAN_PARAMS).json()
        best = body["best"]
        assert best["travel_time_min"] == pytest.approx(
            best["tt_lm_first_min"] + best["tt_pt_min"] + best["tt_lm_last_min"]
        )
        expected_cost = 0.2 * (best["tt_lm_first_min"] + best["tt_lm_last_min"]) + 0.8 * (
            best["tt_pt_min"] + 0.0 * best["transfers"]
        )
        assert best["cost"] == pytest.approx(expected_cost, abs=1e-9)
        fare = best["fare"]
        assert fare["total_rs"] == fare["lm_first_rs"] + fare["lm_last_rs"] + fare["pt_rs"]
        assert fare["total_rs"] < 60
        assert best["total_distance_km"] == pytest.approx(
            best["lm_first_km"] + best["pt_ride_km"] + best["lm_last_km"]
        )
        score = best["score"]
        assert 0.0 <= score["efficiency"] <= 1.0
        assert math.isclose(
            score["efficiency"], 0.5 * score["c_norm"] + 0.5 * score["e_norm"], abs_tol=1e-12
        )

    def test_legs_chain_origin_to_destination(self, client, city):
        net, _ = city
        body = client.get("/plan", params=PLAN_PARAMS).json()
        best = body["best"]
        legs = best["legs"]
        assert [leg["kind"] for leg in legs] == ["lm", "pt", "lm"]
        assert (legs[0]["from_lat"], legs[0]["from_lon"]) == (
            PLAN_PARAMS["from_lat"],
            PLAN_PARAMS["from_lon"],
        )
        assert (legs[2]["to_lat"], legs[2]["to_lon"]) == (
            PLAN_PARAMS["to_lat"],
            PLAN_PARAMS["to_lon"],
        )
        entry = net.stop(best["entry_stop"]).location
        exit_ = net.stop(best["exit_stop"]).location
        assert (legs[0]["to_lat"], legs[0]["to_lon"]) == (entry.lat, entry.lon)
        assert (legs[1]["from_lat"], legs[1]["from_lon"]) == (entry.lat, entry.lon)
        assert (legs[1]["to_lat"], legs[1]["to_lon"]) == (exit_.lat, exit_.lon)
        assert (legs[2]["from_lat"], legs[2]["from_lon"]) == (exit_.lat, exit_.lon)
        assert legs[1]["mode"] in ("bus", "metro")
        for leg in (legs[0], legs[2]):
            assert leg["mode"] in ("walk", "lm")

    def test_ranking_is_sorted_by_cost(self, client):
        body = client.get("/plan", params={**PLAN_PARAMS, "limit": 50}).json()
        plans = [body["best"], *body["alternatives"]]
        assert len(plans) == body["n_feasible"]
        costs = [p["cost"] for p in plans]
        assert costs == sorted(costs)

    def test_limit_truncates_after_scoring(self, client):
        # Normalization runs over the whole feasible set, so the best plan's
        # score must not depend on how many plans the client asked for.
        full = client.get("/plan", params={**PLAN_PARAMS, "limit": 5}).json()
        one = client.get("/plan", params={**PLAN_PARAMS, "limit": 1}).json()
        assert one["alternatives"] == []
        assert one["n_feasible"] == full["n_feasible"]
        assert one["best"] == full["best"]

    def test_optimile_restricts_to_direct_rides(self, client):
        body = client.get("/plan", params={**PLAN_PARAMS, "optimile": "true"}).json()
        for plan in (body["best"], *body["alternatives"]):
            assert plan["transfers"] == 0
        assert body["query"]["optimile"] is True

    def test_query_echo(self, client):
        params = {**PLAN_PARAMS, "max_fare": 90, "w_lm": 0.3, "lm_range_km": 3.0}
        body = client.get("/plan", params=params).json()
        echo = body["query"]
        assert echo["max_fare"] == 90
        assert echo["w_lm"] == 0.3
        assert echo["w_pt"] == pytest.approx(0.7)
        assert echo["lm_range_km"] == 3.0
        assert echo["limit"] == 5

    def test_w_lm_boundary_is_inclusive(self, client):
        assert client.get("/plan", params={**PLAN_PARAMS, "w_lm": 0.5}).status_code == 200


class TestPlanErrors:
    def error_code(self, resp):
        return resp.json()["error"]["code"]

    def test_w_lm_above_half(self, client):
        resp = client.get("/plan", params={**PLAN_PARAMS, "w_lm": 0.8})
        assert resp.status_code == 400
        assert self.error_code(resp) == "WeightConstraintViolated"

    def test_w_lm_zero(self, client):
        resp = client.get("/plan", params={**PLAN_PARAMS, "w_lm": 0.0})
        assert resp.status_code == 400
        assert self.error_code(resp) == "WeightConstraintViolated"

    def test_fare_infeasible(self, client):
        resp = client.get("/plan", params={**PLAN_PARAMS, "max_fare": 1})
        assert resp.status_code == 404
        assert self.error_code(resp) == "FareInfeasible"

    def test_no_candidate_stops(self, client):
        params = {**PLAN_PARAMS, "from_lat": 28.0, "from_lon": 77.2}
        resp = client.get("/plan", params=params)
        assert resp.status_code == 404
        assert self.error_code(resp) == "NoCandidateStops"

    def test_no_connection(self):
        # Two parallel one-way routes with no shared stop: candidates exist on
        # both sides but nothing links them.
        net = make_network(
            stops=[
                ("a1", 28.6, 77.2),
                ("a2", 28.6, 77.21),
                ("b1", 28.65, 77.2),
                ("b2", 28.65, 77.21),
            ],
            routes=[
                ("ra", "bus", ["a1", "a2"], [5.0]),
                ("rb", "bus", ["b1", "b2"], [5.0]),
            ],
        )
        app = create_app(net, build_bipartite_graph(net, 2))
        with TestClient(app) as local:
            resp = local.get(
                "/plan",
                params={
                    "from_lat": 28.6,
                    "from_lon": 77.2,
                    "to_lat": 28.65,
                    "to_lon": 77.21,
                    "lm_range_km": 1.0,
                },
            )
        assert resp.status_code == 404
        assert self.error_code(resp) == "NoConnection"

    def test_invalid_latitude(self, client):
        resp = client.get("/plan", params={**PLAN_PARAMS, "from_lat": 95.0})
        assert resp.status_code == 400
        assert self.error_code(resp) == "ValidationError"

    def test_request_validation_is_fastapis(self, client):
        assert client.get("/plan").status_code == 422
        assert client.get("/plan", params={**PLAN_PARAMS, "limit": 0}).status_code == 422
        assert client.get("/plan", params={**PLAN_PARAMS, "max_fare": 0}).status_code == 422


class TestStaticUi:
    def test_mounted_when_directory_exists(self, city, tmp_path):
        net, graph = city
        (tmp_path / "index.html").write_text("<h1>optimile ui</h1>")
        app = create_app(net, graph, ui_dir=tmp_path)
        with TestClient(app) as local:
            resp = local.get("/ui/")
            assert resp.status_code == 200
            assert "optimile ui" in resp.text

    def test_absent_without_directory(self, client):
        assert client.get("/ui/").status_code == 404
