"""FastAPI app serving plans from one immutable network and graph.

All state is read-only after startup, so any number of requests may plan
concurrently. Domain errors surface as JSON bodies with a stable error code.
"""

from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path

from fastapi import FastAPI, Query as QueryParam, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..bipartite import BipartiteGraph
from ..errors import (
    FareInfeasible,
    NoCandidateStops,
    NoConnection,
    OptimileError,
    UnknownStop,
    WeightConstraintViolated,
)
from ..fares import FareConfig
from ..geo import GeoPoint
from ..metrics import EfficiencyWeights, score_plans
from ..network import TransitNetwork
from ..planner import FAILURE_ERRORS, Query, enumerate_feasible, rank_plans
from .schemas import (
    HealthOut,
    PlanResponse,
    QueryEcho,
    StopOut,
    build_plan_out,
)

# Planner failures mean "no such plan exists", weight violations are bad input.
_STATUS_BY_ERROR = {
    WeightConstraintViolated: 400,
    NoCandidateStops: 404,
    NoConnection: 404,
    FareInfeasible: 404,
    UnknownStop: 404,
}


def _error_status(err: OptimileError) -> int:
    for cls, status in _STATUS_BY_ERROR.items():
        if isinstance(err, cls):
            return status
    return 400


def create_app(
    network: TransitNetwork,
    graph: BipartiteGraph,
    fares: FareConfig | None = None,
    weights: EfficiencyWeights | None = None,
    speeds_kmh: Mapping[str, float] | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    fares = fares if fares is not None else FareConfig()
    weights = weights if weights is not None else EfficiencyWeights()
    app = FastAPI(title="optimile", version=__version__)

    @app.exception_handler(OptimileError)
    async def domain_error(request: Request, err: OptimileError) -> JSONResponse:
        return JSONResponse(
            status_code=_error_status(err),
            content={"error": {"code": err.code, "message": str(err)}},
        )

    @app.exception_handler(ValueError)
    async def value_error(request: Request, err: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "ValidationError", "message": str(err)}},
        )

    @app.get("/healthz", response_model=HealthOut)
    async def healthz() -> HealthOut:
        return HealthOut(
            status="ok",
            service="optimile",
            version=__version__,
            stops=len(network.stops),
            routes=len(network.routes),
            max_transfers=graph.max_transfers,
        )

    @app.get("/network/stops", response_model=list[StopOut])
    async def network_stops() -> list[StopOut]:
        return [
            StopOut(id=s.id, name=s.name, lat=s.location.lat, lon=s.location.lon, mode=s.mode)
            for s in network.stops
        ]

    @app.get("/plan", response_model=PlanResponse)
    async def plan(
        from_lat: float = QueryParam(...),
        from_lon: float = QueryParam(...),
        to_lat: float = QueryParam(...),
        to_lon: float = QueryParam(...),
        max_fare: int = QueryParam(60, gt=0),
        w_lm: float = QueryParam(0.2),
        lm_range_km: float = QueryParam(5.0, gt=0),
        transfer_penalty_min: float = QueryParam(0.0, ge=0),
        optimile: bool = QueryParam(False),
        limit: int = QueryParam(5, ge=1),
    ) -> PlanResponse:
        # The public surface keeps LM below parity with PT; the engine itself
        # only requires the weights to sum to 1.
        if not 0 < w_lm <= 0.5:
            raise WeightConstraintViolated(f"w_lm must lie in (0, 0.5], got {w_lm}")
        origin = GeoPoint(from_lat, from_lon)
        destination = GeoPoint(to_lat, to_lon)
        query = Query(
            origin=origin,
            destination=destination,
            max_fare_rs=max_fare,
            w_lm=w_lm,
            w_pt=1.0 - w_lm,
            lm_range_km=lm_range_km,
            transfer_penalty_min=transfer_penalty_min,
            optimile_only=optimile,
            max_transfers=graph.max_transfers,
        )
        plan_set = enumerate_feasible(query, graph, fares, speeds_kmh)
        if plan_set.failure_reason is not None:
            raise FAILURE_ERRORS[plan_set.failure_reason](plan_set.failure_reason)
        ranked = rank_plans(plan_set)
        scores = score_plans(ranked, weights)
        outs = [
            build_plan_out(p, s, network, fares, origin, destination)
            for p, s in zip(ranked[:limit], scores[:limit])
        ]
        return PlanResponse(
            query=QueryEcho(
                from_lat=from_lat,
                from_lon=from_lon,
                to_lat=to_lat,
                to_lon=to_lon,
                max_fare=max_fare,
                w_lm=w_lm,
                w_pt=1.0 - w_lm,
                lm_range_km=lm_range_km,
                transfer_penalty_min=transfer_penalty_min,
                optimile=optimile,
                limit=limit,
            ),
            best=outs[0],
            alternatives=outs[1:],
            n_feasible=len(ranked),
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
