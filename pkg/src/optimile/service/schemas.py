"""Response models of the planning API.

Field names here are the wire contract; the CLI's JSON output reuses the
same models so both surfaces stay in lockstep.
"""

from __future__ import annotations

from pydantic import BaseModel

from ..fares import FareConfig
from ..geo import GeoPoint
from ..metrics import PathScore
from ..network import TransitNetwork
from ..planner import Plan


class StopOut(BaseModel):
    id: str
    name: str
    lat: float
    lon: float
    mode: str


class HealthOut(BaseModel):
    status: str
    service: str
    version: str
    stops: int
    routes: int
    max_transfers: int


class FareOut(BaseModel):
    lm_first_rs: int
    lm_last_rs: int
    pt_rs: int
    total_rs: int


class ScoreOut(BaseModel):
    convenience: float
    cost_effectiveness: float
    c_norm: float
    e_norm: float
    efficiency: float


class LegOut(BaseModel):
    kind: str  # "lm" or "pt"
    mode: str  # walk, lm, bus, or metro
    from_lat: float
    from_lon: float
    to_lat: float
    to_lon: float
    distance_km: float
    time_min: float


class PlanOut(BaseModel):
    entry_stop: str
    exit_stop: str
    entry_stop_name: str
    exit_stop_name: str
    tt_lm_first_min: float
    tt_lm_last_min: float
    tt_pt_min: float
    travel_time_min: float
    transfers: int
    lm_first_km: float
    lm_last_km: float
    pt_ride_km: float
    pt_mode: str
    total_distance_km: float
    cost: float
    fare: FareOut
    score: ScoreOut
    legs: list[LegOut]


class QueryEcho(BaseModel):
    from_lat: float
    from_lon: float
    to_lat: float
    to_lon: float
    max_fare: int
    w_lm: float
    w_pt: float
    lm_range_km: float
    transfer_penalty_min: float
    optimile: bool
    limit: int


class PlanResponse(BaseModel):
    query: QueryEcho
    best: PlanOut
    alternatives: list[PlanOut]
    n_feasible: int


class ErrorBody(BaseModel):
    code: str
    message: str


class ErrorOut(BaseModel):
    error: ErrorBody


def build_plan_out(
    plan: Plan,
    score: PathScore,
    network: TransitNetwork,
    fares: FareConfig,
    origin: GeoPoint,
    destination: GeoPoint,
) -> PlanOut:
    """Assemble the wire form of one plan, legs included."""
    entry = network.stop(plan.entry_stop)
    exit_ = network.stop(plan.exit_stop)
    first_mode = "walk" if plan.lm_first_km <= fares.walk_free_km else "lm"
    last_mode = "walk" if plan.lm_last_km <= fares.walk_free_km else "lm"
    legs = [
        LegOut(
            kind="lm",
            mode=first_mode,
            from_lat=origin.lat,
            from_lon=origin.lon,
            to_lat=entry.location.lat,
            to_lon=entry.location.lon,
            distance_km=plan.lm_first_km,
            time_min=plan.tt_lm_first,
        ),
        LegOut(
            kind="pt",
            mode=plan.pt_mode,
            from_lat=entry.location.lat,
            from_lon=entry.location.lon,
            to_lat=exit_.location.lat,
            to_lon=exit_.location.lon,
            distance_km=plan.pt_ride_km,
            time_min=plan.tt_pt,
        ),
        LegOut(
            kind="lm",
            mode=last_mode,
            from_lat=exit_.location.lat,
            from_lon=exit_.location.lon,
            to_lat=destination.lat,
            to_lon=destination.lon,
            distance_km=plan.lm_last_km,
            time_min=plan.tt_lm_last,
        ),
    ]
    return PlanOut(
        entry_stop=plan.entry_stop,
        exit_stop=plan.exit_stop,
        entry_stop_name=entry.name,
        exit_stop_name=exit_.name,
        tt_lm_first_min=plan.tt_lm_first,
        tt_lm_last_min=plan.tt_lm_last,
        tt_pt_min=plan.tt_pt,
        travel_time_min=plan.tt_lm_first + plan.tt_pt + plan.tt_lm_last,
        transfers=plan.transfers,
        lm_first_km=plan.lm_first_km,
        lm_last_km=plan.lm_last_km,
        pt_ride_km=plan.pt_ride_km,
        pt_mode=plan.pt_mode,
        total_distance_km=plan.total_distance_km,
        cost=plan.cost,
        fare=FareOut(
            lm_first_rs=plan.fare.lm_first_rs,
            lm_last_rs=plan.fare.lm_last_rs,
            pt_rs=plan.fare.pt_rs,
            total_rs=plan.fare.total_rs,
        ),
        score=ScoreOut(
            convenience=score.convenience,
            cost_effectiveness=score.cost_effectiveness,
            c_norm=score.c_norm,
            e_norm=score.e_norm,
            efficiency=score.efficiency,
        ),
        legs=legs,
    )
