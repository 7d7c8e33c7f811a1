"""Door-to-door query solving over the direct-connection graph.

A query adds dummy origin/destination nodes, connects them to every stop
within first/last-mile range, and minimizes the weighted travel-time cost
subject to a strict fare cap. With the transfer penalty at zero the cost is
a plain convex combination of LM and PT travel times.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .bipartite import BipartiteGraph
from .errors import (
    FareInfeasible,
    NoCandidateStops,
    NoConnection,
    WeightConstraintViolated,
)
from .fares import FareBreakdown, FareConfig, trip_fare
from .geo import GeoPoint, haversine_km, leg_time_minutes

_WEIGHT_TOL = 1e-9


def check_weight_pair(first: float, second: float, names: str = "w_lm, w_pt") -> None:
    """Both weights positive and summing to 1."""
    if not (first > 0 and second > 0) or abs(first + second - 1.0) > _WEIGHT_TOL:
        raise WeightConstraintViolated(
            f"{names} must be positive and sum to 1, got ({first}, {second})"
        )


@dataclass(frozen=True)
class Query:
    origin: GeoPoint
    destination: GeoPoint
    max_fare_rs: int = 60
    w_lm: float = 0.2
    w_pt: float = 0.8
    lm_range_km: float = 5.0
    transfer_penalty_min: float = 0.0
    optimile_only: bool = False
    max_transfers: int = 2

    def __post_init__(self) -> None:
        check_weight_pair(self.w_lm, self.w_pt)
        if self.max_fare_rs <= 0:
            raise ValueError(f"max_fare_rs must be positive, got {self.max_fare_rs}")
        if self.lm_range_km <= 0:
            raise ValueError(f"lm_range_km must be positive, got {self.lm_range_km}")
        if self.transfer_penalty_min < 0:
            raise ValueError(
                f"transfer_penalty_min must be non-negative, got {self.transfer_penalty_min}"
            )
        if self.max_transfers < 0:
            raise ValueError(f"max_transfers must be non-negative, got {self.max_transfers}")


@dataclass(frozen=True)
class Plan:
    entry_stop: str
    exit_stop: str
    tt_lm_first: float
    tt_lm_last: float
    tt_pt: float
    transfers: int
    lm_first_km: float
    lm_last_km: float
    pt_ride_km: float
    pt_mode: str
    fare: FareBreakdown
    cost: float
    total_distance_km: float


@dataclass(frozen=True)
class PlanSet:
    query: Query
    plans: tuple[Plan, ...]
    # Set only when plans is empty: "NoCandidateStops", "NoConnection",
    # or "FareInfeasible".
    failure_reason: str | None = None


def plan_cost(
    tt_lm_min: float,
    tt_pt_min: float,
    transfers: int,
    w_lm: float,
    w_pt: float,
    transfer_penalty_min: float = 0.0,
) -> float:
    """Weighted cost of a journey; the penalty counts as extra in-PT minutes."""
    check_weight_pair(w_lm, w_pt)
    return w_lm * tt_lm_min + w_pt * (tt_pt_min + transfer_penalty_min * transfers)


def candidate_stops(
    graph: BipartiteGraph,
    point: GeoPoint,
    lm_range_km: float,
    side: str,
) -> list[tuple[str, float]]:
    """Stops within first/last-mile range of a point, nearest first.

    ``side`` labels which end of the journey the candidates serve; both sides
    currently use the same range rule.
    """
    if side not in ("entry", "exit"):
        raise ValueError(f"side must be 'entry' or 'exit', got {side!r}")
    if lm_range_km <= 0:
        raise ValueError(f"lm_range_km must be positive, got {lm_range_km}")
    found = []
    for stop in graph.network.stops:
        d = haversine_km(point, stop.location)
        if d <= lm_range_km:
            found.append((stop.id, d))
    found.sort(key=lambda pair: (pair[1], pair[0]))
    return found


def _lm_leg_minutes(
    distance_km: float, walk_free_km: float, speeds_kmh: Mapping[str, float] | None
) -> float:
    # Short legs are walked (and free); longer ones ride the LM service.
    mode = "walk" if distance_km <= walk_free_km else "lm"
    return leg_time_minutes(distance_km, mode, speeds_kmh)


def enumerate_feasible(
    query: Query,
    graph: BipartiteGraph,
    fares: FareConfig,
    speeds_kmh: Mapping[str, float] | None = None,
) -> PlanSet:
    """Every plan through every candidate stop pair that clears the fare cap."""
    entries = candidate_stops(graph, query.origin, query.lm_range_km, "entry")
    exits = candidate_stops(graph, query.destination, query.lm_range_km, "exit")
    if not entries or not exits:
        return PlanSet(query=query, plans=(), failure_reason="NoCandidateStops")

    exit_times = {b: _lm_leg_minutes(db, fares.walk_free_km, speeds_kmh) for b, db in exits}

    plans = []
    connected = False
    for a, da in entries:
        tt_first = _lm_leg_minutes(da, fares.walk_free_km, speeds_kmh)
        for b, db in exits:
            if b == a:
                continue
            edge = graph.edge(a, b)
            if edge is None:
                continue
            for option in edge.options:
                if option.transfers > query.max_transfers:
                    continue
                if query.optimile_only and option.transfers != 0:
                    continue
                connected = True
                fare = trip_fare(
                    da, db, option.pt_mode, option.ride_distance_km, option.transfers, fares
                )
                if fare.total_rs >= query.max_fare_rs:
                    continue
                tt_last = exit_times[b]
                cost = plan_cost(
                    tt_first + tt_last,
                    option.travel_time_min,
                    option.transfers,
                    query.w_lm,
                    query.w_pt,
                    query.transfer_penalty_min,
                )
                plans.append(
                    Plan(
                        entry_stop=a,
                        exit_stop=b,
                        tt_lm_first=tt_first,
                        tt_lm_last=tt_last,
                        tt_pt=option.travel_time_min,
                        transfers=option.transfers,
                        lm_first_km=da,
                        lm_last_km=db,
                        pt_ride_km=option.ride_distance_km,
                        pt_mode=option.pt_mode,
                        fare=fare,
                        cost=cost,
                        total_distance_km=da + option.ride_distance_km + db,
                    )
                )
    if plans:
        return PlanSet(query=query, plans=tuple(plans), failure_reason=None)
    return PlanSet(
        query=query,
        plans=(),
        failure_reason="FareInfeasible" if connected else "NoConnection",
    )


def plan_sort_key(plan: Plan):
    """Total order used by solve and rank_plans; cost first, then tie-breaks."""
    return (
        plan.cost,
        plan.fare.total_rs,
        plan.total_distance_km,
        plan.entry_stop,
        plan.exit_stop,
        plan.transfers,
    )


FAILURE_ERRORS = {
    "NoCandidateStops": NoCandidateStops,
    "NoConnection": NoConnection,
    "FareInfeasible": FareInfeasible,
}


def solve(
    query: Query,
    graph: BipartiteGraph,
    fares: FareConfig,
    speeds_kmh: Mapping[str, float] | None = None,
) -> Plan:
    """The cheapest feasible plan, with deterministic tie-breaking."""
    plan_set = enumerate_feasible(query, graph, fares, speeds_kmh)
    if plan_set.failure_reason is not None:
        raise FAILURE_ERRORS[plan_set.failure_reason](
            f"{plan_set.failure_reason} for query "
            f"({query.origin.lat:.5f},{query.origin.lon:.5f}) -> "
            f"({query.destination.lat:.5f},{query.destination.lon:.5f})"
        )
    return min(plan_set.plans, key=plan_sort_key)


def rank_plans(plan_set: PlanSet, limit: int | None = None) -> list[Plan]:
    """Plans ordered best-first; limit truncates."""
    ordered = sorted(plan_set.plans, key=plan_sort_key)
    if limit is not None:
        return ordered[:limit]
    return ordered
