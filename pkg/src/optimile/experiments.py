"""Seeded experiment sweeps: fare/distance trade-off and coverage tables.

Experiment 1 samples origin-destination pairs, sweeps a parameter grid, and
solves every pair both ways (opti-mile and unrestricted), recording one row
per solve including failures. Experiment 2 tabulates network and opti-mile
coverage over bounding boxes. Both are deterministic for a fixed seed, also
when parallelized: inputs are drawn up front and results are assembled in
task order.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import IO, Iterator

import numpy as np

from .bipartite import BipartiteGraph
from .coverage import (
    DEFAULT_CELL_SIZE_M,
    BoundingBox,
    CoverageReport,
    optimile_coverage,
    ptn_coverage,
)
from .errors import NoComparablePairs, OptimileError
from .fares import FareConfig
from .geo import GeoPoint
from .metrics import EfficiencyWeights, score_plans
from .network import TransitNetwork
from .planner import Query, enumerate_feasible, rank_plans

# Default sweep: fare caps 50..500 in steps of 10, five LM weights, three
# LM ranges, no transfer penalty.
DEFAULT_MAX_FARES = tuple(50 + 10 * n for n in range(46))
DEFAULT_W_LM_VALUES = (0.1, 0.2, 0.3, 0.4, 0.5)
DEFAULT_LM_RANGES_KM = (2.0, 5.0, 10.0)


@dataclass(frozen=True)
class ParameterGrid:
    max_fares: tuple[int, ...] = DEFAULT_MAX_FARES
    w_lm_values: tuple[float, ...] = DEFAULT_W_LM_VALUES
    lm_ranges_km: tuple[float, ...] = DEFAULT_LM_RANGES_KM
    transfer_penalties_min: tuple[float, ...] = (0.0,)

    def __post_init__(self) -> None:
        if not (self.max_fares and self.w_lm_values and self.lm_ranges_km
                and self.transfer_penalties_min):
            raise ValueError("every grid dimension needs at least one value")
        if any(f <= 0 for f in self.max_fares):
            raise ValueError("max fares must be positive")
        if any(not 0 < w <= 0.5 for w in self.w_lm_values):
            raise ValueError("w_lm values must lie in (0, 0.5]")
        if any(r <= 0 for r in self.lm_ranges_km):
            raise ValueError("LM ranges must be positive")
        if any(t < 0 for t in self.transfer_penalties_min):
            raise ValueError("transfer penalties must be non-negative")

    def combinations(self) -> Iterator[tuple[int, float, float, float]]:
        return product(
            self.max_fares, self.w_lm_values, self.lm_ranges_km, self.transfer_penalties_min
        )

    def size(self) -> int:
        return (
            len(self.max_fares)
            * len(self.w_lm_values)
            * len(self.lm_ranges_km)
            * len(self.transfer_penalties_min)
        )


@dataclass(frozen=True)
class TripRecord:
    """One solve attempt; failed solves keep their parameters and a status."""

    pair_id: int
    origin: GeoPoint
    destination: GeoPoint
    max_fare_rs: int
    w_lm: float
    w_pt: float
    lm_range_km: float
    transfer_penalty_min: float
    optimile: bool
    status: str  # "ok" or an error code
    entry_stop: str | None = None
    exit_stop: str | None = None
    transfers: int | None = None
    travel_time_min: float | None = None
    total_distance_km: float | None = None
    fare_per_km_rs: float | None = None
    pt_fare_rs: int | None = None
    lm_fare_rs: int | None = None
    total_fare_rs: int | None = None
    cost: float | None = None
    convenience: float | None = None
    cost_effectiveness: float | None = None
    c_norm: float | None = None
    e_norm: float | None = None
    efficiency: float | None = None


TRIP_CSV_COLUMNS = [
    "pair_id",
    "origin_lat",
    "origin_lon",
    "destination_lat",
    "destination_lon",
    "max_fare_rs",
    "w_lm",
    "w_pt",
    "lm_range_km",
    "transfer_penalty_min",
    "optimile",
    "status",
    "entry_stop",
    "exit_stop",
    "transfers",
    "travel_time_min",
    "total_distance_km",
    "fare_per_km_rs",
    "pt_fare_rs",
    "lm_fare_rs",
    "total_fare_rs",
    "cost",
    "convenience",
    "cost_effectiveness",
    "c_norm",
    "e_norm",
    "efficiency",
]


def _solve_one(
    pair_id: int,
    origin: GeoPoint,
    destination: GeoPoint,
    max_fare_rs: int,
    w_lm: float,
    lm_range_km: float,
    transfer_penalty_min: float,
    optimile: bool,
    graph: BipartiteGraph,
    fares: FareConfig,
    weights: EfficiencyWeights,
    speeds_kmh,
) -> TripRecord:
    w_pt = 1.0 - w_lm
    base = dict(
        pair_id=pair_id,
        origin=origin,
        destination=destination,
        max_fare_rs=max_fare_rs,
        w_lm=w_lm,
        w_pt=w_pt,
        lm_range_km=lm_range_km,
        transfer_penalty_min=transfer_penalty_min,
        optimile=optimile,
    )
    try:
        query = Query(
            origin=origin,
            destination=destination,
            max_fare_rs=max_fare_rs,
            w_lm=w_lm,
            w_pt=w_pt,
            lm_range_km=lm_range_km,
            transfer_penalty_min=transfer_penalty_min,
            optimile_only=optimile,
            max_transfers=graph.max_transfers,
        )
        plan_set = enumerate_feasible(query, graph, fares, speeds_kmh)
        if plan_set.failure_reason is not None:
            return TripRecord(status=plan_set.failure_reason, **base)
        ranked = rank_plans(plan_set)
        scores = score_plans(ranked, weights)
        best = ranked[0]
        score = scores[0]
    except OptimileError as err:
        return TripRecord(status=err.code, **base)
    total_fare = best.fare.total_rs
    distance = best.total_distance_km
    return TripRecord(
        status="ok",
        entry_stop=best.entry_stop,
        exit_stop=best.exit_stop,
        transfers=best.transfers,
        travel_time_min=best.tt_lm_first + best.tt_pt + best.tt_lm_last,
        total_distance_km=distance,
        fare_per_km_rs=total_fare / distance if distance > 0 else None,
        pt_fare_rs=best.fare.pt_rs,
        lm_fare_rs=best.fare.lm_first_rs + best.fare.lm_last_rs,
        total_fare_rs=total_fare,
        cost=best.cost,
        convenience=score.convenience,
        cost_effectiveness=score.cost_effectiveness,
        c_norm=score.c_norm,
        e_norm=score.e_norm,
        efficiency=score.efficiency,
        **base,
    )


def run_experiment1(
    network: TransitNetwork,
    graph: BipartiteGraph,
    fares: FareConfig,
    n_pairs: int,
    grid: ParameterGrid,
    seed: int,
    weights: EfficiencyWeights = EfficiencyWeights(),
    workers: int = 1,
    speeds_kmh=None,
) -> list[TripRecord]:
    """Sweep the grid over seeded pairs; two records per pair and combination.

    Pairs are drawn once and reused across the whole grid so opti-mile and
    unrestricted records of one pair are directly comparable.
    """
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be at least 1, got {n_pairs}")
    min_lat, min_lon, max_lat, max_lon = network.bounds()
    rng = np.random.default_rng(seed)
    origin_lats = rng.uniform(min_lat, max_lat, n_pairs)
    origin_lons = rng.uniform(min_lon, max_lon, n_pairs)
    dest_lats = rng.uniform(min_lat, max_lat, n_pairs)
    dest_lons = rng.uniform(min_lon, max_lon, n_pairs)
    pairs = [
        (
            GeoPoint(float(origin_lats[i]), float(origin_lons[i])),
            GeoPoint(float(dest_lats[i]), float(dest_lons[i])),
        )
        for i in range(n_pairs)
    ]
    combos = list(grid.combinations())

    def records_for(pair_id: int) -> list[TripRecord]:
        origin, destination = pairs[pair_id]
        out = []
        for max_fare_rs, w_lm, lm_range_km, penalty in combos:
            for optimile in (False, True):
                out.append(
                    _solve_one(
                        pair_id,
                        origin,
                        destination,
                        max_fare_rs,
                        w_lm,
                        lm_range_km,
                        penalty,
                        optimile,
                        graph,
                        fares,
                        weights,
                        speeds_kmh,
                    )
                )
        return out

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(records_for, range(n_pairs)))
    else:
        blocks = [records_for(i) for i in range(n_pairs)]
    return [record for block in blocks for record in block]


# --- CSV export ---------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _trip_row(r: TripRecord) -> list[str]:
    return [
        _fmt(r.pair_id),
        _fmt(r.origin.lat),
        _fmt(r.origin.lon),
        _fmt(r.destination.lat),
        _fmt(r.destination.lon),
        _fmt(r.max_fare_rs),
        _fmt(r.w_lm),
        _fmt(r.w_pt),
        _fmt(r.lm_range_km),
        _fmt(r.transfer_penalty_min),
        _fmt(r.optimile),
        _fmt(r.status),
        _fmt(r.entry_stop),
        _fmt(r.exit_stop),
        _fmt(r.transfers),
        _fmt(r.travel_time_min),
        _fmt(r.total_distance_km),
        _fmt(r.fare_per_km_rs),
        _fmt(r.pt_fare_rs),
        _fmt(r.lm_fare_rs),
        _fmt(r.total_fare_rs),
        _fmt(r.cost),
        _fmt(r.convenience),
        _fmt(r.cost_effectiveness),
        _fmt(r.c_norm),
        _fmt(r.e_norm),
        _fmt(r.efficiency),
    ]


def records_to_csv(records: list[TripRecord], sink: str | Path | IO[str]) -> None:
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            records_to_csv(records, fh)
        return
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(TRIP_CSV_COLUMNS)
    for record in records:
        writer.writerow(_trip_row(record))


COVERAGE_CSV_COLUMNS = ["label", "kind", "radius_km", "coverage_pct", "method", "n_samples", "seed"]


def coverage_to_csv(reports: list[CoverageReport], sink: str | Path | IO[str]) -> None:
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            coverage_to_csv(reports, fh)
        return
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(COVERAGE_CSV_COLUMNS)
    for r in reports:
        writer.writerow(
            [
                r.label,
                r.kind,
                repr(r.radius_km),
                f"{r.covered_fraction * 100:.2f}",
                r.method,
                _fmt(r.n_samples),
                _fmt(r.seed),
            ]
        )


# --- summaries ----------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentSummary:
    n_records: int
    n_ok: int
    n_comparable_groups: int
    optimile_fare_median: float
    unrestricted_fare_median: float
    optimile_fare_std: float
    unrestricted_fare_std: float
    optimile_fare_mad: float
    unrestricted_fare_mad: float
    optimile_distance_median: float
    unrestricted_distance_median: float
    optimile_distance_std: float
    unrestricted_distance_std: float
    optimile_distance_mad: float
    unrestricted_distance_mad: float
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)


def _mad(values: list[float]) -> float:
    center = statistics.median(values)
    return statistics.median([abs(v - center) for v in values])


def summarize_fare_distance(records: list[TripRecord]) -> ExperimentSummary:
    """Paired fare/distance comparison plus efficiency tallies.

    Only (pair, parameter) groups where both the opti-mile and the
    unrestricted solve succeeded enter the medians, so the two columns
    describe the same set of journeys.
    """
    groups: dict[tuple, dict[bool, TripRecord]] = {}
    for r in records:
        if r.status != "ok":
            continue
        key = (r.pair_id, r.max_fare_rs, r.w_lm, r.lm_range_km, r.transfer_penalty_min)
        groups.setdefault(key, {})[r.optimile] = r

    opt_fares: list[float] = []
    unres_fares: list[float] = []
    opt_dists: list[float] = []
    unres_dists: list[float] = []
    n_comparable = 0
    for pair in groups.values():
        if True not in pair or False not in pair:
            continue
        n_comparable += 1
        opt_fares.append(pair[True].total_fare_rs)
        unres_fares.append(pair[False].total_fare_rs)
        opt_dists.append(pair[True].total_distance_km)
        unres_dists.append(pair[False].total_distance_km)
    if n_comparable == 0:
        raise NoComparablePairs("no (pair, parameters) group succeeded in both modes")

    tallies = _efficiency_tallies(records)
    n_ok = sum(1 for r in records if r.status == "ok")
    return ExperimentSummary(
        n_records=len(records),
        n_ok=n_ok,
        n_comparable_groups=n_comparable,
        optimile_fare_median=statistics.median(opt_fares),
        unrestricted_fare_median=statistics.median(unres_fares),
        optimile_fare_std=statistics.pstdev(opt_fares),
        unrestricted_fare_std=statistics.pstdev(unres_fares),
        optimile_fare_mad=_mad(opt_fares),
        unrestricted_fare_mad=_mad(unres_fares),
        optimile_distance_median=statistics.median(opt_dists),
        unrestricted_distance_median=statistics.median(unres_dists),
        optimile_distance_std=statistics.pstdev(opt_dists),
        unrestricted_distance_std=statistics.pstdev(unres_dists),
        optimile_distance_mad=_mad(opt_dists),
        unrestricted_distance_mad=_mad(unres_dists),
        tallies=tallies,
    )


def _efficiency_tallies(records: list[TripRecord]) -> dict[str, dict[str, int]]:
    """Which settings produce each pair's best and worst efficiency."""
    by_pair: dict[int, list[TripRecord]] = {}
    for r in records:
        if r.status == "ok" and r.efficiency is not None:
            by_pair.setdefault(r.pair_id, []).append(r)

    def bump(table: dict[str, int], key: str) -> None:
        table[key] = table.get(key, 0) + 1

    tallies: dict[str, dict[str, int]] = {
        "highest_efficiency_by_optimile": {},
        "lowest_efficiency_by_optimile": {},
        "highest_efficiency_by_lm_range_km": {},
        "lowest_efficiency_by_lm_range_km": {},
        "highest_efficiency_by_transfer_penalty_min": {},
        "lowest_efficiency_by_transfer_penalty_min": {},
    }
    for recs in by_pair.values():
        top = max(recs, key=lambda r: r.efficiency)
        bottom = min(recs, key=lambda r: r.efficiency)
        bump(tallies["highest_efficiency_by_optimile"], _fmt(top.optimile))
        bump(tallies["lowest_efficiency_by_optimile"], _fmt(bottom.optimile))
        bump(tallies["highest_efficiency_by_lm_range_km"], _fmt(top.lm_range_km))
        bump(tallies["lowest_efficiency_by_lm_range_km"], _fmt(bottom.lm_range_km))
        bump(tallies["highest_efficiency_by_transfer_penalty_min"], _fmt(top.transfer_penalty_min))
        bump(tallies["lowest_efficiency_by_transfer_penalty_min"], _fmt(bottom.transfer_penalty_min))
    return tallies


def summary_to_doc(summary: ExperimentSummary) -> dict:
    """JSON-ready view, tallies included."""
    return {
        "n_records": summary.n_records,
        "n_ok": summary.n_ok,
        "n_comparable_groups": summary.n_comparable_groups,
        "fare_rs": {
            "optimile": {
                "median": summary.optimile_fare_median,
                "std": summary.optimile_fare_std,
                "mad": summary.optimile_fare_mad,
            },
            "unrestricted": {
                "median": summary.unrestricted_fare_median,
                "std": summary.unrestricted_fare_std,
                "mad": summary.unrestricted_fare_mad,
            },
        },
        "distance_km": {
            "optimile": {
                "median": summary.optimile_distance_median,
                "std": summary.optimile_distance_std,
                "mad": summary.optimile_distance_mad,
            },
            "unrestricted": {
                "median": summary.unrestricted_distance_median,
                "std": summary.unrestricted_distance_std,
                "mad": summary.unrestricted_distance_mad,
            },
        },
        "tallies": summary.tallies,
    }


# --- coverage experiment --------------------------------------------------------


def run_experiment2(
    network: TransitNetwork,
    graph: BipartiteGraph,
    bboxes: list[BoundingBox],
    radii_km: list[float],
    n_samples: int,
    seed: int,
    cell_size_m: float = DEFAULT_CELL_SIZE_M,
    workers: int = 1,
) -> list[CoverageReport]:
    """PTN and opti-mile coverage per (bbox, radius), in input order.

    The same seed is used for every cell so one bbox's sample locations are
    identical across radii; growing the radius then provably grows coverage.
    """
    tasks = [(bbox, radius) for bbox in bboxes for radius in radii_km]

    def reports_for(task: tuple[BoundingBox, float]) -> list[CoverageReport]:
        bbox, radius = task
        return [
            ptn_coverage(network, bbox, radius, cell_size_m),
            optimile_coverage(network, graph, bbox, radius, n_samples, seed, cell_size_m),
        ]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(reports_for, tasks))
    else:
        blocks = [reports_for(t) for t in tasks]
    return [report for block in blocks for report in block]
