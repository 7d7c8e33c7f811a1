"""Sweep harness: parameter grids, trip records, summaries, CSV exports."""

import csv
import io
import statistics

import pytest

from optimile.bipartite import build_bipartite_graph
from optimile.coverage import network_bbox
from optimile.errors import NoComparablePairs
from optimile.experiments import (
    DEFAULT_LM_RANGES_KM,
    DEFAULT_MAX_FARES,
    DEFAULT_W_LM_VALUES,
    TRIP_CSV_COLUMNS,
    ParameterGrid,
    TripRecord,
    coverage_to_csv,
    records_to_csv,
    run_experiment1,
    run_experiment2,
    summarize_fare_distance,
    summary_to_doc,
)
from optimile.fares import FareConfig
from optimile.geo import GeoPoint
from optimile.network import generate_grid_city
from optimile.planner import FAILURE_ERRORS, Query, solve

FARES = FareConfig()


def small_city():
    net = generate_grid_city(3, 3, 1.0)
    return net, build_bipartite_graph(net, 2)


def tiny_grid(**overrides):
    base = dict(
        max_fares=(60, 100),
        w_lm_values=(0.2,),
        lm_ranges_km=(2.0,),
        transfer_penalties_min=(0.0,),
    )
    base.update(overrides)
    return ParameterGrid(**base)


class TestParameterGrid:
    def test_default_shape(self):
        grid = ParameterGrid()
        assert len(grid.max_fares) == 46
        assert len(grid.w_lm_values) == 5
        assert len(grid.lm_ranges_km) == 3
        assert grid.size() == 46 * 5 * 3

    def test_default_values(self):
        assert DEFAULT_MAX_FARES[0] == 50
        assert DEFAULT_MAX_FARES[-1] == 500
        assert all(b - a == 10 for a, b in zip(DEFAULT_MAX_FARES, DEFAULT_MAX_FARES[1:]))
        assert DEFAULT_W_LM_VALUES == (0.1, 0.2, 0.3, 0.4, 0.5)
        assert DEFAULT_LM_RANGES_KM == (2.0, 5.0, 10.0)

    def test_combination_order(self):
        grid = tiny_grid(max_fares=(60, 100), w_lm_values=(0.1, 0.2))
        assert list(grid.combinations()) == [
            (60, 0.1, 2.0, 0.0),
            (60, 0.2, 2.0, 0.0),
            (100, 0.1, 2.0, 0.0),
            (100, 0.2, 2.0, 0.0),
        ]

    @pytest.mark.parametrize(
        "overrides",
        [
            {"max_fares": ()},
            {"max_fares": (0,)},
            {"w_lm_values": (0.6,)},
            {"w_lm_values": (0.0,)},
            {"lm_ranges_km": (-1.0,)},
            {"transfer_penalties_min": (-2.0,)},
        ],
    )
    def test_validation(self, overrides):
        with pytest.raises(ValueError):
            tiny_grid(**overrides)


class TestRunExperiment1:
    def test_sweep_shape_and_order(self):
        net, graph = small_city()
        records = run_experiment1(net, graph, FARES, n_pairs=3, grid=tiny_grid(), seed=0)
        # 3 pairs x 2 combinations x 2 modes.
        assert len(records) == 12
        assert [r.pair_id for r in records] == [0] * 4 + [1] * 4 + [2] * 4
        assert [r.optimile for r in records[:4]] == [False, True, False, True]
        assert [r.max_fare_rs for r in records[:4]] == [60, 60, 100, 100]

    def test_single_pair_single_combo(self):
        net, graph = small_city()
        records = run_experiment1(
            net, graph, FARES, n_pairs=1, grid=tiny_grid(max_fares=(100,)), seed=1
        )
        assert len(records) == 2
        assert {r.optimile for r in records} == {False, True}

    def test_statuses_are_known_codes(self):
        net, graph = small_city()
        records = run_experiment1(net, graph, FARES, n_pairs=10, grid=tiny_grid(), seed=3)
        allowed = {"ok"} | set(FAILURE_ERRORS)
        assert {r.status for r in records} <= allowed

    def test_pairs_fixed_across_grid(self):
        net, graph = small_city()
        records = run_experiment1(net, graph, FARES, n_pairs=2, grid=tiny_grid(), seed=5)
        for pair_id in (0, 1):
            block = [r for r in records if r.pair_id == pair_id]
            assert len({(r.origin.lat, r.origin.lon) for r in block}) == 1
            assert len({(r.destination.lat, r.destination.lon) for r in block}) == 1

    def test_seed_changes_pairs(self):
        net, graph = small_city()
        a = run_experiment1(net, graph, FARES, 2, tiny_grid(), seed=1)
        b = run_experiment1(net, graph, FARES, 2, tiny_grid(), seed=2)
        assert (a[0].origin.lat, a[0].origin.lon) != (b[0].origin.lat, b[0].origin.lon)

    def test_ok_records_are_consistent(self):
        net, graph = small_city()
        records = run_experiment1(net, graph, FARES, 8, tiny_grid(), seed=7)
        ok = [r for r in records if r.status == "ok"]
        assert ok
        for r in ok:
            assert r.w_pt == pytest.approx(1.0 - r.w_lm)
            assert r.total_fare_rs == r.lm_fare_rs + r.pt_fare_rs
            assert r.total_fare_rs < r.max_fare_rs
            assert r.fare_per_km_rs == pytest.approx(r.total_fare_rs / r.total_distance_km)
            assert 0.0 <= r.efficiency <= 1.0
            if r.optimile:
                assert r.transfers == 0

    def test_failed_records_have_empty_attributes(self):
        net, graph = small_city()
        records = run_experiment1(net, graph, FARES, 10, tiny_grid(max_fares=(15,)), seed=0)
        failed = [r for r in records if r.status != "ok"]
        assert failed
        for r in failed:
            assert r.entry_stop is None
            assert r.total_fare_rs is None
            assert r.efficiency is None

    def test_rejects_empty_run(self):
        net, graph = small_city()
        with pytest.raises(ValueError):
            run_experiment1(net, graph, FARES, 0, tiny_grid(), seed=0)


class TestRecordCsv:
    def render(self, records) -> str:
        sink = io.StringIO()
        records_to_csv(records, sink)
        return sink.getvalue()

    def test_header(self):
        assert self.render([]).splitlines()[0] == ",".join(TRIP_CSV_COLUMNS)

    def test_byte_determinism(self):
        net, graph = small_city()
        a = run_experiment1(net, graph, FARES, 5, tiny_grid(), seed=9)
        b = run_experiment1(net, graph, FARES, 5, tiny_grid(), seed=9)
        assert self.render(a) == self.render(b)

    def test_parallel_matches_serial(self):
        net, graph = small_city()
        serial = run_experiment1(net, graph, FARES, 6, tiny_grid(), seed=4, workers=1)
        threaded = run_experiment1(net, graph, FARES, 6, tiny_grid(), seed=4, workers=4)
        assert self.render(serial) == self.render(threaded)

    def test_rows_recomputable(self):
        # Re-solving from the row's own parameters must reproduce the row.
        net, graph = small_city()
        records = run_experiment1(net, graph, FARES, 6, tiny_grid(), seed=11)
        reader = csv.DictReader(io.StringIO(self.render(records)))
        checked = 0
        for row in reader:
            if row["status"] != "ok":
                continue
            checked += 1
            query = Query(
                origin=GeoPoint(float(row["origin_lat"]), float(row["origin_lon"])),
                destination=GeoPoint(
                    float(row["destination_lat"]), float(row["destination_lon"])
                ),
                max_fare_rs=int(row["max_fare_rs"]),
                w_lm=float(row["w_lm"]),
                w_pt=float(row["w_pt"]),
                lm_range_km=float(row["lm_range_km"]),
                transfer_penalty_min=float(row["transfer_penalty_min"]),
                optimile_only=row["optimile"] == "true",
            )
            plan = solve(query, graph, FARES)
            assert plan.entry_stop == row["entry_stop"]
            assert plan.exit_stop == row["exit_stop"]
            assert plan.transfers == int(row["transfers"])
            assert plan.cost == float(row["cost"])
            assert plan.fare.total_rs == int(row["total_fare_rs"])
            assert plan.total_distance_km == float(row["total_distance_km"])
        assert checked > 0

    def test_float_fields_round_trip_exactly(self):
        net, graph = small_city()
        records = run_experiment1(net, graph, FARES, 3, tiny_grid(), seed=2)
        reader = csv.DictReader(io.StringIO(self.render(records)))
        for row, record in zip(reader, records):
            assert float(row["origin_lat"]) == record.origin.lat
            if record.status == "ok":
                assert float(row["cost"]) == record.cost
                assert float(row["efficiency"]) == record.efficiency


def ok_record(pair_id, optimile, fare, distance, efficiency=0.5, lm_range=2.0, penalty=0.0):
    return TripRecord(
        pair_id=pair_id,
        origin=GeoPoint(28.6, 77.2),
        destination=GeoPoint(28.61, 77.21),
        max_fare_rs=100,
        w_lm=0.2,
        w_pt=0.8,
        lm_range_km=lm_range,
        transfer_penalty_min=penalty,
        optimile=optimile,
        status="ok",
        entry_stop="a",
        exit_stop="b",
        transfers=0,
        travel_time_min=30.0,
        total_distance_km=distance,
        fare_per_km_rs=fare / distance,
        pt_fare_rs=fare,
        lm_fare_rs=0,
        total_fare_rs=fare,
        cost=20.0,
        convenience=distance / 20.0,
        cost_effectiveness=distance / fare,
        c_norm=1.0,
        e_norm=1.0,
        efficiency=efficiency,
    )


def failed_record(pair_id, optimile):
    return TripRecord(
        pair_id=pair_id,
        origin=GeoPoint(28.6, 77.2),
        destination=GeoPoint(28.61, 77.21),
        max_fare_rs=100,
        w_lm=0.2,
        w_pt=0.8,
        lm_range_km=2.0,
        transfer_penalty_min=0.0,
        optimile=optimile,
        status="NoConnection",
    )


class TestSummary:
    def test_hand_built_medians(self):
        records = []
        for pair_id, (opt_fare, unres_fare, opt_d, unres_d) in enumerate(
            [(30, 20, 5.0, 8.0), (50, 40, 6.0, 9.0), (40, 60, 7.0, 10.0)]
        ):
            records.append(ok_record(pair_id, True, opt_fare, opt_d))
            records.append(ok_record(pair_id, False, unres_fare, unres_d))
        # A half-failed pair must stay out of the comparison.
        records.append(ok_record(90, True, 999, 99.0))
        records.append(failed_record(90, False))

        summary = summarize_fare_distance(records)
        assert summary.n_comparable_groups == 3
        assert summary.n_records == 8
        assert summary.n_ok == 7
        assert summary.optimile_fare_median == 40
        assert summary.unrestricted_fare_median == 40
        assert summary.optimile_distance_median == 6.0
        assert summary.unrestricted_distance_median == 9.0
        assert summary.optimile_fare_std == pytest.approx(statistics.pstdev([30, 50, 40]))
        assert summary.optimile_fare_mad == pytest.approx(10.0)
        assert summary.unrestricted_distance_mad == pytest.approx(1.0)

    def test_no_comparable_pairs(self):
        with pytest.raises(NoComparablePairs):
            summarize_fare_distance([ok_record(0, True, 30, 5.0), failed_record(0, False)])

    def test_identical_modes_give_equal_columns(self):
        records = [ok_record(0, True, 30, 5.0), ok_record(0, False, 30, 5.0)]
        summary = summarize_fare_distance(records)
        assert summary.optimile_fare_median == summary.unrestricted_fare_median
        assert summary.optimile_distance_median == summary.unrestricted_distance_median

    def test_efficiency_tallies(self):
        records = [
            # Pair 0 spans two ranges, pair 1 keeps the modes comparable.
            ok_record(0, True, 30, 5.0, efficiency=0.9, lm_range=2.0),
            ok_record(0, False, 30, 5.0, efficiency=0.4, lm_range=5.0),
            ok_record(1, True, 30, 5.0, efficiency=0.8, lm_range=2.0),
            ok_record(1, False, 30, 5.0, efficiency=0.3, lm_range=2.0),
        ]
        tallies = summarize_fare_distance(records).tallies
        assert tallies["highest_efficiency_by_optimile"] == {"true": 2}
        assert tallies["lowest_efficiency_by_optimile"] == {"false": 2}
        assert tallies["highest_efficiency_by_lm_range_km"] == {"2.0": 2}
        assert tallies["lowest_efficiency_by_lm_range_km"] == {"5.0": 1, "2.0": 1}

    def test_doc_structure(self):
        records = [ok_record(0, True, 30, 5.0), ok_record(0, False, 20, 8.0)]
        doc = summary_to_doc(summarize_fare_distance(records))
        assert doc["n_comparable_groups"] == 1
        assert doc["fare_rs"]["optimile"]["median"] == 30
        assert doc["distance_km"]["unrestricted"]["median"] == 8.0
        assert "tallies" in doc

    def test_summary_is_pure_function_of_records(self):
        records = [ok_record(0, True, 30, 5.0), ok_record(0, False, 20, 8.0)]
        assert summarize_fare_distance(records) == summarize_fare_distance(list(records))


class TestRunExperiment2:
    def test_report_order_and_monotonicity(self):
        net, graph = small_city()
        bbox = network_bbox(net, pad_km=0.5, label="demo")
        reports = run_experiment2(net, graph, [bbox], [0.5, 1.0], n_samples=6, seed=0)
        assert [(r.kind, r.radius_km) for r in reports] == [
            ("ptn", 0.5),
            ("optimile", 0.5),
            ("ptn", 1.0),
            ("optimile", 1.0),
        ]
        by_kind = {"ptn": [], "optimile": []}
        for r in reports:
            by_kind[r.kind].append(r.covered_fraction)
        # Same sample seed across radii makes growth exact, not statistical.
        assert by_kind["ptn"][0] <= by_kind["ptn"][1]
        assert by_kind["optimile"][0] <= by_kind["optimile"][1]

    def test_deterministic_and_parallel_safe(self):
        net, graph = small_city()
        bbox = network_bbox(net, pad_km=0.5, label="demo")

        def render(workers):
            sink = io.StringIO()
            coverage_to_csv(
                run_experiment2(
                    net, graph, [bbox], [0.4, 0.8], n_samples=5, seed=2, workers=workers
                ),
                sink,
            )
            return sink.getvalue()

        assert render(1) == render(1)
        assert render(1) == render(4)

    def test_coverage_csv_format(self):
        net, graph = small_city()
        bbox = network_bbox(net, pad_km=0.5, label="demo")
        reports = run_experiment2(net, graph, [bbox], [0.5], n_samples=3, seed=1)
        sink = io.StringIO()
        coverage_to_csv(reports, sink)
        lines = sink.getvalue().splitlines()
        assert lines[0] == "label,kind,radius_km,coverage_pct,method,n_samples,seed"
        first = lines[1].split(",")
        assert first[0] == "demo"
        assert first[1] == "ptn"
        assert first[2] == "0.5"
        # Percent with exactly two decimals.
        assert first[3] == f"{reports[0].covered_fraction * 100:.2f}"
        float(first[3])
