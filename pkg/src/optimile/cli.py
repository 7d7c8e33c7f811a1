"""Command-line surface: network tooling, one-off plans, experiments, service.

Every command works against either a stops/routes file pair or a synthetic
grid city, so the whole pipeline can be exercised without any input data.
"""

from __future__ import annotations

import json
import sys

import click

from . import __version__
from .bipartite import (
    build_bipartite_graph,
    direct_reachability_ratio,
    load_graph_cache,
    save_graph_cache,
)
from .coverage import BoundingBox, network_bbox, optimile_coverage, ptn_coverage
from .errors import NoComparablePairs, OptimileError, WeightConstraintViolated
from .experiments import (
    ParameterGrid,
    coverage_to_csv,
    records_to_csv,
    run_experiment1,
    run_experiment2,
    summarize_fare_distance,
    summary_to_doc,
)
from .fares import FareConfig, fare_config_to_doc, load_fare_config
from .geo import GeoPoint
from .metrics import score_plans
from .network import generate_grid_city, load_network, save_network
from .planner import FAILURE_ERRORS, Query, enumerate_feasible, rank_plans
from .service.schemas import PlanResponse, QueryEcho, build_plan_out


def _network_options(fn):
    fn = click.option("--stops", type=click.Path(exists=True, dir_okay=False),
                      help="Stop table CSV (id,name,lat,lon,mode).")(fn)
    fn = click.option("--routes", type=click.Path(exists=True, dir_okay=False),
                      help="Route document JSON.")(fn)
    fn = click.option("--grid-city", metavar="ROWSxCOLS",
                      help="Generate a synthetic grid city instead of reading files.")(fn)
    fn = click.option("--spacing-km", type=float, default=2.0, show_default=True,
                      help="Stop spacing of the synthetic grid.")(fn)
    fn = click.option("--route-plan", type=click.Choice(["rows_and_cols", "rows_only"]),
                      default="rows_and_cols", show_default=True)(fn)
    return fn


def _graph_options(fn):
    fn = click.option("--graph-cache", type=click.Path(dir_okay=False),
                      help="Graph cache file; reused when it matches the network.")(fn)
    fn = click.option("--max-transfers", type=int, default=2, show_default=True)(fn)
    fn = click.option("--transfer-dwell-min", type=float, default=0.0, show_default=True)(fn)
    fn = click.option("--workers", type=int, default=1, show_default=True)(fn)
    return fn


def _resolve_network(stops, routes, grid_city, spacing_km, route_plan):
    if grid_city:
        rows_s, sep, cols_s = grid_city.lower().partition("x")
        if not sep:
            raise click.UsageError("--grid-city expects ROWSxCOLS, e.g. 10x10")
        return generate_grid_city(int(rows_s), int(cols_s), spacing_km, route_plan)
    if stops and routes:
        return load_network(stops, routes)
    raise click.UsageError("provide --stops and --routes, or --grid-city")


def _resolve_graph(network, graph_cache, max_transfers, transfer_dwell_min, workers):
    if graph_cache:
        cached = load_graph_cache(graph_cache, network)
        if (
            cached is not None
            and cached.max_transfers == max_transfers
            and cached.transfer_dwell_min == transfer_dwell_min
        ):
            return cached
    graph = build_bipartite_graph(network, max_transfers, transfer_dwell_min, workers)
    if graph_cache:
        save_graph_cache(graph, graph_cache)
    return graph


def _resolve_fares(fares_config) -> FareConfig:
    return load_fare_config(fares_config) if fares_config else FareConfig()


def _float_list(ctx, param, value):
    if value is None:
        return None
    return tuple(float(x.strip()) for x in value.split(","))


def _int_list(ctx, param, value):
    if value is None:
        return None
    return tuple(int(x.strip()) for x in value.split(","))


def _parse_bbox(value: str) -> BoundingBox:
    label, sep, coords = value.partition(":")
    if not sep:
        label, coords = "", value
    parts = [float(x) for x in coords.split(",")]
    if len(parts) != 4:
        raise click.UsageError("--bbox expects [label:]min_lat,min_lon,max_lat,max_lon")
    return BoundingBox(min_lat=parts[0], min_lon=parts[1], max_lat=parts[2],
                       max_lon=parts[3], label=label)


@click.group()
@click.version_option(__version__, prog_name="optimile")
def cli() -> None:
    """Multi-modal trip planning with first/last-mile integration."""


@cli.command("generate-city")
@click.option("--rows", type=int, required=True)
@click.option("--cols", type=int, required=True)
@click.option("--spacing-km", type=float, default=2.0, show_default=True)
@click.option("--route-plan", type=click.Choice(["rows_and_cols", "rows_only"]),
              default="rows_and_cols", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--stops-out", type=click.Path(dir_okay=False), required=True)
@click.option("--routes-out", type=click.Path(dir_okay=False), required=True)
def generate_city(rows, cols, spacing_km, route_plan, seed, stops_out, routes_out):
    """Write a synthetic grid-city network to the two-file format."""
    network = generate_grid_city(rows, cols, spacing_km, route_plan, seed)
    save_network(network, stops_out, routes_out)
    click.echo(f"wrote {len(network.stops)} stops, {len(network.routes)} routes")


@cli.command("build-graph")
@_network_options
@_graph_options
@click.option("--out", type=click.Path(dir_okay=False), required=True,
              help="Where to write the graph cache.")
def build_graph(stops, routes, grid_city, spacing_km, route_plan,
                graph_cache, max_transfers, transfer_dwell_min, workers, out):
    """Precompute the direct-connection graph and save it."""
    del graph_cache  # this command always writes to --out
    network = _resolve_network(stops, routes, grid_city, spacing_km, route_plan)
    graph = build_bipartite_graph(network, max_transfers, transfer_dwell_min, workers)
    save_graph_cache(graph, out)
    edges = sum(len(v) for v in graph.edges.values())
    ratio = direct_reachability_ratio(graph) if len(network.stops) >= 2 else 0.0
    click.echo(
        f"{len(network.stops)} stops, {edges} connected pairs, "
        f"direct reachability {ratio:.3f}; cache at {out}"
    )


@cli.command("plan")
@_network_options
@_graph_options
@click.option("--fares-config", type=click.Path(exists=True, dir_okay=False))
@click.option("--from-lat", type=float, required=True)
@click.option("--from-lon", type=float, required=True)
@click.option("--to-lat", type=float, required=True)
@click.option("--to-lon", type=float, required=True)
@click.option("--max-fare", type=int, default=60, show_default=True)
@click.option("--w-lm", type=float, default=0.2, show_default=True)
@click.option("--lm-range-km", type=float, default=5.0, show_default=True)
@click.option("--transfer-penalty-min", type=float, default=0.0, show_default=True)
@click.option("--optimile/--no-optimile", default=False, show_default=True)
@click.option("--limit", type=int, default=5, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit the API response document.")
def plan_cmd(stops, routes, grid_city, spacing_km, route_plan,
             graph_cache, max_transfers, transfer_dwell_min, workers,
             fares_config, from_lat, from_lon, to_lat, to_lon, max_fare,
             w_lm, lm_range_km, transfer_penalty_min, optimile, limit, as_json):
    """Solve one door-to-door query and print ranked plans."""
    if not 0 < w_lm <= 0.5:
        raise WeightConstraintViolated(f"w_lm must lie in (0, 0.5], got {w_lm}")
    network = _resolve_network(stops, routes, grid_city, spacing_km, route_plan)
    graph = _resolve_graph(network, graph_cache, max_transfers, transfer_dwell_min, workers)
    fares = _resolve_fares(fares_config)
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
        max_transfers=max_transfers,
    )
    plan_set = enumerate_feasible(query, graph, fares)
    if plan_set.failure_reason is not None:
        raise FAILURE_ERRORS[plan_set.failure_reason](plan_set.failure_reason)
    ranked = rank_plans(plan_set)
    scores = score_plans(ranked)
    outs = [
        build_plan_out(p, s, network, fares, origin, destination)
        for p, s in zip(ranked[:limit], scores[:limit])
    ]
    if as_json:
        response = PlanResponse(
            query=QueryEcho(
                from_lat=from_lat, from_lon=from_lon, to_lat=to_lat, to_lon=to_lon,
                max_fare=max_fare, w_lm=w_lm, w_pt=1.0 - w_lm, lm_range_km=lm_range_km,
                transfer_penalty_min=transfer_penalty_min, optimile=optimile, limit=limit,
            ),
            best=outs[0],
            alternatives=outs[1:],
            n_feasible=len(ranked),
        )
        click.echo(response.model_dump_json(indent=2))
        return
    for i, out in enumerate(outs):
        marker = "best" if i == 0 else f"alt{i} "
        click.echo(
            f"{marker}: {out.entry_stop} -> {out.exit_stop} via {out.pt_mode}, "
            f"{out.transfers} transfer(s), {out.travel_time_min:.1f} min, "
            f"{out.total_distance_km:.2f} km, Rs {out.fare.total_rs}, "
            f"cost {out.cost:.2f}, efficiency {out.score.efficiency:.3f}"
        )
    click.echo(f"{len(ranked)} feasible plan(s)")


@cli.command("experiment1")
@_network_options
@_graph_options
@click.option("--fares-config", type=click.Path(exists=True, dir_okay=False))
@click.option("--n-pairs", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-fares", callback=_int_list, default=None,
              help="Comma-separated fare caps; default 50..500 step 10.")
@click.option("--w-lm-values", callback=_float_list, default=None,
              help="Comma-separated LM weights; default 0.1..0.5.")
@click.option("--lm-ranges-km", callback=_float_list, default=None,
              help="Comma-separated LM ranges; default 2,5,10.")
@click.option("--transfer-penalties-min", callback=_float_list, default=None,
              help="Comma-separated penalties; default 0.")
@click.option("--out", type=click.Path(dir_okay=False), required=True,
              help="TripRecord CSV destination.")
@click.option("--summary/--no-summary", "with_summary", default=True, show_default=True,
              help="Print the fare/distance summary as JSON.")
def experiment1(stops, routes, grid_city, spacing_km, route_plan,
                graph_cache, max_transfers, transfer_dwell_min, workers,
                fares_config, n_pairs, seed, max_fares, w_lm_values,
                lm_ranges_km, transfer_penalties_min, out, with_summary):
    """Fare/distance sweep: solve sampled pairs over the parameter grid."""
    network = _resolve_network(stops, routes, grid_city, spacing_km, route_plan)
    graph = _resolve_graph(network, graph_cache, max_transfers, transfer_dwell_min, workers)
    fares = _resolve_fares(fares_config)
    grid_kwargs = {}
    if max_fares is not None:
        grid_kwargs["max_fares"] = max_fares
    if w_lm_values is not None:
        grid_kwargs["w_lm_values"] = w_lm_values
    if lm_ranges_km is not None:
        grid_kwargs["lm_ranges_km"] = lm_ranges_km
    if transfer_penalties_min is not None:
        grid_kwargs["transfer_penalties_min"] = transfer_penalties_min
    grid = ParameterGrid(**grid_kwargs)
    records = run_experiment1(network, graph, fares, n_pairs, grid, seed, workers=workers)
    records_to_csv(records, out)
    click.echo(f"wrote {len(records)} records to {out}", err=True)
    if with_summary:
        try:
            summary = summarize_fare_distance(records)
        except NoComparablePairs as err:
            click.echo(f"no summary: {err}", err=True)
            return
        click.echo(json.dumps(summary_to_doc(summary), indent=2))


@cli.command("experiment2")
@_network_options
@_graph_options
@click.option("--bbox", "bboxes", multiple=True,
              help="[label:]min_lat,min_lon,max_lat,max_lon; repeatable.")
@click.option("--pad-km", type=float, default=2.0, show_default=True,
              help="Padding of the automatic network box when no --bbox given.")
@click.option("--radii", callback=_float_list, default="0.5,1.0,2.0,3.0", show_default=True)
@click.option("--n-samples", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cell-size-m", type=float, default=100.0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True,
              help="CoverageReport CSV destination.")
def experiment2(stops, routes, grid_city, spacing_km, route_plan,
                graph_cache, max_transfers, transfer_dwell_min, workers,
                bboxes, pad_km, radii, n_samples, seed, cell_size_m, out):
    """Coverage tables: network vs opti-mile reach per box and radius."""
    network = _resolve_network(stops, routes, grid_city, spacing_km, route_plan)
    graph = _resolve_graph(network, graph_cache, max_transfers, transfer_dwell_min, workers)
    boxes = [_parse_bbox(b) for b in bboxes] if bboxes else [network_bbox(network, pad_km)]
    reports = run_experiment2(
        network, graph, boxes, list(radii), n_samples, seed, cell_size_m, workers
    )
    coverage_to_csv(reports, out)
    click.echo(f"wrote {len(reports)} coverage rows to {out}", err=True)


@cli.command("coverage")
@_network_options
@_graph_options
@click.option("--kind", type=click.Choice(["ptn", "optimile"]), default="ptn",
              show_default=True)
@click.option("--radius-km", type=float, required=True)
@click.option("--bbox", default=None, help="[label:]min_lat,min_lon,max_lat,max_lon")
@click.option("--pad-km", type=float, default=2.0, show_default=True)
@click.option("--n-samples", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cell-size-m", type=float, default=100.0, show_default=True)
def coverage_cmd(stops, routes, grid_city, spacing_km, route_plan,
                 graph_cache, max_transfers, transfer_dwell_min, workers,
                 kind, radius_km, bbox, pad_km, n_samples, seed, cell_size_m):
    """One coverage figure, printed as a single CSV row."""
    network = _resolve_network(stops, routes, grid_city, spacing_km, route_plan)
    box = _parse_bbox(bbox) if bbox else network_bbox(network, pad_km)
    if kind == "ptn":
        report = ptn_coverage(network, box, radius_km, cell_size_m)
    else:
        graph = _resolve_graph(network, graph_cache, max_transfers, transfer_dwell_min, workers)
        report = optimile_coverage(network, graph, box, radius_km, n_samples, seed, cell_size_m)
    coverage_to_csv([report], sys.stdout)


@cli.group()
def fares() -> None:
    """Fare configuration tools."""


@fares.command("show")
@click.option("--config", "fares_config", type=click.Path(exists=True, dir_okay=False),
              help="JSON fare config; defaults printed when omitted.")
def fares_show(fares_config):
    """Print the active fare rules as JSON."""
    config = _resolve_fares(fares_config)
    click.echo(json.dumps(fare_config_to_doc(config), indent=2))


@cli.command("serve")
@_network_options
@_graph_options
@click.option("--fares-config", type=click.Path(exists=True, dir_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui-dir", type=click.Path(file_okay=False),
              help="Static UI bundle to mount under /ui.")
def serve(stops, routes, grid_city, spacing_km, route_plan,
          graph_cache, max_transfers, transfer_dwell_min, workers,
          fares_config, host, port, ui_dir):
    """Run the HTTP planning service."""
    import uvicorn

    from .service import create_app

    network = _resolve_network(stops, routes, grid_city, spacing_km, route_plan)
    graph = _resolve_graph(network, graph_cache, max_transfers, transfer_dwell_min, workers)
    app = create_app(network, graph, fares=_resolve_fares(fares_config), ui_dir=ui_dir)
    click.echo(f"serving {len(network.stops)} stops on http://{host}:{port}", err=True)
    uvicorn.run(app, host=host, port=port)


def main() -> None:
    try:
        cli(standalone_mode=True)
    except OptimileError as err:
        click.echo(f"error: {err.code}: {err}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
