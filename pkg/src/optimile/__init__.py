"""Multi-modal trip planning: first/last-mile services + public transit.

The package remodels a stop/route network into a direct-connection graph,
answers door-to-door queries under a fare cap, scores plans by efficiency,
and measures network coverage. See README for the CLI and HTTP surfaces.
"""

__version__ = "0.1.0"

from .bipartite import (
    BipartiteGraph,
    ConnectionOption,
    DirectEdge,
    build_bipartite_graph,
    direct_reachability_ratio,
    load_graph_cache,
    save_graph_cache,
    transfer_search,
)
from .coverage import (
    BoundingBox,
    CoverageReport,
    montecarlo_coverage_oracle,
    network_bbox,
    optimile_coverage,
    ptn_coverage,
    rasterize_circles,
)
from .errors import OptimileError
from .experiments import (
    ExperimentSummary,
    ParameterGrid,
    TripRecord,
    run_experiment1,
    run_experiment2,
    summarize_fare_distance,
)
from .fares import FareBreakdown, FareConfig, lm_fare, load_fare_config, pt_fare, trip_fare
from .geo import GeoPoint, haversine_km, leg_time_minutes
from .metrics import (
    EfficiencyWeights,
    PathScore,
    convenience,
    cost_effectiveness,
    efficiency,
    normalize,
    score_plans,
)
from .network import (
    Route,
    Stop,
    TransitNetwork,
    generate_grid_city,
    load_network,
    save_network,
)
from .planner import (
    Plan,
    PlanSet,
    Query,
    candidate_stops,
    enumerate_feasible,
    plan_cost,
    rank_plans,
    solve,
)

__all__ = [
    "__version__",
    "BipartiteGraph",
    "BoundingBox",
    "ConnectionOption",
    "CoverageReport",
    "DirectEdge",
    "EfficiencyWeights",
    "ExperimentSummary",
    "FareBreakdown",
    "FareConfig",
    "GeoPoint",
    "OptimileError",
    "ParameterGrid",
    "PathScore",
    "Plan",
    "PlanSet",
    "Query",
    "Route",
    "Stop",
    "TransitNetwork",
    "TripRecord",
    "build_bipartite_graph",
    "candidate_stops",
    "convenience",
    "cost_effectiveness",
    "direct_reachability_ratio",
    "efficiency",
    "enumerate_feasible",
    "generate_grid_city",
    "haversine_km",
    "leg_time_minutes",
    "lm_fare",
    "load_fare_config",
    "load_graph_cache",
    "load_network",
    "montecarlo_coverage_oracle",
    "network_bbox",
    "normalize",
    "optimile_coverage",
    "plan_cost",
    "pt_fare",
    "ptn_coverage",
    "rank_plans",
    "rasterize_circles",
    "run_experiment1",
    "run_experiment2",
    "save_graph_cache",
    "save_network",
    "score_plans",
    "solve",
    "summarize_fare_distance",
    "transfer_search",
    "trip_fare",
]
