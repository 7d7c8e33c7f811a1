"""Direct-connection remodel of a transit network.

Every ordered stop pair that is reachable within the transfer budget gets one
edge holding the Pareto set of (travel time, transfers) options. Once built,
a door-to-door query never searches the route network again: it only scans
edges between candidate entry and exit stops.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DegenerateNetwork, UnknownStop
from .geo import haversine_km
from .network import TransitNetwork, network_fingerprint

DEFAULT_MAX_TRANSFERS = 2


@dataclass(frozen=True)
class ConnectionOption:
    """One way of riding between two stops: time, transfer count, distance.

    pt_mode is the fare mode of the connection: the mode carrying the larger
    share of ride distance on the underlying path (ties go to bus).
    """

    travel_time_min: float
    transfers: int
    ride_distance_km: float
    pt_mode: str

    def __post_init__(self) -> None:
        if self.travel_time_min <= 0:
            raise ValueError(f"connection travel time must be positive, got {self.travel_time_min}")
        if self.transfers < 0:
            raise ValueError(f"transfer count must be non-negative, got {self.transfers}")


@dataclass(frozen=True)
class DirectEdge:
    from_stop: str
    to_stop: str
    # Sorted by ascending transfers; travel time strictly decreases along the
    # list, so the head is the fewest-transfer option and the tail the fastest.
    options: tuple[ConnectionOption, ...]

    def __post_init__(self) -> None:
        if self.from_stop == self.to_stop:
            raise ValueError(f"self-edge at stop {self.from_stop!r}")
        if not self.options:
            raise ValueError(f"edge {self.from_stop!r}->{self.to_stop!r} has no options")

    def fastest(self) -> ConnectionOption:
        return self.options[-1]

    def direct(self) -> ConnectionOption | None:
        head = self.options[0]
        return head if head.transfers == 0 else None


@dataclass(frozen=True)
class BipartiteGraph:
    network: TransitNetwork
    edges: dict[str, tuple[DirectEdge, ...]]
    max_transfers: int
    transfer_dwell_min: float = 0.0
    _index: dict[str, dict[str, DirectEdge]] = field(compare=False, repr=False, default_factory=dict)

    @classmethod
    def assemble(
        cls,
        network: TransitNetwork,
        edges: dict[str, tuple[DirectEdge, ...]],
        max_transfers: int,
        transfer_dwell_min: float,
    ) -> "BipartiteGraph":
        index = {u: {e.to_stop: e for e in outgoing} for u, outgoing in edges.items()}
        return cls(
            network=network,
            edges=edges,
            max_transfers=max_transfers,
            transfer_dwell_min=transfer_dwell_min,
            _index=index,
        )

    def edge(self, from_stop: str, to_stop: str) -> DirectEdge | None:
        return self._index.get(from_stop, {}).get(to_stop)


# --- label search ------------------------------------------------------------
#
# Labels are (travel_time, ride_distance, bus_distance) triples, ordered
# lexicographically on the first two components. Both components are sums of
# per-leg values, so the per-round minimum label at a stop is always the
# prefix of some optimal full path and a single label per (stop, round)
# suffices. bus_distance is carried along to decide the fare mode.

_Label = tuple[float, float, float]


def _lex_less(a: _Label, b: _Label) -> bool:
    return a[0] < b[0] or (a[0] == b[0] and a[1] < b[1])


class _RouteTable:
    """Per-route prefix sums so ride segments cost O(1) during the sweep."""

    __slots__ = ("stop_sequence", "cum_time", "cum_dist", "is_bus")

    def __init__(self, route, network: TransitNetwork):
        seq = route.stop_sequence
        self.stop_sequence = seq
        cum_t = [0.0]
        cum_d = [0.0]
        for i, leg in enumerate(route.leg_times_min):
            cum_t.append(cum_t[-1] + leg)
            a = network.stop_index[seq[i]].location
            b = network.stop_index[seq[i + 1]].location
            cum_d.append(cum_d[-1] + haversine_km(a, b))
        self.cum_time = cum_t
        self.cum_dist = cum_d
        self.is_bus = route.mode == "bus"


def _route_tables(network: TransitNetwork) -> list[_RouteTable]:
    return [_RouteTable(r, network) for r in network.routes]


def _search_labels(
    tables: list[_RouteTable],
    origin: str,
    max_transfers: int,
    transfer_dwell_min: float,
) -> list[dict[str, _Label]]:
    """Best label per stop per round; round b covers paths of ≤ b boardings."""
    rounds: list[dict[str, _Label]] = [{origin: (0.0, 0.0, 0.0)}]
    for b in range(1, max_transfers + 2):
        prev = rounds[b - 1]
        cur = dict(prev)
        dwell = transfer_dwell_min if b >= 2 else 0.0
        for table in tables:
            seq = table.stop_sequence
            cum_t = table.cum_time
            cum_d = table.cum_dist
            is_bus = table.is_bus
            carry: _Label | None = None  # boarding offset; rides are strictly forward
            for idx, stop in enumerate(seq):
                if carry is not None:
                    cand = (
                        carry[0] + cum_t[idx],
                        carry[1] + cum_d[idx],
                        carry[2] + (cum_d[idx] if is_bus else 0.0),
                    )
                    seen = cur.get(stop)
                    if seen is None or _lex_less(cand, seen):
                        cur[stop] = cand
                base = prev.get(stop)
                if base is not None:
                    offset = (
                        base[0] + dwell - cum_t[idx],
                        base[1] - cum_d[idx],
                        base[2] - (cum_d[idx] if is_bus else 0.0),
                    )
                    if carry is None or _lex_less(offset, carry):
                        carry = offset
        rounds.append(cur)
    return rounds


def _pareto_options(rounds: list[dict[str, _Label]], stop: str) -> tuple[ConnectionOption, ...]:
    options = []
    best_time = None
    for b in range(1, len(rounds)):
        label = rounds[b].get(stop)
        if label is None:
            continue
        time, dist, bus_km = label
        if best_time is not None and time >= best_time:
            continue
        best_time = time
        mode = "bus" if bus_km >= dist - bus_km else "metro"
        options.append(
            ConnectionOption(
                travel_time_min=time,
                transfers=b - 1,
                ride_distance_km=dist,
                pt_mode=mode,
            )
        )
    return tuple(options)


def transfer_search(
    network: TransitNetwork,
    origin: str,
    max_transfers: int,
    transfer_dwell_min: float = 0.0,
) -> dict[str, tuple[ConnectionOption, ...]]:
    """Pareto connection options from one origin stop to every reachable stop."""
    if origin not in network.stop_index:
        raise UnknownStop(f"no stop with id {origin!r}")
    if max_transfers < 0:
        raise ValueError(f"max_transfers must be non-negative, got {max_transfers}")
    tables = _route_tables(network)
    rounds = _search_labels(tables, origin, max_transfers, transfer_dwell_min)
    reachable = set()
    for cur in rounds[1:]:
        reachable.update(cur)
    reachable.discard(origin)
    out = {}
    for stop in sorted(reachable):
        options = _pareto_options(rounds, stop)
        if options:
            out[stop] = options
    return out


def build_bipartite_graph(
    network: TransitNetwork,
    max_transfers: int = DEFAULT_MAX_TRANSFERS,
    transfer_dwell_min: float = 0.0,
    workers: int = 1,
) -> BipartiteGraph:
    """Run the label search from every stop and assemble the edge map."""
    if max_transfers < 0:
        raise ValueError(f"max_transfers must be non-negative, got {max_transfers}")
    tables = _route_tables(network)
    origins = sorted(network.stop_index)

    def edges_from(origin: str) -> tuple[DirectEdge, ...]:
        rounds = _search_labels(tables, origin, max_transfers, transfer_dwell_min)
        reachable = set()
        for cur in rounds[1:]:
            reachable.update(cur)
        reachable.discard(origin)
        out = []
        for stop in sorted(reachable):
            options = _pareto_options(rounds, stop)
            if options:
                out.append(DirectEdge(from_stop=origin, to_stop=stop, options=options))
        return tuple(out)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_origin = list(pool.map(edges_from, origins))
    else:
        per_origin = [edges_from(o) for o in origins]

    edges = {o: outgoing for o, outgoing in zip(origins, per_origin) if outgoing}
    return BipartiteGraph.assemble(network, edges, max_transfers, transfer_dwell_min)


def direct_reachability_ratio(graph: BipartiteGraph) -> float:
    """Fraction of ordered stop pairs connected with zero transfers."""
    n = len(graph.network.stops)
    if n < 2:
        raise DegenerateNetwork(f"reachability needs at least 2 stops, got {n}")
    direct_pairs = sum(
        1 for outgoing in graph.edges.values() for e in outgoing if e.options[0].transfers == 0
    )
    return direct_pairs / (n * (n - 1))


# --- cache -------------------------------------------------------------------
#
# The graph caches to a single JSON document keyed by a content hash of the
# network, so a stale cache can never be served for edited input files. A
# cache hit reproduces the exact bytes a fresh build would serialize to.


def graph_to_doc(graph: BipartiteGraph) -> dict:
    return {
        "network_fingerprint": network_fingerprint(graph.network),
        "max_transfers": graph.max_transfers,
        "transfer_dwell_min": graph.transfer_dwell_min,
        "edges": {
            u: [
                [
                    e.to_stop,
                    [
                        [o.travel_time_min, o.transfers, o.ride_distance_km, o.pt_mode]
                        for o in e.options
                    ],
                ]
                for e in outgoing
            ]
            for u, outgoing in graph.edges.items()
        },
    }


def serialize_graph(graph: BipartiteGraph) -> str:
    return json.dumps(graph_to_doc(graph), sort_keys=True, separators=(",", ":")) + "\n"


def save_graph_cache(graph: BipartiteGraph, path: str | Path) -> None:
    Path(path).write_text(serialize_graph(graph), encoding="utf-8")


def load_graph_cache(path: str | Path, network: TransitNetwork) -> BipartiteGraph | None:
    """Rebuild a cached graph; None when missing or built from other inputs."""
    path = Path(path)
    if not path.exists():
        return None
    doc = json.loads(path.read_text(encoding="utf-8"))
    if doc.get("network_fingerprint") != network_fingerprint(network):
        return None
    edges = {}
    for u, outgoing in doc["edges"].items():
        edges[u] = tuple(
            DirectEdge(
                from_stop=u,
                to_stop=to_stop,
                options=tuple(
                    ConnectionOption(
                        travel_time_min=t, transfers=tr, ride_distance_km=d, pt_mode=m
                    )
                    for t, tr, d, m in options
                ),
            )
            for to_stop, options in outgoing
        )
    return BipartiteGraph.assemble(
        network, edges, doc["max_transfers"], doc["transfer_dwell_min"]
    )
