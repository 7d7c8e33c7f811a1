"""Transit network model: stops, routes, file I/O, synthetic grid cities.

A network is a set of stops (bus or metro) plus directed routes, each a
sequence of stop ids with positive per-leg travel times. Routes are one-way;
a bidirectional service is two routes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .errors import (
    DuplicateStopId,
    InvalidGridShape,
    NonPositiveLegTime,
    RouteTooShort,
    UnknownStop,
    UnknownStopInRoute,
)
from .geo import DEFAULT_SPEEDS_KMH, KM_PER_DEG_LAT, GeoPoint, haversine_km, leg_time_minutes

PT_MODES = ("bus", "metro")

# Synthetic grid cities are laid out around a fixed anchor so that generated
# coordinates are realistic and reproducible.
GRID_ANCHOR = GeoPoint(28.6, 77.2)


@dataclass(frozen=True)
class Stop:
    id: str
    name: str
    location: GeoPoint
    mode: str  # "bus" or "metro"

    def __post_init__(self) -> None:
        if self.mode not in PT_MODES:
            raise ValueError(f"stop {self.id!r}: unknown mode {self.mode!r}")


@dataclass(frozen=True)
class Route:
    """A one-way service pattern: ordered stops with per-leg run times."""

    id: str
    mode: str
    stop_sequence: tuple[str, ...]
    leg_times_min: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.mode not in PT_MODES:
            raise ValueError(f"route {self.id!r}: unknown mode {self.mode!r}")
        if len(self.stop_sequence) < 2:
            raise RouteTooShort(f"route {self.id!r} visits {len(self.stop_sequence)} stop(s), needs >= 2")
        if len(self.leg_times_min) != len(self.stop_sequence) - 1:
            raise ValueError(
                f"route {self.id!r}: {len(self.stop_sequence)} stops need "
                f"{len(self.stop_sequence) - 1} leg times, got {len(self.leg_times_min)}"
            )
        for i, t in enumerate(self.leg_times_min):
            if not (t > 0 and math.isfinite(t)):
                raise NonPositiveLegTime(f"route {self.id!r} leg {i}: travel time {t!r}")
        for a, b in zip(self.stop_sequence, self.stop_sequence[1:]):
            if a == b:
                raise ValueError(f"route {self.id!r}: stop {a!r} repeated consecutively")


@dataclass(frozen=True)
class TransitNetwork:
    stops: tuple[Stop, ...]
    routes: tuple[Route, ...]
    # Derived indices; populated by build().
    stop_index: dict[str, Stop] = field(compare=False, default_factory=dict)
    routes_by_stop: dict[str, tuple[str, ...]] = field(compare=False, default_factory=dict)

    @classmethod
    def build(cls, stops: Iterable[Stop], routes: Iterable[Route]) -> "TransitNetwork":
        stops = tuple(stops)
        routes = tuple(routes)
        index: dict[str, Stop] = {}
        for stop in stops:
            if stop.id in index:
                raise DuplicateStopId(f"stop id {stop.id!r} appears more than once")
            index[stop.id] = stop
        by_stop: dict[str, list[str]] = {s.id: [] for s in stops}
        for route in routes:
            for sid in route.stop_sequence:
                if sid not in index:
                    raise UnknownStopInRoute(f"route {route.id!r} references unknown stop {sid!r}")
            for sid in dict.fromkeys(route.stop_sequence):
                by_stop[sid].append(route.id)
        return cls(
            stops=stops,
            routes=routes,
            stop_index=index,
            routes_by_stop={sid: tuple(rids) for sid, rids in by_stop.items()},
        )

    def stop(self, stop_id: str) -> Stop:
        try:
            return self.stop_index[stop_id]
        except KeyError:
            raise UnknownStop(f"no stop with id {stop_id!r}") from None

    def bounds(self) -> tuple[float, float, float, float]:
        """(min_lat, min_lon, max_lat, max_lon) over all stops."""
        if not self.stops:
            raise UnknownStop("network has no stops")
        lats = [s.location.lat for s in self.stops]
        lons = [s.location.lon for s in self.stops]
        return min(lats), min(lons), max(lats), max(lons)


# --- file I/O ----------------------------------------------------------------
#
# Stops travel as CSV with columns id,name,lat,lon,mode. Routes travel as a
# JSON document: a list of objects {id, mode, stops, leg_times_min?}. When
# leg_times_min is omitted the loader derives it from stop-to-stop great-circle
# distance at the mode's cruise speed.


def _open_text(source: str | Path | IO[str], mode: str):
    if isinstance(source, (str, Path)):
        return open(source, mode, encoding="utf-8", newline=""), True
    return source, False


def load_network(
    stops_source: str | Path | IO[str],
    routes_source: str | Path | IO[str],
    speeds_kmh=None,
) -> TransitNetwork:
    """Read a network from a stop table (CSV) and a route document (JSON)."""
    fh, owned = _open_text(stops_source, "r")
    try:
        reader = csv.DictReader(fh)
        stops = []
        for row in reader:
            stops.append(
                Stop(
                    id=row["id"].strip(),
                    name=row["name"].strip(),
                    location=GeoPoint(float(row["lat"]), float(row["lon"])),
                    mode=row["mode"].strip(),
                )
            )
    finally:
        if owned:
            fh.close()

    fh, owned = _open_text(routes_source, "r")
    try:
        doc = json.load(fh)
    finally:
        if owned:
            fh.close()
    if isinstance(doc, dict):
        doc = doc["routes"]

    stop_locs = {s.id: s.location for s in stops}
    routes = []
    for item in doc:
        stop_ids = tuple(item["stops"])
        if "leg_times_min" in item and item["leg_times_min"] is not None:
            leg_times = tuple(float(t) for t in item["leg_times_min"])
        else:
            # Derive run times from geometry; unknown stops surface later in
            # build() with the proper error, so guard the lookup here.
            for sid in stop_ids:
                if sid not in stop_locs:
                    raise UnknownStopInRoute(
                        f"route {item['id']!r} references unknown stop {sid!r}"
                    )
            leg_times = tuple(
                leg_time_minutes(haversine_km(stop_locs[a], stop_locs[b]), item["mode"], speeds_kmh)
                for a, b in zip(stop_ids, stop_ids[1:])
            )
        routes.append(
            Route(id=item["id"], mode=item["mode"], stop_sequence=stop_ids, leg_times_min=leg_times)
        )
    return TransitNetwork.build(stops, routes)


def save_network(
    network: TransitNetwork,
    stops_sink: str | Path | IO[str],
    routes_sink: str | Path | IO[str],
) -> None:
    """Write a network back to the two-file format. Inverse of load_network."""
    fh, owned = _open_text(stops_sink, "w")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "name", "lat", "lon", "mode"])
        for s in network.stops:
            writer.writerow([s.id, s.name, repr(s.location.lat), repr(s.location.lon), s.mode])
    finally:
        if owned:
            fh.close()

    doc = [
        {
            "id": r.id,
            "mode": r.mode,
            "stops": list(r.stop_sequence),
            "leg_times_min": list(r.leg_times_min),
        }
        for r in network.routes
    ]
    fh, owned = _open_text(routes_sink, "w")
    try:
        json.dump({"routes": doc}, fh, indent=2)
        fh.write("\n")
    finally:
        if owned:
            fh.close()


def network_fingerprint(network: TransitNetwork) -> str:
    """Content hash of a network, stable across processes. Used to key caches."""
    stops_buf = io.StringIO()
    routes_buf = io.StringIO()
    save_network(network, stops_buf, routes_buf)
    digest = hashlib.sha256()
    digest.update(stops_buf.getvalue().encode("utf-8"))
    digest.update(routes_buf.getvalue().encode("utf-8"))
    return digest.hexdigest()


# --- synthetic cities --------------------------------------------------------


def generate_grid_city(
    rows: int,
    cols: int,
    spacing_km: float,
    route_plan: str = "rows_and_cols",
    seed: int = 0,
) -> TransitNetwork:
    """Build a rectangular bus network with one route per row (and column).

    Stops sit on a rows x cols lattice with the given spacing. Row routes
    alternate direction (row 0 eastbound, row 1 westbound, ...), columns
    likewise, so a full grid stays well connected with few transfers. The
    layout is deterministic; ``seed`` is accepted for interface stability.
    """
    del seed
    if route_plan not in ("rows_only", "rows_and_cols"):
        raise ValueError(f"unknown route plan {route_plan!r}")
    if rows < 2 or cols < 2:
        raise InvalidGridShape(f"grid needs at least 2x2 stops, got {rows}x{cols}")
    if not (spacing_km > 0 and math.isfinite(spacing_km)):
        raise InvalidGridShape(f"stop spacing must be positive, got {spacing_km!r}")

    dlat = spacing_km / KM_PER_DEG_LAT
    center_lat = GRID_ANCHOR.lat + (rows - 1) / 2.0 * dlat
    dlon = spacing_km / (KM_PER_DEG_LAT * math.cos(math.radians(center_lat)))

    def point(r: int, c: int) -> GeoPoint:
        return GeoPoint(GRID_ANCHOR.lat + r * dlat, GRID_ANCHOR.lon + c * dlon)

    stops = [
        Stop(id=f"s-{r}-{c}", name=f"Grid {r}/{c}", location=point(r, c), mode="bus")
        for r in range(rows)
        for c in range(cols)
    ]
    locs = {s.id: s.location for s in stops}

    def make_route(route_id: str, ids: list[str]) -> Route:
        times = tuple(
            leg_time_minutes(haversine_km(locs[a], locs[b]), "bus", DEFAULT_SPEEDS_KMH)
            for a, b in zip(ids, ids[1:])
        )
        return Route(id=route_id, mode="bus", stop_sequence=tuple(ids), leg_times_min=times)

    routes = []
    for r in range(rows):
        ids = [f"s-{r}-{c}" for c in range(cols)]
        if r % 2 == 1:
            ids.reverse()
        routes.append(make_route(f"row-{r}", ids))
    if route_plan == "rows_and_cols":
        for c in range(cols):
            ids = [f"s-{r}-{c}" for r in range(rows)]
            if c % 2 == 1:
                ids.reverse()
            routes.append(make_route(f"col-{c}", ids))
    return TransitNetwork.build(stops, routes)
