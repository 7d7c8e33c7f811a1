"""Area coverage of stop sets over bounding boxes.

Coverage is the fraction of a box within a given radius of any stop in a
set (a union of circles clipped to the box). The estimator rasterizes the
box on a local equirectangular projection and tests cell centers; a seeded
Monte Carlo estimator over true great-circle distances serves as an
independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bipartite import BipartiteGraph
from .errors import DegenerateBox
from .geo import EARTH_RADIUS_KM, KM_PER_DEG_LAT, GeoPoint
from .network import TransitNetwork

DEFAULT_CELL_SIZE_M = 100.0


@dataclass(frozen=True)
class BoundingBox:
    min_lat: float
    max_lat: float
    min_lon: float
    max_lon: float
    label: str = ""

    def __post_init__(self) -> None:
        if not (self.min_lat < self.max_lat and self.min_lon < self.max_lon):
            raise DegenerateBox(
                f"box {self.label!r} has no area: "
                f"lat [{self.min_lat}, {self.max_lat}], lon [{self.min_lon}, {self.max_lon}]"
            )

    @property
    def center(self) -> GeoPoint:
        return GeoPoint((self.min_lat + self.max_lat) / 2, (self.min_lon + self.max_lon) / 2)

    def extent_km(self) -> tuple[float, float]:
        """(width, height) on the local projection."""
        lat0 = math.radians(self.center.lat)
        width = (self.max_lon - self.min_lon) * KM_PER_DEG_LAT * math.cos(lat0)
        height = (self.max_lat - self.min_lat) * KM_PER_DEG_LAT
        return width, height

    def project_km(self, lats, lons):
        """Degrees to km offsets from the box center (equirectangular)."""
        lat0 = math.radians(self.center.lat)
        x = (np.asarray(lons) - self.center.lon) * KM_PER_DEG_LAT * math.cos(lat0)
        y = (np.asarray(lats) - self.center.lat) * KM_PER_DEG_LAT
        return x, y


@dataclass(frozen=True)
class CoverageGrid:
    """Occupancy lattice over a box; cell (row, col) maps to one cell center."""

    bbox: BoundingBox
    cell_size_m: float
    occupancy: np.ndarray

    @property
    def covered_fraction(self) -> float:
        return float(self.occupancy.mean())


@dataclass(frozen=True)
class CoverageReport:
    label: str
    kind: str  # "ptn" or "optimile"
    radius_km: float
    covered_fraction: float
    method: str  # "grid" or "montecarlo"
    n_samples: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.covered_fraction <= 1.0:
            raise ValueError(f"covered fraction out of [0,1]: {self.covered_fraction}")


def _cell_centers(bbox: BoundingBox, cell_size_m: float):
    width, height = bbox.extent_km()
    cell_km = cell_size_m / 1000.0
    nx = max(1, math.ceil(width / cell_km))
    ny = max(1, math.ceil(height / cell_km))
    xs = -width / 2 + (np.arange(nx) + 0.5) * cell_km
    ys = -height / 2 + (np.arange(ny) + 0.5) * cell_km
    return xs, ys


def rasterize_grid(
    centers: list[GeoPoint],
    radius_km: float,
    bbox: BoundingBox,
    cell_size_m: float = DEFAULT_CELL_SIZE_M,
) -> CoverageGrid:
    """Union-of-circles occupancy; a cell counts iff its center is in range."""
    if radius_km <= 0:
        raise ValueError(f"radius must be positive, got {radius_km}")
    xs, ys = _cell_centers(bbox, cell_size_m)
    occupancy = np.zeros((len(ys), len(xs)), dtype=bool)
    if centers:
        cx, cy = bbox.project_km(
            [c.lat for c in centers], [c.lon for c in centers]
        )
        r2 = radius_km * radius_km
        x_lo, x_hi = xs[0] - radius_km, xs[-1] + radius_km
        y_lo, y_hi = ys[0] - radius_km, ys[-1] + radius_km
        for i in range(len(cx)):
            # A circle entirely outside the lattice cannot mark any cell.
            if not (x_lo <= cx[i] <= x_hi and y_lo <= cy[i] <= y_hi):
                continue
            dx2 = (xs - cx[i]) ** 2
            dy2 = (ys - cy[i]) ** 2
            occupancy |= dy2[:, None] + dx2[None, :] <= r2
    return CoverageGrid(bbox=bbox, cell_size_m=cell_size_m, occupancy=occupancy)


def rasterize_circles(
    centers: list[GeoPoint],
    radius_km: float,
    bbox: BoundingBox,
    cell_size_m: float = DEFAULT_CELL_SIZE_M,
) -> float:
    return rasterize_grid(centers, radius_km, bbox, cell_size_m).covered_fraction


def _haversine_km_arrays(lat: float, lon: float, lats: np.ndarray, lons: np.ndarray) -> np.ndarray:
    lat1 = math.radians(lat)
    lat2 = np.radians(lats)
    dlat = lat2 - lat1
    dlon = np.radians(lons - lon)
    h = np.sin(dlat / 2.0) ** 2 + math.cos(lat1) * np.cos(lat2) * np.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(h))


def montecarlo_coverage_oracle(
    centers: list[GeoPoint],
    radius_km: float,
    bbox: BoundingBox,
    n_points: int,
    seed: int,
) -> float:
    """Fraction of seeded-uniform points within range of any center.

    Independent of the grid estimator: no projection, membership by
    great-circle distance.
    """
    rng = np.random.default_rng(seed)
    lats = rng.uniform(bbox.min_lat, bbox.max_lat, n_points)
    lons = rng.uniform(bbox.min_lon, bbox.max_lon, n_points)
    covered = np.zeros(n_points, dtype=bool)
    for c in centers:
        covered |= _haversine_km_arrays(c.lat, c.lon, lats, lons) <= radius_km
    return float(covered.mean())


def ptn_coverage(
    network: TransitNetwork,
    bbox: BoundingBox,
    radius_km: float,
    cell_size_m: float = DEFAULT_CELL_SIZE_M,
) -> CoverageReport:
    """How much of the box lies within walking radius of any transit stop."""
    centers = [s.location for s in network.stops]
    fraction = rasterize_circles(centers, radius_km, bbox, cell_size_m)
    return CoverageReport(
        label=bbox.label,
        kind="ptn",
        radius_km=radius_km,
        covered_fraction=fraction,
        method="grid",
    )


def optimile_coverage(
    network: TransitNetwork,
    graph: BipartiteGraph,
    bbox: BoundingBox,
    lm_radius_km: float,
    n_samples: int,
    seed: int,
    cell_size_m: float = DEFAULT_CELL_SIZE_M,
) -> CoverageReport:
    """Mean reachable-area fraction over sampled trip origins.

    For each seeded-uniform location: source stops are those within the LM
    radius, destination stops are every stop directly connected (0 transfers)
    from any source, and the sample's coverage is the circle union around
    sources and destinations. A sample with no source stops contributes 0.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be at least 1, got {n_samples}")
    rng = np.random.default_rng(seed)
    lats = rng.uniform(bbox.min_lat, bbox.max_lat, n_samples)
    lons = rng.uniform(bbox.min_lon, bbox.max_lon, n_samples)

    stop_ids = [s.id for s in network.stops]
    stop_lats = np.array([s.location.lat for s in network.stops])
    stop_lons = np.array([s.location.lon for s in network.stops])
    direct_dests: dict[str, list[str]] = {}
    for u, outgoing in graph.edges.items():
        direct_dests[u] = [e.to_stop for e in outgoing if e.options[0].transfers == 0]

    fractions = []
    for i in range(n_samples):
        if len(stop_ids) == 0:
            fractions.append(0.0)
            continue
        dist = _haversine_km_arrays(float(lats[i]), float(lons[i]), stop_lats, stop_lons)
        sources = [stop_ids[j] for j in np.nonzero(dist <= lm_radius_km)[0]]
        if not sources:
            fractions.append(0.0)
            continue
        reached = set(sources)
        for src in sources:
            reached.update(direct_dests.get(src, ()))
        centers = [network.stop_index[sid].location for sid in sorted(reached)]
        fractions.append(rasterize_circles(centers, lm_radius_km, bbox, cell_size_m))
    return CoverageReport(
        label=bbox.label,
        kind="optimile",
        radius_km=lm_radius_km,
        covered_fraction=float(np.mean(fractions)),
        method="grid",
        n_samples=n_samples,
        seed=seed,
    )


def network_bbox(network: TransitNetwork, pad_km: float = 0.0, label: str = "network") -> BoundingBox:
    """Tight box around all stops, optionally padded outward."""
    min_lat, min_lon, max_lat, max_lon = network.bounds()
    dlat = pad_km / KM_PER_DEG_LAT
    lat0 = math.radians((min_lat + max_lat) / 2)
    dlon = pad_km / (KM_PER_DEG_LAT * math.cos(lat0))
    if pad_km == 0.0 and (min_lat == max_lat or min_lon == max_lon):
        raise DegenerateBox("stops are collinear; pad the box to give it area")
    return BoundingBox(
        min_lat=min_lat - dlat,
        max_lat=max_lat + dlat,
        min_lon=min_lon - dlon,
        max_lon=max_lon + dlon,
        label=label,
    )
