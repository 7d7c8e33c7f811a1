"""Geodesic primitives: points, great-circle distance, travel-time helpers."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass

from .errors import NegativeDistance

EARTH_RADIUS_KM = 6371.0

# Arc length of one degree of latitude on the sphere above. Longitude degrees
# shrink by cos(lat); every local projection in this package uses this pair.
KM_PER_DEG_LAT = math.pi * EARTH_RADIUS_KM / 180.0

# Cruise speeds in km/h. "lm" covers motorized first/last-mile rides
# (auto-rickshaw, e-rickshaw, shared cab); "walk" is used below the free-walk
# threshold of the fare model.
DEFAULT_SPEEDS_KMH: Mapping[str, float] = {
    "bus": 15.0,
    "metro": 32.0,
    "lm": 20.0,
    "walk": 4.5,
}


@dataclass(frozen=True, order=True)
class GeoPoint:
    """A WGS84 coordinate pair in decimal degrees."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and -90.0 <= self.lat <= 90.0):
            raise ValueError(f"latitude out of range: {self.lat!r}")
        if not (math.isfinite(self.lon) and -180.0 <= self.lon <= 180.0):
            raise ValueError(f"longitude out of range: {self.lon!r}")


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points in kilometres."""
    lat1 = math.radians(a.lat)
    lat2 = math.radians(b.lat)
    dlat = lat2 - lat1
    dlon = math.radians(b.lon - a.lon)
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(math.sqrt(h))


def leg_time_minutes(
    distance_km: float,
    mode: str,
    speeds_kmh: Mapping[str, float] | None = None,
) -> float:
    """Travel time in minutes for one leg at the mode's cruise speed."""
    if distance_km < 0:
        raise NegativeDistance(f"leg distance must be non-negative, got {distance_km}")
    speeds = DEFAULT_SPEEDS_KMH if speeds_kmh is None else speeds_kmh
    try:
        speed = speeds[mode]
    except KeyError:
        raise KeyError(f"no speed configured for mode {mode!r}") from None
    if speed <= 0:
        raise ValueError(f"speed for mode {mode!r} must be positive, got {speed}")
    return distance_km / speed * 60.0
