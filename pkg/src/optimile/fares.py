"""Fare rules: first/last-mile meter fares and slab-based transit fares.

All fares are integer Rupees. The LM rule is base fare for the first
kilometre plus a per-started-km rate beyond it; legs short enough to walk
are free. PT fares come from per-mode distance slabs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

from .errors import NegativeDistance

INF_KM = math.inf

# Placeholder agency slabs; realistic shape, not calibrated to any city.
DEFAULT_BUS_SLABS: tuple[tuple[float, int], ...] = (
    (4.0, 5),
    (8.0, 10),
    (12.0, 15),
    (INF_KM, 25),
)
DEFAULT_METRO_SLABS: tuple[tuple[float, int], ...] = (
    (2.0, 10),
    (5.0, 20),
    (12.0, 30),
    (21.0, 40),
    (32.0, 50),
    (INF_KM, 60),
)

# ceil() guard: a distance like 2.0000000000000004 km from float noise must
# not buy an extra kilometre.
_CEIL_EPS = 1e-9


@dataclass(frozen=True)
class FareConfig:
    lm_base_rs: int = 25
    lm_per_km_rs: int = 10
    walk_free_km: float = 0.5
    pt_slabs: dict[str, tuple[tuple[float, int], ...]] = field(
        default_factory=lambda: {"bus": DEFAULT_BUS_SLABS, "metro": DEFAULT_METRO_SLABS}
    )
    # When true, a transfer path re-pays the slab per boarding, the total ride
    # distance split evenly across boardings. Default: one lookup on the total.
    fare_per_boarding: bool = False

    def __post_init__(self) -> None:
        if self.lm_base_rs < 0 or self.lm_per_km_rs < 0:
            raise ValueError("LM fare parameters must be non-negative")
        if self.walk_free_km < 0:
            raise ValueError(f"walk_free_km must be non-negative, got {self.walk_free_km}")
        for mode, slabs in self.pt_slabs.items():
            if not slabs:
                raise ValueError(f"mode {mode!r} has no fare slabs")
            uppers = [u for u, _ in slabs]
            fares = [f for _, f in slabs]
            if any(b <= a for a, b in zip(uppers, uppers[1:])):
                raise ValueError(f"mode {mode!r}: slab distances must be strictly increasing")
            if any(b < a for a, b in zip(fares, fares[1:])):
                raise ValueError(f"mode {mode!r}: slab fares must be non-decreasing")
            if not math.isinf(uppers[-1]):
                raise ValueError(f"mode {mode!r}: last slab must cover all distances")


@dataclass(frozen=True)
class FareBreakdown:
    lm_first_rs: int
    lm_last_rs: int
    pt_rs: int
    total_rs: int


def lm_fare(distance_km: float, config: FareConfig) -> int:
    """Fare of one first/last-mile leg; 0 when the leg is walkable."""
    if distance_km < 0:
        raise NegativeDistance(f"LM distance must be non-negative, got {distance_km}")
    if distance_km <= config.walk_free_km:
        return 0
    extra_km = math.ceil(max(0.0, distance_km - 1.0) - _CEIL_EPS)
    return config.lm_base_rs + config.lm_per_km_rs * max(0, extra_km)


def pt_fare(mode: str, ride_distance_km: float, config: FareConfig) -> int:
    """Slab fare: the first slab whose upper bound covers the ride distance."""
    if ride_distance_km < 0:
        raise NegativeDistance(f"ride distance must be non-negative, got {ride_distance_km}")
    try:
        slabs = config.pt_slabs[mode]
    except KeyError:
        raise KeyError(f"no fare slabs configured for mode {mode!r}") from None
    for upper, fare in slabs:
        if ride_distance_km <= upper:
            return fare
    return slabs[-1][1]


def trip_fare(
    first_lm_km: float,
    last_lm_km: float,
    pt_mode: str,
    pt_ride_km: float,
    transfers: int,
    config: FareConfig,
) -> FareBreakdown:
    """Total door-to-door fare of an LM + PT + LM journey."""
    first = lm_fare(first_lm_km, config)
    last = lm_fare(last_lm_km, config)
    if config.fare_per_boarding and transfers > 0:
        boardings = transfers + 1
        pt = boardings * pt_fare(pt_mode, pt_ride_km / boardings, config)
    else:
        pt = pt_fare(pt_mode, pt_ride_km, config)
    return FareBreakdown(lm_first_rs=first, lm_last_rs=last, pt_rs=pt, total_rs=first + last + pt)


def _slabs_from_doc(doc) -> tuple[tuple[float, int], ...]:
    out = []
    for upper, fare in doc:
        if upper is None or (isinstance(upper, str) and upper.lower() in ("inf", "infinity")):
            upper = INF_KM
        out.append((float(upper), int(fare)))
    return tuple(out)


def load_fare_config(source: str | Path | IO[str]) -> FareConfig:
    """Read a FareConfig from a JSON document; absent keys keep defaults."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(source)
    defaults = FareConfig()
    slabs = dict(defaults.pt_slabs)
    for mode, mode_slabs in doc.get("pt_slabs", {}).items():
        slabs[mode] = _slabs_from_doc(mode_slabs)
    return FareConfig(
        lm_base_rs=int(doc.get("lm_base_rs", defaults.lm_base_rs)),
        lm_per_km_rs=int(doc.get("lm_per_km_rs", defaults.lm_per_km_rs)),
        walk_free_km=float(doc.get("walk_free_km", defaults.walk_free_km)),
        pt_slabs=slabs,
        fare_per_boarding=bool(doc.get("fare_per_boarding", defaults.fare_per_boarding)),
    )


def fare_config_to_doc(config: FareConfig) -> dict:
    """JSON-ready view of a FareConfig; inverse of load_fare_config."""
    return {
        "lm_base_rs": config.lm_base_rs,
        "lm_per_km_rs": config.lm_per_km_rs,
        "walk_free_km": config.walk_free_km,
        "pt_slabs": {
            mode: [[None if math.isinf(u) else u, f] for u, f in slabs]
            for mode, slabs in config.pt_slabs.items()
        },
        "fare_per_boarding": config.fare_per_boarding,
    }
