"""Flight route ingestion, route geometry, and midpoint densification.

Routes are read from local JSON documents that stand in for a flight-plan
database lookup: each document carries the origin/destination airport codes,
the filed waypoint list, and the cruise ceiling. A small client interface
(:class:`RouteClient` / :class:`FileRouteClient`) wraps the lookup so callers
never depend on where documents come from.

Distances are 3D chords through a spherical Earth: waypoints are converted to
Earth-centered Cartesian coordinates (radius 6371 km plus altitude) and
separated with the Euclidean norm.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Protocol

from .units import EARTH_RADIUS_KM, ft_to_km


class RouteFormatError(ValueError):
    """A route document is malformed (bad JSON, missing or mistyped keys)."""


class RouteValidationError(ValueError):
    """A parsed route violates coordinate ranges or ordering rules."""


@dataclass(frozen=True)
class Waypoint:
    """A geodetic fix: latitude/longitude in degrees, altitude in feet."""

    lat: float
    lon: float
    alt_ft: float = 0.0

    def __post_init__(self):
        if not -90.0 <= self.lat <= 90.0:
            raise RouteValidationError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 < self.lon <= 180.0:
            raise RouteValidationError(f"longitude {self.lon} outside (-180, 180]")
        if self.alt_ft < 0.0:
            raise RouteValidationError(f"altitude {self.alt_ft} ft is negative")


@dataclass(frozen=True)
class Route:
    """An ordered waypoint sequence between two airports.

    The first waypoint is the origin, the last the destination, and
    consecutive waypoints are distinct in (lat, lon).
    """

    origin: str
    destination: str
    max_altitude_ft: float
    waypoints: tuple[Waypoint, ...]

    def __post_init__(self):
        if len(self.waypoints) < 2:
            raise RouteValidationError("route needs at least 2 waypoints")
        if self.max_altitude_ft < 0.0:
            raise RouteValidationError("max altitude is negative")
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if a.lat == b.lat and a.lon == b.lon:
                raise RouteValidationError(
                    f"consecutive waypoints share position ({a.lat}, {a.lon})"
                )

    def __len__(self) -> int:
        return len(self.waypoints)


def _require(doc: dict, key: str, kind) -> object:
    if key not in doc:
        raise RouteFormatError(f"route document missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise RouteFormatError(f"route document key {key!r} has wrong type")
    return value


def load_route(doc: dict) -> Route:
    """Build a validated :class:`Route` from a parsed route document."""
    if not isinstance(doc, dict):
        raise RouteFormatError("route document is not a JSON object")
    origin = _require(doc, "origin", str)
    destination = _require(doc, "destination", str)
    max_alt = float(_require(doc, "max_altitude_ft", (int, float)))
    raw_points = _require(doc, "waypoints", list)
    waypoints = []
    for i, entry in enumerate(raw_points):
        if not isinstance(entry, dict):
            raise RouteFormatError(f"waypoint {i} is not an object")
        try:
            lat = float(entry["lat"])
            lon = float(entry["lon"])
            alt = float(entry.get("alt_ft", 0.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise RouteFormatError(f"waypoint {i} is malformed: {exc}") from exc
        waypoints.append(Waypoint(lat, lon, alt))
    return Route(origin, destination, max_alt, tuple(waypoints))


def load_route_file(path: str | Path) -> Route:
    """Read and parse a route document from disk."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RouteFormatError(f"{path}: invalid JSON: {exc}") from exc
    return load_route(doc)


def route_to_document(route: Route) -> dict:
    """Serialize a route back to the document format (load round-trips)."""
    return {
        "origin": route.origin,
        "destination": route.destination,
        "max_altitude_ft": route.max_altitude_ft,
        "waypoints": [
            {"lat": w.lat, "lon": w.lon, "alt_ft": w.alt_ft} for w in route.waypoints
        ],
    }


class RouteClient(Protocol):
    """Lookup interface for flight routes between airport pairs."""

    def fetch_route(self, origin: str, destination: str) -> Route: ...


class FileRouteClient:
    """Route lookup backed by a directory of ``{ORIGIN}_{DEST}.json`` files."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def fetch_route(self, origin: str, destination: str) -> Route:
        path = self.directory / f"{origin}_{destination}.json"
        if not path.exists():
            raise FileNotFoundError(f"no route document for {origin}-{destination}")
        return load_route_file(path)


def _ecef_km(w: Waypoint) -> tuple[float, float, float]:
    # Spherical Earth; altitude extends the radius.
    r = EARTH_RADIUS_KM + ft_to_km(w.alt_ft)
    lat = math.radians(w.lat)
    lon = math.radians(w.lon)
    cos_lat = math.cos(lat)
    return (r * cos_lat * math.cos(lon), r * cos_lat * math.sin(lon), r * math.sin(lat))


def node_distance(a: Waypoint, b: Waypoint) -> float:
    """3D chord distance between two waypoints, in kilometers."""
    ax, ay, az = _ecef_km(a)
    bx, by, bz = _ecef_km(b)
    return math.sqrt((ax - bx) ** 2 + (ay - by) ** 2 + (az - bz) ** 2)


def route_length_km(route: Route) -> float:
    """Sum of chord distances over consecutive waypoints."""
    pts = route.waypoints
    return sum(node_distance(a, b) for a, b in zip(pts, pts[1:]))


def _segment_midpoint(a: Waypoint, b: Waypoint) -> Waypoint:
    return Waypoint(
        lat=(a.lat + b.lat) / 2.0,
        lon=(a.lon + b.lon) / 2.0,
        alt_ft=(a.alt_ft + b.alt_ft) / 2.0,
    )


def insert_midpoints(route: Route, count: int) -> Route:
    """Densify a route by splitting its widest segments at their midpoint.

    Each of the ``count`` insertions bisects the currently longest segment
    (ties go to the earlier segment), so the extra points spread evenly over
    the widest gaps. Endpoints are preserved and the result has exactly
    ``len(route) + count`` waypoints.
    """
    if count < 0:
        raise ValueError("midpoint count must be non-negative")
    if count == 0:
        return route
    points = list(route.waypoints)
    for _ in range(count):
        gaps = [node_distance(a, b) for a, b in zip(points, points[1:])]
        widest = max(range(len(gaps)), key=lambda i: (gaps[i], -i))
        points.insert(widest + 1, _segment_midpoint(points[widest], points[widest + 1]))
    return replace(route, waypoints=tuple(points))
