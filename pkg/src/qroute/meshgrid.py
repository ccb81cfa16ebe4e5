"""Layered route-graph construction.

A base route is lifted to 3D with a trapezoidal altitude profile, jittered
into alternative paths on a (lat, lon, alt) step grid, and assembled into a
layered DAG: layer 0 is the origin, the final layer the destination, and each
interior layer holds the original point plus its perturbed copies. Every node
connects to every node of the next layer, so the graph is acyclic by
construction and all origin-to-destination paths have the same edge count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .routes import Route, Waypoint


@dataclass(frozen=True)
class PerturbationSpec:
    """Grid steps and copy count for route jittering.

    Each interior point of each copy is displaced by -1, 0, or +1 grid steps
    per axis, drawn from the seeded RNG. Endpoints stay fixed.
    """

    lat_step_deg: float = 0.15
    lon_step_deg: float = 0.15
    alt_step_ft: float = 2000.0
    copies: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.copies < 1:
            raise ValueError("copies must be >= 1")
        if min(self.lat_step_deg, self.lon_step_deg, self.alt_step_ft) <= 0:
            raise ValueError("perturbation steps must be strictly positive")


@dataclass(frozen=True)
class AltitudeProfile:
    """Trapezoidal climb/cruise/descent shape over route fraction [0, 1]."""

    cruise_altitude_ft: float
    climb_fraction: float = 0.15
    descent_fraction: float = 0.85

    def __post_init__(self):
        if not 0.0 <= self.climb_fraction < 0.5:
            raise ValueError("climb_fraction must be in [0, 0.5)")
        if not 0.5 < self.descent_fraction <= 1.0:
            raise ValueError("descent_fraction must be in (0.5, 1]")


@dataclass(frozen=True)
class LayeredDag:
    """Layered DAG over geodetic nodes with optional fuel weights.

    ``layers`` lists node ids per layer (layer 0 = source, last = sink);
    ``coords[node_id]`` gives the node position; ``edges`` run only from one
    layer to the next. ``weights`` is parallel to ``edges`` and is None until
    the graph has been weighed.
    """

    layers: tuple[tuple[int, ...], ...]
    coords: tuple[Waypoint, ...]
    edges: tuple[tuple[int, int], ...]
    source: int
    sink: int
    weights: tuple[float, ...] | None = None

    @property
    def num_nodes(self) -> int:
        return len(self.coords)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def out_adjacency(self) -> list[list[tuple[int, float]]]:
        """Adjacency lists of (target, weight). Requires weights to be set."""
        if self.weights is None:
            raise ValueError("graph has no edge weights yet")
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.num_nodes)]
        for (u, v), w in zip(self.edges, self.weights):
            adj[u].append((v, w))
        return adj


def altitude_at(profile: AltitudeProfile, fraction: float) -> float:
    """Altitude in feet at a given route fraction.

    Zero at both ends, cruise altitude on the plateau, linear ramps between.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"route fraction {fraction} outside [0, 1]")
    cruise = profile.cruise_altitude_ft
    if fraction <= 0.0 or fraction >= 1.0:
        return 0.0
    if fraction < profile.climb_fraction:
        return cruise * fraction / profile.climb_fraction
    if fraction > profile.descent_fraction:
        return cruise * (1.0 - fraction) / (1.0 - profile.descent_fraction)
    return cruise


def apply_altitude_profile(route: Route, profile: AltitudeProfile | None = None) -> Route:
    """Assign profile altitudes to a route by cumulative ground distance."""
    from .routes import node_distance

    if profile is None:
        profile = AltitudeProfile(cruise_altitude_ft=route.max_altitude_ft)
    ground = [Waypoint(w.lat, w.lon, 0.0) for w in route.waypoints]
    cumulative = [0.0]
    for a, b in zip(ground, ground[1:]):
        cumulative.append(cumulative[-1] + node_distance(a, b))
    total = cumulative[-1]
    lifted = tuple(
        Waypoint(w.lat, w.lon, altitude_at(profile, d / total))
        for w, d in zip(route.waypoints, cumulative)
    )
    return replace(route, waypoints=lifted)


def _wrap_lon(lon: float) -> float:
    wrapped = (lon + 180.0) % 360.0 - 180.0
    return 180.0 if wrapped == -180.0 else wrapped


def _displaced_path(
    points: tuple[Waypoint, ...], draws: np.ndarray, spec: PerturbationSpec
) -> list[Waypoint]:
    """Apply per-axis integer step draws to the interior points of a path.

    ``draws`` has shape (len(points) - 2, 3) with entries in {-1, 0, +1}.
    Latitude clamps to its valid range, longitude wraps, altitude clamps at 0.
    """
    out = [points[0]]
    for w, (dlat, dlon, dalt) in zip(points[1:-1], draws):
        out.append(
            Waypoint(
                lat=min(90.0, max(-90.0, w.lat + dlat * spec.lat_step_deg)),
                lon=_wrap_lon(w.lon + dlon * spec.lon_step_deg),
                alt_ft=max(0.0, w.alt_ft + dalt * spec.alt_step_ft),
            )
        )
    out.append(points[-1])
    return out


def perturb_route(route: Route, spec: PerturbationSpec) -> list[list[Waypoint]]:
    """Generate ``spec.copies`` jittered variants of a route.

    Deterministic for a given seed; endpoints are never moved.
    """
    if len(route) < 3:
        raise ValueError("route must have at least one interior point to perturb")
    rng = np.random.default_rng(spec.seed)
    interior = len(route) - 2
    paths = []
    for _ in range(spec.copies):
        draws = rng.integers(-1, 2, size=(interior, 3))
        paths.append(_displaced_path(route.waypoints, draws, spec))
    return paths


def build_dag(
    original: list[Waypoint] | tuple[Waypoint, ...],
    perturbed: list[list[Waypoint]],
) -> LayeredDag:
    """Assemble the layered DAG of the original path and its variants.

    All paths must have the same length and shared endpoints. Interior layer
    k holds the k-th point of the original path (listed first) and of each
    perturbed path; adjacent layers are completely connected. Edge weights
    are left unset.
    """
    total = len(original)
    if total < 3:
        raise ValueError("paths must have at least 3 points")
    for i, path in enumerate(perturbed):
        if len(path) != total:
            raise ValueError(f"perturbed path {i} has length {len(path)} != {total}")

    coords: list[Waypoint] = [original[0]]
    layers: list[tuple[int, ...]] = [(0,)]
    for k in range(1, total - 1):
        ids = []
        for path in [list(original)] + [list(p) for p in perturbed]:
            ids.append(len(coords))
            coords.append(path[k])
        layers.append(tuple(ids))
    sink = len(coords)
    coords.append(original[-1])
    layers.append((sink,))

    edges = [
        (u, v)
        for prev, nxt in zip(layers, layers[1:])
        for u in prev
        for v in nxt
    ]
    return LayeredDag(
        layers=tuple(layers),
        coords=tuple(coords),
        edges=tuple(edges),
        source=0,
        sink=sink,
    )


def structural_counts(total_layers: int, copies: int) -> tuple[int, int]:
    """Closed-form node and edge counts of the layered grid.

    ``total_layers`` is the path length (waypoints plus midpoints) and
    ``copies`` the number of perturbed paths.
    """
    if total_layers < 3:
        raise ValueError("total_layers must be >= 3")
    if copies < 0:
        raise ValueError("copies must be >= 0")
    width = copies + 1
    nodes = (total_layers - 2) * width + 2
    edges = 2 * width + (total_layers - 3) * width * width
    return nodes, edges


def density(dag: LayeredDag) -> float:
    """Edge count over the maximum possible ``V(V-1)/2`` for ``V`` nodes."""
    v = dag.num_nodes
    return dag.num_edges / (v * (v - 1) / 2.0)


def dag_to_dict(dag: LayeredDag) -> dict:
    """JSON-ready description: layers, node coordinates, edges, weights."""
    return {
        "source": dag.source,
        "sink": dag.sink,
        "layers": [list(layer) for layer in dag.layers],
        "nodes": [
            {"id": i, "lat": w.lat, "lon": w.lon, "alt_ft": w.alt_ft}
            for i, w in enumerate(dag.coords)
        ],
        "edges": [list(e) for e in dag.edges],
        "weights_kg": None if dag.weights is None else list(dag.weights),
        "density": density(dag),
    }


def dag_from_dict(doc: dict) -> LayeredDag:
    """Inverse of :func:`dag_to_dict`."""
    coords = tuple(
        Waypoint(n["lat"], n["lon"], n["alt_ft"])
        for n in sorted(doc["nodes"], key=lambda n: n["id"])
    )
    weights = doc.get("weights_kg")
    return LayeredDag(
        layers=tuple(tuple(layer) for layer in doc["layers"]),
        coords=coords,
        edges=tuple((u, v) for u, v in doc["edges"]),
        source=doc["source"],
        sink=doc["sink"],
        weights=None if weights is None else tuple(weights),
    )


def save_dag(dag: LayeredDag, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(dag_to_dict(dag), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_dag(path: str | Path) -> LayeredDag:
    return dag_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
