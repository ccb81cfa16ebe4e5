"""Cruise fuel-burn model and edge weighting.

Per edge, the burn is assembled from clean drag at the edge's mean altitude,
thrust required against the climb component of weight, thrust-specific fuel
consumption, and traversal time at constant true airspeed:

    D     = 1/2 * rho * V^2 * S * C_D          [N]
    T_req = max(0, D + m * g * sin(gamma))     [N]
    W_f   = T_req * TSFC                       [kg/s]
    W_e   = W_f * d_e / V_e                    [kg]

All computation is SI; aircraft configuration files use aviation units
(mph, feet) which are converted once at load time.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .meshgrid import LayeredDag
from .routes import Waypoint, node_distance
from .units import STANDARD_GRAVITY, ft_to_m, km_to_m, mph_to_ms


@dataclass(frozen=True)
class AircraftModel:
    """Performance parameters of one airframe/engine pairing.

    ``mass_kg`` is the operating mass used in the weight term; it defaults to
    MTOW and is held constant over the flight (cruise-only model, no fuel
    depletion).
    """

    mtow_kg: float
    mlw_kg: float
    tas_ms: float
    drag_coefficient: float
    reference_area_m2: float
    tsfc_kg_per_n_s: float
    mass_kg: float

    def __post_init__(self):
        for name in (
            "mtow_kg",
            "mlw_kg",
            "tas_ms",
            "drag_coefficient",
            "reference_area_m2",
            "tsfc_kg_per_n_s",
            "mass_kg",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.mass_kg > self.mtow_kg:
            raise ValueError("operating mass exceeds MTOW")
        if self.mlw_kg > self.mtow_kg:
            raise ValueError("MLW exceeds MTOW")


def aircraft_from_config(doc: dict) -> AircraftModel:
    """Build an :class:`AircraftModel` from a unit-annotated JSON object."""
    mtow = float(doc["mtow_kg"])
    return AircraftModel(
        mtow_kg=mtow,
        mlw_kg=float(doc["mlw_kg"]),
        tas_ms=mph_to_ms(float(doc["tas_mph"])),
        drag_coefficient=float(doc["drag_coefficient"]),
        reference_area_m2=float(doc["reference_area_m2"]),
        tsfc_kg_per_n_s=float(doc["tsfc_kg_per_n_s"]),
        mass_kg=float(doc.get("mass_kg", mtow)),
    )


def load_aircraft(path: str | Path | None = None) -> AircraftModel:
    """Load an aircraft configuration file; None loads the packaged default."""
    if path is None:
        text = resources.files("qroute").joinpath("data/aircraft_a320.json").read_text()
    else:
        text = Path(path).read_text(encoding="utf-8")
    return aircraft_from_config(json.loads(text))


@dataclass(frozen=True)
class AtmosphereModel:
    """Troposphere density model rho = rho0 * (1 - c*h)^k, h in meters."""

    sea_level_density: float = 1.225
    lapse_coefficient: float = 2.25577e-5
    lapse_exponent: float = 4.25588


ISA = AtmosphereModel()

MAX_MODEL_ALTITUDE_M = 20_000.0


@dataclass(frozen=True)
class EdgeFuelBreakdown:
    """Intermediate quantities of one edge's fuel computation (SI units)."""

    distance_m: float
    drag_n: float
    thrust_n: float
    fuel_flow_kg_s: float
    fuel_kg: float
    path_angle_rad: float


def air_density(altitude_m: float, atmosphere: AtmosphereModel = ISA) -> float:
    """Air density in kg/m^3 at a geometric altitude in meters."""
    if not 0.0 <= altitude_m <= MAX_MODEL_ALTITUDE_M:
        raise ValueError(
            f"altitude {altitude_m} m outside [0, {MAX_MODEL_ALTITUDE_M}] m"
        )
    base = 1.0 - atmosphere.lapse_coefficient * altitude_m
    return atmosphere.sea_level_density * base**atmosphere.lapse_exponent


def drag(density: float, tas_ms: float, area_m2: float, drag_coefficient: float) -> float:
    """Clean drag in newtons."""
    return 0.5 * density * tas_ms * tas_ms * area_m2 * drag_coefficient


def thrust_required(drag_n: float, mass_kg: float, gamma_rad: float) -> float:
    """Drag plus the along-path weight component, clamped at zero."""
    return max(0.0, drag_n + mass_kg * STANDARD_GRAVITY * math.sin(gamma_rad))


def fuel_flow_cruise(thrust_n: float, tsfc_kg_per_n_s: float) -> float:
    """Fuel mass flow in kg/s for the required thrust."""
    return thrust_n * tsfc_kg_per_n_s


def edge_fuel(fuel_flow_kg_s: float, distance_m: float, velocity_ms: float) -> float:
    """Fuel burned traversing a distance at a given speed."""
    if velocity_ms <= 0:
        raise ValueError("velocity must be positive")
    return fuel_flow_kg_s * distance_m / velocity_ms


def edge_breakdown(
    a: Waypoint,
    b: Waypoint,
    aircraft: AircraftModel,
    atmosphere: AtmosphereModel = ISA,
) -> EdgeFuelBreakdown:
    """Full fuel computation for the directed edge a -> b.

    The path angle comes from the altitude change over the horizontal chord
    at the edge's mean altitude; density is evaluated at that mean altitude.
    """
    distance_m = km_to_m(node_distance(a, b))
    mean_alt_ft = (a.alt_ft + b.alt_ft) / 2.0
    level_a = Waypoint(a.lat, a.lon, mean_alt_ft)
    level_b = Waypoint(b.lat, b.lon, mean_alt_ft)
    horizontal_m = km_to_m(node_distance(level_a, level_b))
    delta_alt_m = ft_to_m(b.alt_ft - a.alt_ft)
    gamma = math.atan2(delta_alt_m, horizontal_m)

    rho = air_density(ft_to_m(mean_alt_ft), atmosphere)
    d = drag(rho, aircraft.tas_ms, aircraft.reference_area_m2, aircraft.drag_coefficient)
    t_req = thrust_required(d, aircraft.mass_kg, gamma)
    w_f = fuel_flow_cruise(t_req, aircraft.tsfc_kg_per_n_s)
    w_e = edge_fuel(w_f, distance_m, aircraft.tas_ms)
    return EdgeFuelBreakdown(
        distance_m=distance_m,
        drag_n=d,
        thrust_n=t_req,
        fuel_flow_kg_s=w_f,
        fuel_kg=w_e,
        path_angle_rad=gamma,
    )


def weigh_edges(
    dag: LayeredDag,
    aircraft: AircraftModel,
    atmosphere: AtmosphereModel = ISA,
) -> LayeredDag:
    """Return the graph with every edge weighted by its fuel burn in kg."""
    weights = tuple(
        edge_breakdown(dag.coords[u], dag.coords[v], aircraft, atmosphere).fuel_kg
        for u, v in dag.edges
    )
    return replace(dag, weights=weights)
