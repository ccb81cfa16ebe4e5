"""Unit conversions and physical constants shared across the package.

All internal physics is SI (meters, seconds, kilograms, newtons); route
geometry keeps the aviation-native units (degrees, feet, kilometers) at the
boundaries and converts here.
"""

EARTH_RADIUS_KM = 6371.0

STANDARD_GRAVITY = 9.80665  # m/s^2

FT_PER_M = 1.0 / 0.3048
M_PER_FT = 0.3048
MPH_TO_MS = 0.44704


def ft_to_m(feet: float) -> float:
    return feet * M_PER_FT


def m_to_ft(meters: float) -> float:
    return meters * FT_PER_M


def ft_to_km(feet: float) -> float:
    return feet * M_PER_FT / 1000.0


def mph_to_ms(mph: float) -> float:
    return mph * MPH_TO_MS


def km_to_m(km: float) -> float:
    return km * 1000.0
