"""Great-circle distances between centroids and fixed-width distance bins."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError

EARTH_RADIUS_KM = 6371.0


def _validate(point: tuple[float, float]) -> tuple[float, float]:
    lat, lon = point
    if not (math.isfinite(lat) and -90.0 <= lat <= 90.0):
        raise InvalidArgumentError(f"latitude {lat} outside [-90, 90]")
    if not (math.isfinite(lon) and -180.0 < lon <= 180.0):
        raise InvalidArgumentError(f"longitude {lon} outside (-180, 180]")
    return lat, lon


def haversine_km(
    a: tuple[float, float], b: tuple[float, float], radius_km: float = EARTH_RADIUS_KM
) -> float:
    """Great-circle distance between two ``(lat, lon)`` points in degrees."""
    lat1, lon1 = _validate(a)
    lat2, lon2 = _validate(b)
    if radius_km <= 0:
        raise InvalidArgumentError(f"radius must be positive, got {radius_km}")
    # Sort endpoints so the result is bit-identical under argument swap.
    (lat1, lon1), (lat2, lon2) = sorted([(lat1, lon1), (lat2, lon2)])
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlam = math.radians(lon2 - lon1)
    h = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    return 2 * radius_km * math.asin(min(1.0, math.sqrt(h)))


@dataclass(frozen=True)
class GeoBinning:
    """Half-open bins ``(k*width, (k+1)*width]`` for k = 0, 1, ..."""

    width_km: float = 1000.0

    def __post_init__(self):
        if not (self.width_km > 0) or not math.isfinite(self.width_km):
            raise InvalidArgumentError(f"bin width must be positive, got {self.width_km}")

    def interval(self, k: int) -> tuple[float, float]:
        return (k * self.width_km, (k + 1) * self.width_km)

    def label(self, k: int) -> str:
        lo, hi = self.interval(k)
        return f"({lo:g},{hi:g}]"


def geo_bin(d_km: float, binning: GeoBinning = GeoBinning()) -> int:
    if not (d_km > 0) or not math.isfinite(d_km):
        raise InvalidArgumentError(f"distance must be positive, got {d_km}")
    w = binning.width_km
    k = max(0, math.ceil(d_km / w) - 1)
    # Guard against rounding in the division near bin edges.
    if k > 0 and d_km <= k * w:
        k -= 1
    elif d_km > (k + 1) * w:
        k += 1
    return k
