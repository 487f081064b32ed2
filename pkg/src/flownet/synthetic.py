"""Seeded synthetic datasets that stand in for the real arrivals and route data.

Flows follow a gravity-like rule: the chance that a link exists and its
volume both decay with centroid distance and grow with population.  The
route network joins every country to its nearest neighbours plus a few
hub countries, so most countries are a few hops apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geodesy import haversine_km
from .ingest import AirportRecord, RouteRecord
from .model import CountryRecord, CountryRegistry, FlowNetwork

YEARS = (2004, 2005, 2006, 2007, 2008)


@dataclass
class Dataset:
    registry: CountryRegistry
    flows: FlowNetwork
    airports: list[AirportRecord]
    routes: list[RouteRecord]


def random_registry(n: int, seed: int) -> CountryRegistry:
    rng = np.random.Generator(np.random.PCG64(seed))
    width = len(str(n - 1))
    records = []
    for i in range(n):
        # uniform on the sphere, clipped away from the poles
        lat = float(np.degrees(np.arcsin(rng.uniform(-0.85, 0.95))))
        lon = float(rng.uniform(-179.9, 180.0))
        pop = int(10 ** rng.uniform(4.5, 8.5))
        records.append(CountryRecord(f"C{i:0{width}d}", f"Country {i}", round(lat, 4), round(lon, 4), pop))
    return CountryRegistry(records)


def _distances(registry: CountryRegistry) -> np.ndarray:
    recs = list(registry.values())
    n = len(recs)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = haversine_km(recs[i].centroid, recs[j].centroid)
    return D


def gravity_flows(
    registry: CountryRegistry,
    n_links: int,
    seed: int,
    years: tuple[int, ...] = YEARS,
    decay_km: float = 2500.0,
) -> FlowNetwork:
    """Draw ``n_links`` directed links without replacement, favouring near
    and populous pairs, and give each a yearly tourist count."""
    rng = np.random.Generator(np.random.PCG64(seed))
    codes = list(registry.codes)
    n = len(codes)
    pops = np.array([registry[c].population or 1 for c in codes], dtype=float)
    D = _distances(registry)
    score = np.outer(np.sqrt(pops), pops ** 0.25) * np.exp(-D / decay_km)
    np.fill_diagonal(score, 0.0)
    p = (score / score.sum()).ravel()
    # mix in a uniform component so distant links still occur
    p = 0.7 * p + 0.3 * (1.0 - np.eye(n)).ravel() / (n * (n - 1))
    picks = rng.choice(n * n, size=n_links, replace=False, p=p)
    net = FlowNetwork(codes)
    for s in sorted(picks.tolist()):
        i, j = divmod(s, n)
        base = 5.0 + 2e-4 * math.sqrt(pops[i]) * pops[j] ** 0.25 * math.exp(-D[i, j] / decay_km) * rng.lognormal(0, 1)
        trend = rng.normal(0.03, 0.1)
        born = int(rng.choice(len(years), p=[0.8] + [0.2 / (len(years) - 1)] * (len(years) - 1)))
        for t, y in enumerate(years):
            if t < born:
                continue
            count = int(round(base * math.exp(trend * t) * rng.lognormal(0, 0.05)))
            if count > 0:
                net.add_flow(codes[i], codes[j], y, count)
    return net


def nearest_routes(
    registry: CountryRegistry,
    seed: int,
    k_nearest: int = 3,
    n_hubs: int = 8,
    hub_links: int = 12,
) -> tuple[list[AirportRecord], list[RouteRecord]]:
    """One or two airports per country; routes to near neighbours and hubs."""
    rng = np.random.Generator(np.random.PCG64(seed))
    codes = list(registry.codes)
    D = _distances(registry)
    airports = []
    by_country: dict[str, list[str]] = {}
    for c in codes:
        rec = registry[c]
        for a in range(1 + int(rng.random() < 0.3)):
            aid = f"{c}A{a}"
            airports.append(AirportRecord(aid, c, rec.centroid_lat, rec.centroid_lon))
            by_country.setdefault(c, []).append(aid)
    routes = []

    def link(i: int, j: int) -> None:
        a = by_country[codes[i]][int(rng.integers(len(by_country[codes[i]])))]
        b = by_country[codes[j]][int(rng.integers(len(by_country[codes[j]])))]
        routes.append(RouteRecord(a, b))

    n = len(codes)
    for i in range(n):
        for j in np.argsort(D[i])[1:k_nearest + 1].tolist():
            link(i, j)
    hubs = rng.choice(n, size=min(n_hubs, n), replace=False).tolist()
    for h in hubs:
        for j in rng.choice(n, size=min(hub_links, n), replace=False).tolist():
            if j != h:
                link(h, j)
    for a, b in zip(hubs, hubs[1:] + hubs[:1]):
        if a != b:
            link(a, b)
    return airports, routes


def synthetic_dataset(n_countries: int = 214, n_links: int = 4148, seed: int = 0) -> Dataset:
    registry = random_registry(n_countries, seed)
    flows = gravity_flows(registry, n_links, seed + 1)
    airports, routes = nearest_routes(registry, seed + 2)
    return Dataset(registry, flows, airports, routes)
