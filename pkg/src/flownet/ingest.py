"""CSV readers/writers for countries, flows, airports and routes, plus
country-level coarse-graining of the airport route network.

All files are UTF-8, comma-delimited, with a header row.  Row numbers in
error messages are 1-based file lines (the header is line 1).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import FlowNetError, ParseError
from .model import (
    CountryRecord,
    CountryRegistry,
    FlowNetwork,
    InfrastructureNetwork,
    NetworkSnapshot,
    aggregate_years,
)

COUNTRY_COLUMNS = ("code", "name", "lat", "lon", "population")
FLOW_COLUMNS = ("origin", "destination", "year", "tourists")
AIRPORT_COLUMNS = ("airport_id", "country_code", "lat", "lon")
ROUTE_COLUMNS = ("source_airport", "destination_airport")


@dataclass(frozen=True)
class AirportRecord:
    airport_id: str
    country_code: str
    lat: float
    lon: float


@dataclass(frozen=True)
class RouteRecord:
    source_airport: str
    destination_airport: str


def _rows(path, columns: tuple[str, ...]) -> Iterator[tuple[int, dict[str, str]]]:
    path = Path(path)
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, None, f"cannot open file: {exc.strerror}") from None
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in columns if c not in header]
        if missing:
            raise ParseError(path, 1, f"missing column(s): {', '.join(missing)}")
        for row in reader:
            if None in row or any(row[c] is None for c in columns):
                raise ParseError(path, reader.line_num, "wrong number of fields")
            yield reader.line_num, {c: row[c].strip() for c in columns}


def _float(path, line, name, text) -> float:
    try:
        val = float(text)
    except ValueError:
        raise ParseError(path, line, f"{name} is not a number: {text!r}") from None
    if not math.isfinite(val):
        raise ParseError(path, line, f"{name} is not finite: {text!r}")
    return val


def _number(text: str) -> int | float:
    try:
        return int(text)
    except ValueError:
        return float(text)


def load_countries(path) -> CountryRegistry:
    registry = CountryRegistry()
    for line, row in _rows(path, COUNTRY_COLUMNS):
        lat = _float(path, line, "lat", row["lat"])
        lon = _float(path, line, "lon", row["lon"])
        pop = None
        if row["population"]:
            try:
                pop = int(row["population"])
            except ValueError:
                raise ParseError(path, line, f"population is not an integer: {row['population']!r}") from None
        try:
            registry.add(CountryRecord(row["code"], row["name"], lat, lon, pop))
        except FlowNetError as exc:
            raise ParseError(path, line, str(exc)) from None
    return registry


def load_flows(path, registry: CountryRegistry) -> FlowNetwork:
    net = FlowNetwork(registry.codes)
    for line, row in _rows(path, FLOW_COLUMNS):
        try:
            year = int(row["year"])
        except ValueError:
            raise ParseError(path, line, f"year is not an integer: {row['year']!r}") from None
        try:
            tourists = _number(row["tourists"])
        except ValueError:
            raise ParseError(path, line, f"tourists is not a number: {row['tourists']!r}") from None
        try:
            net.add_flow(row["origin"], row["destination"], year, tourists)
        except FlowNetError as exc:
            raise ParseError(path, line, str(exc)) from None
    return net


def load_airports(path, registry: CountryRegistry | None = None) -> list[AirportRecord]:
    airports = []
    seen = set()
    for line, row in _rows(path, AIRPORT_COLUMNS):
        aid = row["airport_id"]
        if aid in seen:
            raise ParseError(path, line, f"duplicate airport id {aid!r}")
        if registry is not None and row["country_code"] not in registry:
            raise ParseError(path, line, f"unknown country code {row['country_code']!r}")
        seen.add(aid)
        airports.append(
            AirportRecord(
                aid,
                row["country_code"],
                _float(path, line, "lat", row["lat"]),
                _float(path, line, "lon", row["lon"]),
            )
        )
    return airports


def load_routes(path) -> list[RouteRecord]:
    return [
        RouteRecord(row["source_airport"], row["destination_airport"])
        for _, row in _rows(path, ROUTE_COLUMNS)
    ]


def coarse_grain(
    airports: Iterable[AirportRecord],
    routes: Iterable[RouteRecord],
    nodes: Iterable[str] = (),
) -> InfrastructureNetwork:
    """Collapse airports to their countries and routes to undirected country links.

    Intra-country routes are dropped.  ``nodes`` adds countries that own no
    airport, so they appear as isolated nodes.
    """
    owner = {a.airport_id: a.country_code for a in airports}
    node_set = set(nodes) | set(owner.values())
    edges = set()
    for i, r in enumerate(routes):
        try:
            a, b = owner[r.source_airport], owner[r.destination_airport]
        except KeyError as exc:
            raise ParseError("routes", i + 2, f"unresolvable airport {exc.args[0]!r}") from None
        if a != b:
            edges.add(frozenset((a, b)))
    return InfrastructureNetwork(frozenset(node_set), frozenset(edges))


def _write(path, columns, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)


def write_countries(registry: CountryRegistry, path) -> None:
    _write(
        path,
        COUNTRY_COLUMNS,
        (
            (r.code, r.name, repr(r.centroid_lat), repr(r.centroid_lon),
             "" if r.population is None else r.population)
            for r in registry.values()
        ),
    )


def write_flows(net: FlowNetwork, path) -> None:
    rows = []
    for (o, d), per_year in sorted(net.edges.items()):
        for year in sorted(per_year):
            rows.append((o, d, year, repr(per_year[year])))
    _write(path, FLOW_COLUMNS, rows)


def write_airports(airports: Iterable[AirportRecord], path) -> None:
    _write(path, AIRPORT_COLUMNS,
           ((a.airport_id, a.country_code, repr(a.lat), repr(a.lon)) for a in airports))


def write_routes(routes: Iterable[RouteRecord], path) -> None:
    _write(path, ROUTE_COLUMNS, ((r.source_airport, r.destination_airport) for r in routes))


def write_snapshot(snapshot: NetworkSnapshot, path) -> None:
    """Write aggregated weights as a flows file, all dated at the range start."""
    year = snapshot.year_range[0] if snapshot.year_range else 0
    _write(
        path,
        FLOW_COLUMNS,
        ((o, d, year, repr(w)) for (o, d), w in snapshot.weights.items()),
    )


def read_snapshot(path, registry: CountryRegistry, year_range: tuple[int, int] | None) -> NetworkSnapshot:
    """Inverse of :func:`write_snapshot`."""
    net = load_flows(path, registry)
    if year_range is None:
        snap = aggregate_years(net, 0, 0)
        return NetworkSnapshot(snap.nodes, snap.weights, None, net)
    return aggregate_years(net, *year_range)
