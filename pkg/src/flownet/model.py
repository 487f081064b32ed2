"""Core graph data structures: countries, yearly flow networks, infrastructure graphs.

A :class:`FlowNetwork` holds raw per-year tourist counts and is the only
mutable type; it is filled during ingestion.  Analyses run on an immutable
:class:`NetworkSnapshot` obtained with :func:`aggregate_years`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import InvalidArgumentError, NotFoundError

Edge = tuple[str, str]


def _check_lat_lon(lat: float, lon: float) -> None:
    if not (math.isfinite(lat) and -90.0 <= lat <= 90.0):
        raise InvalidArgumentError(f"latitude {lat} outside [-90, 90]")
    if not (math.isfinite(lon) and -180.0 < lon <= 180.0):
        raise InvalidArgumentError(f"longitude {lon} outside (-180, 180]")


@dataclass(frozen=True)
class CountryRecord:
    code: str
    name: str
    centroid_lat: float
    centroid_lon: float
    population: int | None = None

    def __post_init__(self):
        if not self.code:
            raise InvalidArgumentError("country code must be non-empty")
        _check_lat_lon(self.centroid_lat, self.centroid_lon)
        if self.population is not None and self.population < 1:
            raise InvalidArgumentError(
                f"population of {self.code} must be >= 1, got {self.population}"
            )

    @property
    def centroid(self) -> tuple[float, float]:
        return (self.centroid_lat, self.centroid_lon)


class CountryRegistry(Mapping[str, CountryRecord]):
    """Ordered, code-unique collection of countries; the node universe."""

    def __init__(self, records: Iterable[CountryRecord] = ()):
        self._records: dict[str, CountryRecord] = {}
        for rec in records:
            self.add(rec)

    def add(self, record: CountryRecord) -> None:
        if record.code in self._records:
            raise InvalidArgumentError(f"duplicate country code {record.code!r}")
        self._records[record.code] = record

    def __getitem__(self, code: str) -> CountryRecord:
        try:
            return self._records[code]
        except KeyError:
            raise NotFoundError(f"unknown country code {code!r}") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def __repr__(self) -> str:
        return f"CountryRegistry({len(self)} countries)"

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(self._records)


class FlowNetwork:
    """Directed multi-year flow network: ``(origin, destination) -> {year: tourists}``.

    Zero flows are represented by absent entries; every stored count is > 0.
    """

    def __init__(self, nodes: Iterable[str] = ()):
        self._nodes: set[str] = set(nodes)
        self._edges: dict[Edge, dict[int, float]] = {}

    def add_node(self, code: str) -> None:
        self._nodes.add(code)

    def add_flow(self, origin: str, destination: str, year: int, tourists: float) -> None:
        if origin == destination:
            raise InvalidArgumentError(f"self-loop {origin}->{destination} not allowed")
        for code in (origin, destination):
            if code not in self._nodes:
                raise NotFoundError(f"unknown country code {code!r}")
        if not (tourists > 0) or not math.isfinite(tourists):
            raise InvalidArgumentError(
                f"flow {origin}->{destination} in {year} must be positive, got {tourists}"
            )
        years = self._edges.setdefault((origin, destination), {})
        if year in years:
            raise InvalidArgumentError(
                f"duplicate flow {origin}->{destination} for year {year}"
            )
        years[year] = tourists

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(self._nodes)

    @property
    def edges(self) -> Mapping[Edge, Mapping[int, float]]:
        return MappingProxyType(self._edges)

    def flow(self, origin: str, destination: str, year: int) -> float:
        """Tourists from origin to destination in one year; 0 when absent."""
        return self._edges.get((origin, destination), {}).get(year, 0)

    def years(self) -> list[int]:
        return sorted({y for per_year in self._edges.values() for y in per_year})

    def __repr__(self) -> str:
        return f"FlowNetwork({len(self._nodes)} nodes, {len(self._edges)} edges)"


@dataclass(frozen=True)
class InfrastructureNetwork:
    """Undirected, loop-free country graph; edges are 2-element frozensets."""

    nodes: frozenset[str]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise InvalidArgumentError(f"edge {set(e)} is not a pair of distinct nodes")
            if not e <= self.nodes:
                raise InvalidArgumentError(f"edge {sorted(e)} references unknown node")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]], nodes: Iterable[str] = ()):
        node_set = set(nodes)
        edges = set()
        for a, b in pairs:
            if a == b:
                raise InvalidArgumentError(f"self-loop {a}-{b} not allowed")
            node_set.update((a, b))
            edges.add(frozenset((a, b)))
        return cls(frozenset(node_set), frozenset(edges))

    @cached_property
    def adjacency(self) -> Mapping[str, frozenset[str]]:
        adj: dict[str, set[str]] = {n: set() for n in self.nodes}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return MappingProxyType({n: frozenset(v) for n, v in adj.items()})

    def has_edge(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


@dataclass(frozen=True, eq=False)
class NetworkSnapshot:
    """Immutable weighted digraph over a fixed node set.

    ``nodes`` is sorted; ``weights`` maps directed edges to positive weights.
    Snapshots compare equal when nodes, weights and year range agree.
    """

    nodes: tuple[str, ...]
    weights: Mapping[Edge, float]
    year_range: tuple[int, int] | None = None
    base: FlowNetwork | None = field(default=None, repr=False)

    def __post_init__(self):
        nodes = tuple(sorted(set(self.nodes)))
        node_set = set(nodes)
        weights = {}
        for (o, d), w in self.weights.items():
            if o == d:
                raise InvalidArgumentError(f"self-loop {o}->{d} not allowed")
            if o not in node_set or d not in node_set:
                raise InvalidArgumentError(f"edge {o}->{d} references unknown node")
            if not (w > 0) or not math.isfinite(w):
                raise InvalidArgumentError(f"edge {o}->{d} has non-positive weight {w}")
            weights[(o, d)] = w
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", MappingProxyType(dict(sorted(weights.items()))))

    @classmethod
    def from_edges(cls, nodes: Iterable[str], weights: Mapping[Edge, float] | Iterable[Edge]):
        """Build a snapshot from a weight map, or from bare edges with unit weights."""
        if not isinstance(weights, Mapping):
            weights = {e: 1 for e in weights}
        return cls(tuple(nodes), weights)

    def __eq__(self, other):
        if not isinstance(other, NetworkSnapshot):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and dict(self.weights) == dict(other.weights)
            and self.year_range == other.year_range
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"NetworkSnapshot(N={self.n_nodes}, L={self.n_edges}, years={self.year_range})"

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.weights)

    @cached_property
    def index(self) -> Mapping[str, int]:
        return MappingProxyType({n: i for i, n in enumerate(self.nodes)})

    @cached_property
    def successors(self) -> Mapping[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {n: [] for n in self.nodes}
        for o, d in self.weights:
            out[o].append(d)
        return MappingProxyType({n: tuple(v) for n, v in out.items()})

    @cached_property
    def predecessors(self) -> Mapping[str, tuple[str, ...]]:
        inn: dict[str, list[str]] = {n: [] for n in self.nodes}
        for o, d in self.weights:
            inn[d].append(o)
        return MappingProxyType({n: tuple(sorted(v)) for n, v in inn.items()})

    def has_edge(self, origin: str, destination: str) -> bool:
        return (origin, destination) in self.weights

    def out_strength(self, node: str) -> float:
        return math.fsum(self.weights[(node, d)] for d in self.successors[node])

    def in_strength(self, node: str) -> float:
        return math.fsum(self.weights[(o, node)] for o in self.predecessors[node])

    def adjacency_matrix(self, weighted: bool = False) -> np.ndarray:
        """Dense matrix in ``nodes`` order; int 0/1 unless ``weighted``."""
        n = self.n_nodes
        mat = np.zeros((n, n), dtype=float if weighted else np.int64)
        idx = self.index
        for (o, d), w in self.weights.items():
            mat[idx[o], idx[d]] = w if weighted else 1
        return mat

    def with_weights(self, weights: Mapping[Edge, float]) -> "NetworkSnapshot":
        return NetworkSnapshot(self.nodes, weights, self.year_range, self.base)


def aggregate_years(net: FlowNetwork, start: int, end: int) -> NetworkSnapshot:
    """Sum per-year flows over the inclusive range ``[start, end]``.

    Edges without any in-range flow are dropped; the node set is kept whole.
    """
    if start > end:
        raise InvalidArgumentError(f"empty year range [{start}, {end}]")
    weights = {}
    for edge, per_year in net.edges.items():
        vals = [per_year[y] for y in sorted(per_year) if start <= y <= end]
        if vals:
            ints = all(isinstance(v, int) for v in vals)
            weights[edge] = sum(vals) if ints else math.fsum(vals)
    return NetworkSnapshot(tuple(net.nodes), weights, (start, end), net)


def degree(snapshot: NetworkSnapshot, node: str, direction: str) -> int:
    """Number of distinct in- or out-neighbours of ``node``."""
    if node not in snapshot.index:
        raise NotFoundError(f"unknown node {node!r}")
    if direction == "out":
        return len(snapshot.successors[node])
    if direction == "in":
        return len(snapshot.predecessors[node])
    raise InvalidArgumentError(f"direction must be 'in' or 'out', got {direction!r}")
