"""Hop-count (chemical) distances on the infrastructure graph and their
statistics over flow links."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import InvalidArgumentError, NotFoundError
from .model import InfrastructureNetwork, NetworkSnapshot


@dataclass(frozen=True)
class ChemicalDistanceMatrix:
    """All-pairs hop counts; unreachable pairs are absent (``get`` returns None)."""

    nodes: tuple[str, ...]
    _dist: Mapping[str, Mapping[str, int]] = field(repr=False)

    def get(self, a: str, b: str) -> int | None:
        if a not in self._dist:
            raise NotFoundError(f"node {a!r} not in distance matrix")
        if b not in self._dist:
            raise NotFoundError(f"node {b!r} not in distance matrix")
        return self._dist[a].get(b)

    def __contains__(self, node: str) -> bool:
        return node in self._dist

    def rows(self) -> Iterator[tuple[str, str, int | None]]:
        """All ordered pairs of distinct nodes in sorted order."""
        for a in self.nodes:
            row = self._dist[a]
            for b in self.nodes:
                if a != b:
                    yield a, b, row.get(b)

    def max_finite(self) -> int:
        return max((d for row in self._dist.values() for d in row.values()), default=0)


def _bfs(adj: Mapping[str, frozenset[str]], source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if v not in dist:
                dist[v] = du
                queue.append(v)
    return dist


def chemical_distances(infra: InfrastructureNetwork) -> ChemicalDistanceMatrix:
    adj = infra.adjacency
    nodes = tuple(sorted(infra.nodes))
    return ChemicalDistanceMatrix(nodes, {n: _bfs(adj, n) for n in nodes})


@dataclass(frozen=True)
class PathStats:
    mean: float | None
    std: float | None
    histogram: dict[int, float]
    n_reachable: int
    n_unreachable: int
    over: str
    weighted: bool

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std": self.std,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "n_reachable": self.n_reachable,
            "n_unreachable": self.n_unreachable,
            "over": self.over,
            "weighted": self.weighted,
        }


def flow_path_stats(
    snapshot: NetworkSnapshot,
    chem: ChemicalDistanceMatrix,
    *,
    over: str = "edges",
    weighted: bool = False,
) -> PathStats:
    """Mean and population std of hop counts over flow links.

    ``over="edges"`` averages over directed flow links; ``over="pairs"`` over
    all ordered pairs of distinct snapshot nodes.  With ``weighted`` each link
    counts in proportion to its flow (edges only).  Histogram values are
    counts, or total flow when weighted.
    """
    missing = [n for n in snapshot.nodes if n not in chem]
    if missing:
        raise InvalidArgumentError(f"snapshot node(s) missing from distance matrix: {missing[:5]}")
    if over == "edges":
        items = [(o, d, snapshot.weights[(o, d)] if weighted else 1) for o, d in snapshot.weights]
    elif over == "pairs":
        if weighted:
            raise InvalidArgumentError("weighted statistics are only defined over edges")
        items = [(a, b, 1) for a in snapshot.nodes for b in snapshot.nodes if a != b]
    else:
        raise InvalidArgumentError(f"over must be 'edges' or 'pairs', got {over!r}")

    hist: Counter = Counter()
    unreachable = 0
    for a, b, w in items:
        d = chem.get(a, b)
        if d is None:
            unreachable += 1
        else:
            hist[d] += w
    total = math.fsum(hist.values())
    if total == 0:
        mean = std = None
    else:
        keys = sorted(hist)
        mean = math.fsum(k * hist[k] for k in keys) / total
        std = math.sqrt(math.fsum(hist[k] * (k - mean) ** 2 for k in keys) / total)
    return PathStats(
        mean,
        std,
        dict(sorted(hist.items())),
        len(items) - unreachable,
        unreachable,
        over,
        weighted,
    )
