"""Degree-preserving rewiring, random reference graphs and null-model ensembles.

All randomness comes from ``numpy.random.Generator(PCG64(seed))`` so results
are reproducible across platforms for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import InvalidArgumentError, RewireError
from .metrics import (
    TRIANGLE_TYPES,
    clustering_suite,
    reciprocity_stats,
    triangle_census,
    triangle_summary,
)
from .model import InfrastructureNetwork, NetworkSnapshot

SWAPS_PER_EDGE = 10
ATTEMPTS_PER_SWAP = 50


def _rng(seed: int) -> np.random.Generator:
    if seed < 0:
        raise InvalidArgumentError(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def configuration_rewire(
    snapshot: NetworkSnapshot,
    seed: int,
    *,
    swaps_per_edge: int = SWAPS_PER_EDGE,
    weights: str = "shuffle",
) -> NetworkSnapshot:
    """Randomise links with directed double-edge swaps, keeping every node's
    in- and out-degree.

    A swap picks links a->b and c->d and replaces them by a->d and c->b; swaps
    that would create a self-loop or a duplicate link are rejected.  The chain
    runs until ``swaps_per_edge * L`` swaps were accepted, giving up after
    ``ATTEMPTS_PER_SWAP`` times as many attempts.

    ``weights="shuffle"`` redistributes the original weight multiset over the
    new links at random; ``weights="unit"`` drops weights (topology only).
    """
    if weights not in ("shuffle", "unit"):
        raise InvalidArgumentError(f"weights must be 'shuffle' or 'unit', got {weights!r}")
    L = snapshot.n_edges
    if L < 2:
        raise InvalidArgumentError(f"rewiring needs at least 2 links, got {L}")
    rng = _rng(seed)
    idx = snapshot.index
    n = snapshot.n_nodes
    src = [idx[o] for o, _ in snapshot.weights]
    dst = [idx[d] for _, d in snapshot.weights]
    present = {s * n + d for s, d in zip(src, dst)}

    target = swaps_per_edge * L
    budget = max(ATTEMPTS_PER_SWAP * target, 1000)
    accepted = attempts = 0
    while accepted < target:
        if attempts >= budget:
            raise RewireError(
                f"only {accepted} of {target} swaps accepted after {attempts} attempts", seed
            )
        batch = min(4 * (target - accepted) + 64, budget - attempts)
        picks = rng.integers(0, L, size=(batch, 2)).tolist()
        for i, j in picks:
            attempts += 1
            if i == j:
                continue
            a, b, c, d = src[i], dst[i], src[j], dst[j]
            if a == d or c == b:
                continue
            ad, cb = a * n + d, c * n + b
            if ad in present or cb in present:
                continue
            present.discard(a * n + b)
            present.discard(c * n + d)
            present.add(ad)
            present.add(cb)
            dst[i], dst[j] = d, b
            accepted += 1
            if accepted == target:
                break

    nodes = snapshot.nodes
    new_edges = [(nodes[s], nodes[d]) for s, d in zip(src, dst)]
    if weights == "unit":
        new_w = {e: 1 for e in new_edges}
    else:
        old = list(snapshot.weights.values())
        perm = rng.permutation(L).tolist()
        new_w = {e: old[p] for e, p in zip(new_edges, perm)}
    return NetworkSnapshot(nodes, new_w, snapshot.year_range, snapshot.base)


def _node_names(n: int) -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"N{i:0{width}d}" for i in range(n)]


def generate_er(n: int, p: float, seed: int) -> NetworkSnapshot:
    """Directed G(n, p): every ordered pair linked independently with probability p."""
    if n < 2:
        raise InvalidArgumentError(f"n must be >= 2, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p must lie in [0, 1], got {p}")
    rng = _rng(seed)
    names = _node_names(n)
    draw = rng.random((n, n)) < p
    np.fill_diagonal(draw, False)
    rows, cols = np.nonzero(draw)
    return NetworkSnapshot.from_edges(names, [(names[i], names[j]) for i, j in zip(rows, cols)])


def random_digraph(n: int, m: int, seed: int) -> NetworkSnapshot:
    """Directed G(n, m): m distinct ordered pairs drawn uniformly, unit weights."""
    if n < 2:
        raise InvalidArgumentError(f"n must be >= 2, got {n}")
    slots = n * (n - 1)
    if not 0 <= m <= slots:
        raise InvalidArgumentError(f"m must lie in [0, {slots}], got {m}")
    rng = _rng(seed)
    names = _node_names(n)
    picks = rng.choice(slots, size=m, replace=False)
    edges = []
    for s in picks.tolist():
        i, r = divmod(s, n - 1)
        j = r if r < i else r + 1
        edges.append((names[i], names[j]))
    return NetworkSnapshot.from_edges(names, edges)


def generate_ba(n: int, m: int, seed: int) -> InfrastructureNetwork:
    """Undirected preferential-attachment graph.

    Starts from a clique of ``m`` nodes; node ``m`` links to all of them and
    every later node links to ``m`` distinct existing nodes chosen with
    probability proportional to degree.  Edge count is
    ``m(m-1)/2 + (n-m)m`` and every degree is at least ``m``.
    """
    if n < 2:
        raise InvalidArgumentError(f"n must be >= 2, got {n}")
    if not 1 <= m < n:
        raise InvalidArgumentError(f"m must satisfy 1 <= m < n, got m={m}, n={n}")
    rng = _rng(seed)
    names = _node_names(n)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    # Each node appears in `stubs` once per incident edge.
    stubs = [v for e in pairs for v in e]
    for new in range(m, n):
        if new == m:
            targets = list(range(m))
        else:
            chosen: set[int] = set()
            targets = []
            while len(targets) < m:
                t = stubs[int(rng.integers(len(stubs)))]
                if t not in chosen:
                    chosen.add(t)
                    targets.append(t)
        for t in targets:
            pairs.append((t, new))
            stubs.extend((t, new))
    return InfrastructureNetwork.from_pairs(((names[a], names[b]) for a, b in pairs), names)


def _triangle_metrics(prefix: str):
    def run(snap: NetworkSnapshot) -> dict[str, float | None]:
        s = triangle_summary(triangle_census(snap))
        table = s.distribution if prefix == "distribution" else s.participation
        return {f"triangle_{prefix}.{t}": (table[t] if table else None) for t in TRIANGLE_TYPES}

    return run


def _clustering(snap: NetworkSnapshot) -> dict[str, float | None]:
    c = clustering_suite(snap)
    return {
        "mean_cyclic_clustering": c.mean_cyclic,
        "weighted_clustering": c.weighted,
        "mean_undirected_clustering": c.mean_undirected,
    }


def _reciprocity(snap: NetworkSnapshot) -> dict[str, float | None]:
    r = reciprocity_stats(snap)
    return {
        "bidirectional_link_fraction": r.bidirectional_link_fraction,
        "weighted_reciprocity": r.weighted_reciprocity,
    }


METRICS: Mapping[str, Callable[[NetworkSnapshot], dict[str, float | None]]] = {
    "triangle_distribution": _triangle_metrics("distribution"),
    "triangle_participation": _triangle_metrics("participation"),
    "clustering": _clustering,
    "reciprocity": _reciprocity,
}
DEFAULT_METRICS = ("triangle_distribution", "triangle_participation", "clustering")


@dataclass(frozen=True)
class EnsembleStats:
    n: int
    seed: int
    mean: dict[str, float | None]
    std: dict[str, float | None]
    n_defined: dict[str, int]
    observed: dict[str, float | None] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "metrics": {
                k: {
                    "observed": self.observed.get(k),
                    "mean": self.mean[k],
                    "std": self.std[k],
                    "n_defined": self.n_defined[k],
                }
                for k in self.mean
            },
        }

    def triangle_table(self) -> list[tuple]:
        """Rows ``(statistic, model, cycle, in, out, bridge)``; model is
        ``observed``, ``null_mean`` or ``null_std``."""
        rows = []
        for stat in ("distribution", "participation"):
            keys = [f"triangle_{stat}.{t}" for t in TRIANGLE_TYPES]
            if keys[0] not in self.mean:
                continue
            rows.append((stat, "observed", *(self.observed.get(k) for k in keys)))
            rows.append((stat, "null_mean", *(self.mean[k] for k in keys)))
            rows.append((stat, "null_std", *(self.std[k] for k in keys)))
        return rows


def evaluate_metrics(snapshot: NetworkSnapshot, metric_set: Sequence[str]) -> dict[str, float | None]:
    out: dict[str, float | None] = {}
    for name in metric_set:
        try:
            fn = METRICS[name]
        except KeyError:
            raise InvalidArgumentError(
                f"unknown metric {name!r}; choose from {sorted(METRICS)}"
            ) from None
        out.update(fn(snapshot))
    return out


def ensemble_stats(
    snapshot: NetworkSnapshot,
    n: int,
    seed: int,
    metric_set: Sequence[str] = DEFAULT_METRICS,
    *,
    swaps_per_edge: int = SWAPS_PER_EDGE,
    weights: str = "shuffle",
) -> EnsembleStats:
    """Mean and population std of each metric over ``n`` rewirings seeded
    ``seed, seed+1, ..., seed+n-1``."""
    if n < 1:
        raise InvalidArgumentError(f"ensemble size must be >= 1, got {n}")
    samples: dict[str, list[float]] = {}
    keys: list[str] = []
    for s in range(seed, seed + n):
        rewired = configuration_rewire(snapshot, s, swaps_per_edge=swaps_per_edge, weights=weights)
        values = evaluate_metrics(rewired, metric_set)
        for k, v in values.items():
            if k not in samples:
                samples[k] = []
                keys.append(k)
            if v is not None:
                samples[k].append(float(v))
    mean, std, count = {}, {}, {}
    for k in keys:
        vals = samples[k]
        count[k] = len(vals)
        if vals:
            mu = math.fsum(vals) / len(vals)
            mean[k] = mu
            std[k] = math.sqrt(math.fsum((v - mu) ** 2 for v in vals) / len(vals))
        else:
            mean[k] = std[k] = None
    observed = evaluate_metrics(snapshot, metric_set)
    return EnsembleStats(n, seed, mean, std, count, observed)
