"""Modularity-based community detection on symmetrised flow weights.

Directed flows are folded into an undirected graph with ``w'_ij = w_ij + w_ji``
before scoring or optimisation.  Detection is a Louvain-style greedy scheme:
local node moves until no gain, then aggregation of communities into
super-nodes, repeated until the partition stops changing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import InvalidArgumentError
from .model import CountryRegistry, NetworkSnapshot

DEFAULT_RESTARTS = 20


@dataclass(frozen=True)
class Partition:
    membership: Mapping[str, int]
    modularity: float
    seed: int | None = None
    restarts: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def n_communities(self) -> int:
        return len(set(self.membership.values()))

    def communities(self) -> list[list[str]]:
        groups: dict[int, list[str]] = {}
        for node in sorted(self.membership):
            groups.setdefault(self.membership[node], []).append(node)
        return [groups[c] for c in sorted(groups)]

    def to_dict(self) -> dict:
        return {
            "modularity": self.modularity,
            "n_communities": self.n_communities,
            "seed": self.seed,
            "restarts": self.restarts,
            **self.meta,
        }


def canonical_labels(membership: Mapping[str, int]) -> dict[str, int]:
    """Renumber communities 0, 1, ... in order of their smallest member."""
    relabel: dict[int, int] = {}
    out = {}
    for node in sorted(membership):
        c = membership[node]
        if c not in relabel:
            relabel[c] = len(relabel)
        out[node] = relabel[c]
    return out


def symmetrized(snapshot: NetworkSnapshot) -> np.ndarray:
    W = snapshot.adjacency_matrix(weighted=True)
    return W + W.T


def _modularity(S: np.ndarray, labels: np.ndarray) -> float:
    two_w = math.fsum(S.ravel())
    if two_w <= 0:
        raise InvalidArgumentError("modularity is undefined for a graph without weight")
    k = S.sum(axis=1)
    q = []
    for c in np.unique(labels):
        members = labels == c
        inner = math.fsum(S[np.ix_(members, members)].ravel())
        tot = math.fsum(k[members])
        q.append(inner - tot * tot / two_w)
    return math.fsum(q) / two_w


def modularity(snapshot: NetworkSnapshot, partition: Partition | Mapping[str, int]) -> float:
    """Weighted modularity of ``partition`` on the symmetrised snapshot."""
    membership = partition.membership if isinstance(partition, Partition) else partition
    missing = [n for n in snapshot.nodes if n not in membership]
    if missing:
        raise InvalidArgumentError(f"partition does not cover node(s) {missing[:5]}")
    labels = np.array([membership[n] for n in snapshot.nodes])
    return _modularity(symmetrized(snapshot), labels)


def normalize_by_population(snapshot: NetworkSnapshot, registry: CountryRegistry) -> NetworkSnapshot:
    """Divide each link weight by the population of its origin country."""
    pops = {}
    for o in sorted({o for o, _ in snapshot.weights}):
        pop = registry[o].population if o in registry else None
        if pop is None:
            raise InvalidArgumentError(f"population missing for country {o!r}")
        pops[o] = pop
    return snapshot.with_weights({(o, d): w / pops[o] for (o, d), w in snapshot.weights.items()})


def _local_moves(adj: list[dict[int, float]], k: np.ndarray, two_w: float,
                 rng: np.random.Generator) -> tuple[np.ndarray, bool]:
    n = len(adj)
    comm = np.arange(n)
    tot = k.astype(float).copy()
    eps = 1e-12 * two_w
    improved = False
    while True:
        moved = False
        for i in rng.permutation(n).tolist():
            ci = comm[i]
            ki = k[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + w
            tot[ci] -= ki
            stay = links.get(ci, 0.0) - ki * tot[ci] / two_w
            best_c, best_gain = ci, stay
            for c in sorted(links):
                gain = links[c] - ki * tot[c] / two_w
                if gain > best_gain + eps or (best_c != ci and c < best_c and abs(gain - best_gain) <= eps):
                    best_c, best_gain = c, gain
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                moved = improved = True
        if not moved:
            return comm, improved


def _louvain(S: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    two_w = float(S.sum())
    labels = np.arange(len(S))
    while True:
        adj = [{j: S[i, j] for j in np.flatnonzero(S[i]).tolist()} for i in range(len(S))]
        comm, improved = _local_moves(adj, S.sum(axis=1), two_w, rng)
        if not improved:
            return labels
        _, comm = np.unique(comm, return_inverse=True)
        labels = comm[labels]
        m = comm.max() + 1
        agg = np.zeros((m, m))
        np.add.at(agg, (comm[:, None], comm[None, :]), S)
        S = agg


def detect_communities(snapshot: NetworkSnapshot, seed: int, restarts: int = DEFAULT_RESTARTS) -> Partition:
    """Best-of-``restarts`` greedy modularity partition; deterministic per seed.

    Falls back to the single-community partition (Q = 0) should every
    restart end below it.
    """
    if snapshot.n_edges == 0:
        raise InvalidArgumentError("community detection needs at least one link")
    if restarts < 1:
        raise InvalidArgumentError(f"restarts must be >= 1, got {restarts}")
    S = symmetrized(snapshot)
    nodes = snapshot.nodes
    best_key = None
    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        labels = _louvain(S, np.random.Generator(np.random.PCG64(child)))
        membership = canonical_labels(dict(zip(nodes, labels.tolist())))
        q = _modularity(S, np.array([membership[v] for v in nodes]))
        key = (-q, tuple(membership[v] for v in nodes))
        if best_key is None or key < best_key:
            best_key, best = key, (membership, q)
    membership, q = best
    if q < 0:
        membership, q = {v: 0 for v in nodes}, 0.0
    return Partition(membership, q, seed, restarts)
