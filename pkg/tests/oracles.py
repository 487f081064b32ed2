"""Brute-force reference implementations used only by the tests.

These enumerate node triples, pairs or partitions directly and share no
code with the library's matrix-based paths.
"""

from __future__ import annotations

import math
import random
from itertools import permutations

import numpy as np

from flownet.model import NetworkSnapshot


def random_weighted_digraph(rng: random.Random, n: int, p: float, integer: bool = True) -> NetworkSnapshot:
    nodes = [f"v{i:02d}" for i in range(n)]
    weights = {}
    for a in nodes:
        for b in nodes:
            if a != b and rng.random() < p:
                weights[(a, b)] = rng.randint(1, 1000) if integer else rng.uniform(0.5, 100.0)
    return NetworkSnapshot.from_edges(nodes, weights)


def brute_triangles(snap: NetworkSnapshot) -> dict[str, dict[str, int]]:
    """Classify every ordered pair (j, k) of other nodes at every corner i."""
    e = set(snap.weights)
    out = {}
    for i in snap.nodes:
        c = {"cycle": 0, "in": 0, "out": 0, "bridge": 0}
        for j, k in permutations([v for v in snap.nodes if v != i], 2):
            if (i, j) in e and (j, k) in e and (k, i) in e:
                c["cycle"] += 1
            if (j, i) in e and (k, i) in e and (j, k) in e:
                c["in"] += 1
            if (i, j) in e and (i, k) in e and (j, k) in e:
                c["out"] += 1
            if (k, i) in e and (i, j) in e and (k, j) in e:
                c["bridge"] += 1
        out[i] = c
    return out


def brute_cyclic(snap: NetworkSnapshot) -> list[float]:
    e = set(snap.weights)
    res = []
    for i in snap.nodes:
        nbrs = {v for v in snap.nodes if (i, v) in e or (v, i) in e}
        cyc = sum(1 for j, k in permutations(nbrs, 2) if (i, j) in e and (j, k) in e and (k, i) in e)
        nd = len(nbrs)
        res.append(cyc / (nd * (nd - 1)) if nd >= 2 else 0.0)
    return res


def brute_weighted_clustering(snap: NetworkSnapshot) -> float:
    w = snap.weights
    closed, total = [], []
    for i, j, k in permutations(snap.nodes, 3):
        if (i, j) in w and (j, k) in w:
            v = (w[(i, j)] + w[(j, k)]) / 2
            total.append(v)
            if (i, k) in w or (k, i) in w:
                closed.append(v)
    return math.fsum(closed) / math.fsum(total) if total else 0.0


def brute_undirected_clustering(snap: NetworkSnapshot) -> float | None:
    e = set(snap.weights)
    adj = {v: {u for u in snap.nodes if (v, u) in e or (u, v) in e} for v in snap.nodes}
    vals = []
    for v in snap.nodes:
        nb = sorted(adj[v])
        k = len(nb)
        if k < 2:
            continue
        links = sum(1 for a in range(k) for b in range(a + 1, k) if nb[b] in adj[nb[a]])
        vals.append(links / (k * (k - 1) / 2))
    return math.fsum(vals) / len(vals) if vals else None


def floyd_warshall(nodes, pairs) -> dict[tuple[str, str], float]:
    nodes = sorted(nodes)
    d = {(a, b): (0 if a == b else math.inf) for a in nodes for b in nodes}
    for a, b in pairs:
        d[(a, b)] = d[(b, a)] = 1
    for k in nodes:
        for i in nodes:
            for j in nodes:
                if d[(i, k)] + d[(k, j)] < d[(i, j)]:
                    d[(i, j)] = d[(i, k)] + d[(k, j)]
    return d


def set_partitions(n: int):
    """All set partitions of range(n) as restricted growth strings."""
    labels = [0] * n

    def rec(i: int, m: int):
        if i == n:
            yield tuple(labels)
            return
        for c in range(m + 1):
            labels[i] = c
            yield from rec(i + 1, max(m, c + 1))

    if n == 0:
        yield ()
        return
    yield from rec(1, 1)


def exhaustive_modularity(S: np.ndarray) -> tuple[float, tuple[int, ...]]:
    """Best modularity over every partition of a small symmetric weight matrix."""
    n = len(S)
    parts = np.array(list(set_partitions(n)))
    two_w = S.sum()
    k = S.sum(axis=1)
    same = parts[:, :, None] == parts[:, None, :]
    inner = np.einsum("pij,ij->p", same, S)
    onehot = parts[:, :, None] == np.arange(n)[None, None, :]
    tot = np.einsum("pic,i->pc", onehot, k)
    q = (inner - (tot ** 2).sum(axis=1) / two_w) / two_w
    best = int(np.argmax(q))
    return float(q[best]), tuple(int(x) for x in parts[best])


def direct_modularity(S: np.ndarray, labels) -> float:
    """Double sum over node pairs, straight from the definition."""
    two_w = S.sum()
    k = S.sum(axis=1)
    n = len(S)
    return math.fsum(
        S[i, j] - k[i] * k[j] / two_w for i in range(n) for j in range(n) if labels[i] == labels[j]
    ) / two_w
