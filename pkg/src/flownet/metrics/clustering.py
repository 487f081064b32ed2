"""Cyclic, weighted (triplet-value) and undirected clustering coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError
from ..model import NetworkSnapshot


@dataclass(frozen=True)
class ClusteringSuite:
    nodes: tuple[str, ...]
    cyclic: np.ndarray
    mean_cyclic: float
    weighted: float
    mean_undirected: float | None
    cyclic_mode: str

    def to_dict(self) -> dict:
        return {
            "mean_cyclic": self.mean_cyclic,
            "weighted": self.weighted,
            "mean_undirected": self.mean_undirected,
            "cyclic_mode": self.cyclic_mode,
        }


def cyclic_clustering(snapshot: NetworkSnapshot, mode: str = "neighbors") -> np.ndarray:
    """Per-node share of cycle triangles, in ``snapshot.nodes`` order.

    ``mode="neighbors"`` divides by n(n-1) with n the number of distinct
    neighbours in either direction.  ``mode="fagiolo"`` uses
    k_in * k_out - k_reciprocal, the count of in/out neighbour pairs that
    could close a cycle.  Nodes with a zero denominator score 0.
    """
    A = snapshot.adjacency_matrix()
    cycles = np.einsum("ij,ji->i", A @ A, A).astype(float)
    if mode == "neighbors":
        n_d = np.count_nonzero(A | A.T, axis=1)
        denom = n_d * (n_d - 1)
    elif mode == "fagiolo":
        denom = A.sum(axis=1) * A.sum(axis=0) - np.einsum("ij,ji->i", A, A)
    else:
        raise InvalidArgumentError(f"unknown cyclic clustering mode {mode!r}")
    out = np.zeros(len(cycles))
    ok = denom > 0
    out[ok] = cycles[ok] / denom[ok]
    return out


def weighted_clustering(snapshot: NetworkSnapshot) -> float:
    """Total value of closed triplets over total value of triplets.

    A triplet is a directed two-path i -> j -> k with i != k, valued at the
    arithmetic mean of its two link weights.  It is closed when i and k are
    linked in either direction.  Returns 0 for graphs without triplets.
    """
    W = snapshot.adjacency_matrix(weighted=True)
    A = (W > 0).astype(float)
    n = len(A)
    U = np.maximum(A, A.T)
    not_self = np.ones((n, n)) - np.eye(n)

    def value(M: np.ndarray) -> float:
        # sum_{ijk} A_ij A_jk M_ik (W_ij + W_jk) / 2 with M symmetric
        first = W * (A @ M).T
        second = W * (A.T @ M)
        return 0.5 * (math.fsum(first.ravel()) + math.fsum(second.ravel()))

    total = value(not_self)
    return value(U) / total if total > 0 else 0.0


def undirected_clustering(snapshot: NetworkSnapshot) -> np.ndarray:
    """Local clustering of the undirected unweighted projection; NaN where degree < 2."""
    A = snapshot.adjacency_matrix()
    U = (A | A.T).astype(np.int64)
    k = U.sum(axis=1)
    tri = np.einsum("ij,ji->i", U @ U, U)  # 2 x triangles at each node
    out = np.full(len(k), np.nan)
    ok = k >= 2
    out[ok] = tri[ok] / (k[ok] * (k[ok] - 1))
    return out


def clustering_suite(snapshot: NetworkSnapshot, cyclic_mode: str = "neighbors") -> ClusteringSuite:
    cyc = cyclic_clustering(snapshot, cyclic_mode)
    und = undirected_clustering(snapshot)
    und_ok = und[~np.isnan(und)]
    return ClusteringSuite(
        nodes=snapshot.nodes,
        cyclic=cyc,
        mean_cyclic=math.fsum(cyc) / len(cyc) if len(cyc) else 0.0,
        weighted=weighted_clustering(snapshot),
        mean_undirected=math.fsum(und_ok) / len(und_ok) if len(und_ok) else None,
        cyclic_mode=cyclic_mode,
    )
