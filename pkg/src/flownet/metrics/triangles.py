"""Directed triangle census via adjacency-matrix products.

For the binary adjacency ``A`` the per-node counts are the diagonals of

=======  =============
cycle    ``A A A``
bridge   ``A A^T A``  (middleman: receives from k, sends to j, k -> j)
in       ``A^T A A``  (two incoming links)
out      ``A A A^T``  (two outgoing links)
=======  =============

Counts are node incidences, so a triangle is counted once at each corner
where it has the given shape.  The network totals of bridge, in and out
are traces of cyclic permutations of one product and are always equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..model import NetworkSnapshot

TRIANGLE_TYPES = ("cycle", "in", "out", "bridge")


@dataclass(frozen=True)
class TriangleCensus:
    nodes: tuple[str, ...]
    counts: Mapping[str, np.ndarray]

    def node_counts(self, node: str) -> dict[str, int]:
        i = self.nodes.index(node)
        return {t: int(self.counts[t][i]) for t in TRIANGLE_TYPES}

    def totals(self) -> dict[str, int]:
        return {t: int(self.counts[t].sum()) for t in TRIANGLE_TYPES}

    def rows(self):
        for i, n in enumerate(self.nodes):
            yield (n, *(int(self.counts[t][i]) for t in TRIANGLE_TYPES))


def triangle_census(snapshot: NetworkSnapshot) -> TriangleCensus:
    A = snapshot.adjacency_matrix()
    A2 = A @ A
    counts = {
        "cycle": np.einsum("ij,ji->i", A2, A),
        "bridge": np.einsum("ij,ji->i", A @ A.T, A),
        "in": np.einsum("ij,ji->i", A.T @ A, A),
        "out": np.einsum("ij,ji->i", A2, A.T),
    }
    return TriangleCensus(snapshot.nodes, counts)


@dataclass(frozen=True)
class TriangleSummary:
    distribution: dict[str, float] | None
    participation: dict[str, float]
    totals: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "distribution": self.distribution,
            "participation": self.participation,
            "totals": self.totals,
        }


def triangle_summary(census: TriangleCensus) -> TriangleSummary:
    """Share of each type among all incidences, and share of nodes touching each type.

    Values are fractions in [0, 1]; ``distribution`` is None without triangles.
    """
    totals = census.totals()
    grand = sum(totals.values())
    n = len(census.nodes)
    distribution = {t: totals[t] / grand for t in TRIANGLE_TYPES} if grand else None
    participation = {
        t: (int(np.count_nonzero(census.counts[t])) / n if n else 0.0) for t in TRIANGLE_TYPES
    }
    return TriangleSummary(distribution, participation, totals)
