from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from ..errors import InvalidArgumentError
from ..model import NetworkSnapshot


def _mean_std(values: list[float]) -> tuple[float, float]:
    """Population mean and standard deviation."""
    n = len(values)
    mean = math.fsum(values) / n
    return mean, math.sqrt(math.fsum((v - mean) ** 2 for v in values) / n)


@dataclass(frozen=True)
class BasicStats:
    n_nodes: int
    n_edges: int
    density: float
    mean_out_degree: float
    std_out_degree: float
    mean_in_degree: float
    std_in_degree: float
    n_isolated: int

    def to_dict(self) -> dict:
        return asdict(self)


def basic_stats(snapshot: NetworkSnapshot) -> BasicStats:
    n = snapshot.n_nodes
    if n < 2:
        raise InvalidArgumentError(f"basic_stats needs at least 2 nodes, got {n}")
    succ, pred = snapshot.successors, snapshot.predecessors
    k_out = [len(succ[v]) for v in snapshot.nodes]
    k_in = [len(pred[v]) for v in snapshot.nodes]
    m_out, s_out = _mean_std(k_out)
    m_in, s_in = _mean_std(k_in)
    L = snapshot.n_edges
    return BasicStats(
        n_nodes=n,
        n_edges=L,
        density=L / (n * (n - 1)),
        mean_out_degree=m_out,
        std_out_degree=s_out,
        mean_in_degree=m_in,
        std_in_degree=s_in,
        n_isolated=sum(1 for a, b in zip(k_out, k_in) if a == 0 and b == 0),
    )


@dataclass(frozen=True)
class ReciprocityStats:
    bidirectional_link_fraction: float | None
    weighted_reciprocity: float | None
    n_bidirectional_pairs: int

    def to_dict(self) -> dict:
        return asdict(self)


def reciprocity_stats(snapshot: NetworkSnapshot) -> ReciprocityStats:
    """Share of links whose reverse exists, and the mean min/max flow ratio
    over unordered two-way pairs (None when undefined)."""
    w = snapshot.weights
    L = len(w)
    ratios = []
    reciprocated = 0
    for (o, d), f in w.items():
        back = w.get((d, o))
        if back is None:
            continue
        reciprocated += 1
        if o < d:
            ratios.append(min(f, back) / max(f, back))
    return ReciprocityStats(
        bidirectional_link_fraction=reciprocated / L if L else None,
        weighted_reciprocity=math.fsum(ratios) / len(ratios) if ratios else None,
        n_bidirectional_pairs=len(ratios),
    )
