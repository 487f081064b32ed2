from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..model import NetworkSnapshot


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson correlation; None for fewer than two points or zero variance."""
    n = len(x)
    if n != len(y):
        raise ValueError("pearson needs equal-length inputs")
    if n < 2:
        return None
    mx, my = math.fsum(x) / n, math.fsum(y) / n
    dx = [a - mx for a in x]
    dy = [b - my for b in y]
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    if sxx == 0 or syy == 0:
        return None
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class BalanceScores:
    nodes: tuple[str, ...]
    structural: tuple[float | None, ...]
    functional: tuple[float | None, ...]
    rho: float | None

    def rows(self):
        return zip(self.nodes, self.structural, self.functional)

    def to_dict(self) -> dict:
        defined = sum(1 for s, f in zip(self.structural, self.functional) if s is not None and f is not None)
        return {"rho": self.rho, "n_defined": defined, "n_undefined": len(self.nodes) - defined}


def _ratio(a: float, b: float) -> float | None:
    return (a - b) / (a + b) if a + b > 0 else None


def balance(snapshot: NetworkSnapshot) -> BalanceScores:
    """Degree balance (k_in - k_out)/(k_in + k_out) and the same for flow totals."""
    s_scores, f_scores = [], []
    for v in snapshot.nodes:
        k_in, k_out = len(snapshot.predecessors[v]), len(snapshot.successors[v])
        s_scores.append(_ratio(k_in, k_out))
        f_scores.append(_ratio(snapshot.in_strength(v), snapshot.out_strength(v)))
    pairs = [(s, f) for s, f in zip(s_scores, f_scores) if s is not None and f is not None]
    rho = pearson([p[0] for p in pairs], [p[1] for p in pairs])
    return BalanceScores(snapshot.nodes, tuple(s_scores), tuple(f_scores), rho)
