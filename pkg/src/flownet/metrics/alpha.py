from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError
from ..model import Edge, FlowNetwork


@dataclass(frozen=True)
class AlphaReport:
    start_year: int
    end_year: int
    alpha: dict[Edge, float]
    excluded: tuple[Edge, ...]
    histogram_edges: tuple[float, ...]
    histogram_counts: tuple[int, ...]
    yearly_mean: dict[int, float | None]
    zero_change_fraction: float | None

    def top(self, k: int = 5, reverse: bool = True) -> list[tuple[Edge, float]]:
        return sorted(self.alpha.items(), key=lambda kv: (-kv[1] if reverse else kv[1], kv[0]))[:k]

    def to_dict(self) -> dict:
        return {
            "start_year": self.start_year,
            "end_year": self.end_year,
            "n_eligible": len(self.alpha),
            "n_excluded": len(self.excluded),
            "excluded": [f"{o}->{d}" for o, d in self.excluded],
            "zero_change_fraction": self.zero_change_fraction,
            "yearly_mean": {str(y): v for y, v in self.yearly_mean.items()},
            "histogram": {"edges": list(self.histogram_edges), "counts": list(self.histogram_counts)},
            "top": [{"edge": f"{o}->{d}", "alpha": a} for (o, d), a in self.top()],
            "bottom": [{"edge": f"{o}->{d}", "alpha": a} for (o, d), a in self.top(reverse=False)],
        }


def alpha_evolution(net: FlowNetwork, t0: int, tn: int, bins: int = 20) -> AlphaReport:
    """Relative flow change (F(tn) - F(t0)) / F(t0) for every link active in t0.

    Links that only appear after ``t0`` are listed in ``excluded``.
    ``yearly_mean`` holds the mean change relative to ``t0`` for every dataset
    year in ``(t0, tn]``.
    """
    if t0 >= tn:
        raise InvalidArgumentError(f"start year {t0} must precede end year {tn}")
    years = net.years()
    for y in (t0, tn):
        if y not in years:
            raise InvalidArgumentError(f"year {y} not present in the dataset")

    def change(edge: Edge, t: int) -> float:
        f0 = net.flow(*edge, t0)
        return (net.flow(*edge, t) - f0) / f0

    eligible, excluded = [], []
    for edge, per_year in sorted(net.edges.items()):
        if t0 in per_year:
            eligible.append(edge)
        elif any(t0 < y <= tn for y in per_year):
            excluded.append(edge)

    alpha = {e: change(e, tn) for e in eligible}
    yearly = {}
    for y in (y for y in years if t0 < y <= tn):
        vals = [change(e, y) for e in eligible]
        yearly[y] = math.fsum(vals) / len(vals) if vals else None

    if alpha:
        counts, edges = np.histogram(np.array(list(alpha.values())), bins=bins)
        hist_edges, hist_counts = tuple(float(x) for x in edges), tuple(int(c) for c in counts)
        zero = sum(1 for a in alpha.values() if a == 0) / len(alpha)
    else:
        hist_edges, hist_counts, zero = (), (), None
    return AlphaReport(t0, tn, alpha, tuple(excluded), hist_edges, hist_counts, yearly, zero)
