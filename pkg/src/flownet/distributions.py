"""Distance-indexed flow and link profiles, argmax matrices and degree quadrants.

Every flow link gets a distance index from an :class:`IndexSource`: either
its hop count on the infrastructure graph or its great-circle bin.  Links
without an index are left out and counted in ``excluded``.

Per-country shares are computed in exact rational arithmetic and rounded
once, then aggregated with ``math.fsum``.  Scaling all flows by a constant
whose products stay exact in floating point therefore leaves every
profile bit-identical.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .errors import InvalidArgumentError
from .geodesy import EARTH_RADIUS_KM, GeoBinning, geo_bin, haversine_km
from .model import CountryRegistry, NetworkSnapshot
from .paths import ChemicalDistanceMatrix


@dataclass(frozen=True)
class IndexSource:
    """Maps a link ``(origin, destination)`` to a distance index or None."""

    kind: str
    lookup: Callable[[str, str], int | None] = field(repr=False)
    bin_width_km: float | None = None

    def __call__(self, origin: str, destination: str) -> int | None:
        return self.lookup(origin, destination)

    def label(self, index: int) -> str:
        if self.kind == "geographic":
            return GeoBinning(self.bin_width_km).label(index)
        return str(index)


def chemical_index(chem: ChemicalDistanceMatrix) -> IndexSource:
    def lookup(o: str, d: str) -> int | None:
        if o not in chem or d not in chem:
            return None
        return chem.get(o, d)

    return IndexSource("chemical", lookup)


def geographic_index(
    registry: CountryRegistry,
    binning: GeoBinning = GeoBinning(),
    radius_km: float = EARTH_RADIUS_KM,
) -> IndexSource:
    """Bin index of the centroid-to-centroid great-circle distance.

    Coincident centroids are a data error and leave the link unindexed.
    """
    cache: dict[tuple[str, str], int | None] = {}

    def lookup(o: str, d: str) -> int | None:
        key = (o, d) if o < d else (d, o)
        if key not in cache:
            if o not in registry or d not in registry:
                cache[key] = None
            else:
                km = haversine_km(registry[o].centroid, registry[d].centroid, radius_km)
                cache[key] = geo_bin(km, binning) if km > 0 else None
        return cache[key]

    return IndexSource("geographic", lookup, binning.width_km)


@dataclass(frozen=True)
class DistanceProfile:
    """Across-country statistics of per-country values per distance index.

    ``mean``, ``stderr`` and ``count`` are aligned with ``indices``.  ``mass``
    is the share of the total held by each index and sums to 1; it is what
    :func:`cumulative_share` accumulates.
    """

    measure: str
    kind: str
    bin_width_km: float | None
    indices: tuple[int, ...]
    mean: tuple[float, ...]
    stderr: tuple[float, ...]
    count: int
    mass: tuple[float, ...]
    per_country: Mapping[str, Mapping[int, float]]
    excluded: int
    weighting: str = "equal"

    def rows(self):
        for i, d in enumerate(self.indices):
            yield d, self.mean[i], self.stderr[i], self.count, self.mass[i]

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "index_kind": self.kind,
            "bin_width_km": self.bin_width_km,
            "weighting": self.weighting,
            "countries": self.count,
            "excluded_links": self.excluded,
            "indices": list(self.indices),
            "mean": list(self.mean),
            "stderr": list(self.stderr),
            "mass": list(self.mass),
        }


def _indexed_links(snapshot: NetworkSnapshot, index_source: IndexSource):
    links, excluded = [], 0
    for (o, d), w in snapshot.weights.items():
        k = index_source(o, d)
        if k is None:
            excluded += 1
        else:
            links.append((o, d, k, w))
    return links, excluded


def _profile_indices(kind: str, observed) -> tuple[int, ...]:
    if not observed:
        return ()
    if kind == "geographic":
        return tuple(range(0, max(observed) + 1))
    return tuple(sorted(observed))


def _summarize(measure, index_source, rows: dict[str, dict[int, Fraction]], excluded,
               weights: dict[str, float] | None = None) -> DistanceProfile:
    observed = {k for r in rows.values() for k in r}
    indices = _profile_indices(index_source.kind, observed)
    countries = sorted(rows)
    n = len(countries)
    per_country = {c: {k: float(v) for k, v in sorted(rows[c].items())} for c in countries}
    w = [1.0] * n if weights is None else [weights[c] for c in countries]
    tw = math.fsum(w)
    means, errs = [], []
    for k in indices:
        vals = [per_country[c].get(k, 0.0) for c in countries]
        mu = math.fsum(wi * v for wi, v in zip(w, vals)) / tw
        var = math.fsum(wi * (v - mu) ** 2 for wi, v in zip(w, vals)) / tw
        means.append(mu)
        errs.append(math.sqrt(var) / math.sqrt(n))
    total = math.fsum(means)
    mass = tuple(m / total for m in means) if total else tuple(0.0 for _ in means)
    return DistanceProfile(
        measure=measure,
        kind=index_source.kind,
        bin_width_km=index_source.bin_width_km,
        indices=indices,
        mean=tuple(means),
        stderr=tuple(errs),
        count=n,
        mass=mass,
        per_country=per_country,
        excluded=excluded,
        weighting="equal" if weights is None else "volume",
    )


def _share_rows(links, use_flow: bool) -> dict[str, dict[int, Fraction]]:
    totals: dict[str, Fraction] = {}
    acc: dict[str, dict[int, Fraction]] = {}
    for o, _, k, w in links:
        v = Fraction(w) if use_flow else Fraction(1)
        totals[o] = totals.get(o, Fraction(0)) + v
        row = acc.setdefault(o, {})
        row[k] = row.get(k, Fraction(0)) + v
    return {o: {k: v / totals[o] for k, v in row.items()} for o, row in acc.items()}


def outgoing_flow_profile(snapshot: NetworkSnapshot, index_source: IndexSource,
                          weighting: str = "equal") -> DistanceProfile:
    """Mean over origin countries of the share of their outbound tourists
    sent at each distance index.

    ``weighting="volume"`` weights each country by its outbound total
    instead of equally.
    """
    links, excluded = _indexed_links(snapshot, index_source)
    rows = _share_rows(links, use_flow=True)
    weights = None
    if weighting == "volume":
        per_origin: dict[str, list[float]] = {}
        for o, _, _, w in links:
            per_origin.setdefault(o, []).append(w)
        weights = {o: math.fsum(ws) for o, ws in per_origin.items()}
    elif weighting != "equal":
        raise InvalidArgumentError(f"weighting must be 'equal' or 'volume', got {weighting!r}")
    return _summarize("outgoing_flow", index_source, rows, excluded, weights)


def link_share_profile(snapshot: NetworkSnapshot, index_source: IndexSource) -> DistanceProfile:
    """Mean over origin countries of the share of their destinations at each index."""
    links, excluded = _indexed_links(snapshot, index_source)
    return _summarize("link_share", index_source, _share_rows(links, use_flow=False), excluded)


def incoming_flow_profile(snapshot: NetworkSnapshot, index_source: IndexSource) -> DistanceProfile:
    """Average inflow per in-neighbour, per destination country and index.

    Cell (j, d) is the total inflow into j from in-neighbours at index d
    divided by the number of those in-neighbours.  All cells are then
    divided by their grand total, so ``per_country`` values over all
    countries and indices sum to 1.
    """
    links, excluded = _indexed_links(snapshot, index_source)
    sums: dict[str, dict[int, list]] = {}
    for _, d, k, w in links:
        cell = sums.setdefault(d, {}).setdefault(k, [Fraction(0), 0])
        cell[0] += Fraction(w)
        cell[1] += 1
    cells = {j: {k: s / c for k, (s, c) in row.items()} for j, row in sums.items()}
    grand = sum((v for row in cells.values() for v in row.values()), Fraction(0))
    if grand:
        cells = {j: {k: v / grand for k, v in row.items()} for j, row in cells.items()}
    return _summarize("incoming_flow", index_source, cells, excluded)


def cumulative_share(profile: DistanceProfile, up_to_index: int) -> float:
    """Share of profile mass at indices <= ``up_to_index``.

    Any index below the first profile index gives 0.0; otherwise the index
    must be one of the profile's indices.
    """
    if not isinstance(up_to_index, int) or isinstance(up_to_index, bool):
        raise InvalidArgumentError(f"index must be an integer, got {up_to_index!r}")
    if profile.indices and up_to_index < profile.indices[0]:
        return 0.0
    if up_to_index not in profile.indices:
        raise InvalidArgumentError(
            f"index {up_to_index} not in profile indices {list(profile.indices)}"
        )
    return math.fsum(m for d, m in zip(profile.indices, profile.mass) if d <= up_to_index)


@dataclass(frozen=True)
class ArgmaxMatrix:
    """Countries counted by (index of peak flow share, index of peak link share)."""

    kind: str
    bin_width_km: float | None
    indices: tuple[int, ...]
    counts: Mapping[tuple[int, int], int]
    per_country: Mapping[str, tuple[int, int]]
    excluded: int

    def cell(self, flow_index: int, link_index: int) -> int:
        return self.counts.get((flow_index, link_index), 0)

    def rows(self):
        """Every cell of the index grid; empty cells are unregistered occurrences."""
        for a in self.indices:
            for b in self.indices:
                c = self.cell(a, b)
                yield a, b, c, c == 0

    def total(self) -> int:
        return sum(self.counts.values())


def _argmax(row: Mapping[int, Fraction]) -> int:
    best = max(row.values())
    return min(k for k, v in row.items() if v == best)


def argmax_matrix(snapshot: NetworkSnapshot, index_source: IndexSource) -> ArgmaxMatrix:
    links, excluded = _indexed_links(snapshot, index_source)
    flow_rows = _share_rows(links, use_flow=True)
    link_rows = _share_rows(links, use_flow=False)
    per_country = {c: (_argmax(flow_rows[c]), _argmax(link_rows[c])) for c in sorted(flow_rows)}
    counts: dict[tuple[int, int], int] = {}
    for cell in per_country.values():
        counts[cell] = counts.get(cell, 0) + 1
    observed = {k for cell in per_country.values() for k in cell}
    return ArgmaxMatrix(
        index_source.kind,
        index_source.bin_width_km,
        _profile_indices(index_source.kind, observed),
        dict(sorted(counts.items())),
        per_country,
        excluded,
    )


DEFAULT_QUADRANTS: Mapping[tuple[str, str], str] = {
    ("low", "low"): "I",
    ("low", "high"): "II",
    ("high", "high"): "III",
    ("high", "low"): "IV",
}
QUADRANT_NAMES = {"I": "Passive", "II": "Dominant", "III": "Middlemen", "IV": "Dominated"}


@dataclass(frozen=True)
class QuadrantRow:
    node: str
    in_degree: int
    out_degree: int
    quadrant: str
    flow_ratio: float | None
    zero_in_degree: bool


@dataclass(frozen=True)
class QuadrantReport:
    rows: tuple[QuadrantRow, ...]
    median_in: float
    median_out: float
    mapping: Mapping[tuple[str, str], str]

    def counts(self) -> dict[str, int]:
        out = {q: 0 for q in sorted(set(self.mapping.values()))}
        for r in self.rows:
            out[r.quadrant] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "median_in_degree": self.median_in,
            "median_out_degree": self.median_out,
            "mapping": {f"{i}-in/{o}-out": q for (i, o), q in self.mapping.items()},
            "counts": self.counts(),
            "zero_in_degree": sum(r.zero_in_degree for r in self.rows),
        }


def quadrant_classification(
    snapshot: NetworkSnapshot,
    mapping: Mapping[tuple[str, str], str] = DEFAULT_QUADRANTS,
) -> QuadrantReport:
    """Split nodes at the median in- and out-degree.

    A degree strictly above its median is ``high``, otherwise ``low``; the
    ``(in_level, out_level)`` pair is mapped to a quadrant label.  The flow
    ratio is outbound over inbound tourists, None for zero inbound flow.
    """
    if snapshot.n_nodes < 2:
        raise InvalidArgumentError(f"quadrant classification needs >= 2 nodes, got {snapshot.n_nodes}")
    if set(mapping) != set(DEFAULT_QUADRANTS):
        raise InvalidArgumentError("quadrant mapping must cover all four (in, out) level pairs")
    k_in = {v: len(snapshot.predecessors[v]) for v in snapshot.nodes}
    k_out = {v: len(snapshot.successors[v]) for v in snapshot.nodes}
    med_in = statistics.median(k_in.values())
    med_out = statistics.median(k_out.values())
    rows = []
    for v in snapshot.nodes:
        level = ("high" if k_in[v] > med_in else "low", "high" if k_out[v] > med_out else "low")
        f_in = snapshot.in_strength(v)
        rows.append(QuadrantRow(
            v, k_in[v], k_out[v], mapping[level],
            snapshot.out_strength(v) / f_in if f_in > 0 else None,
            k_in[v] == 0,
        ))
    return QuadrantReport(tuple(rows), float(med_in), float(med_out), dict(mapping))
