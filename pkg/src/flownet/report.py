"""Run analyses from a :class:`RunConfig` and write deterministic JSON/CSV files.

Every output is rendered in memory first, then written to a scratch
directory next to the output directory and moved into place only when all
files are ready.  A failed run leaves no partial files behind.

CSV numbers use 6 significant digits (``%.6g``); undefined values are
written as ``NA``.  The first CSV line is a ``#`` comment carrying the seed
and config hash.
"""

from __future__ import annotations

import io
import json
import math
import os
import shutil
import tempfile
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import __version__
from .community import detect_communities, normalize_by_population
from .config import RunConfig, format_quadrants
from .distributions import (
    QUADRANT_NAMES,
    argmax_matrix,
    chemical_index,
    geographic_index,
    incoming_flow_profile,
    link_share_profile,
    outgoing_flow_profile,
    quadrant_classification,
)
from .errors import InvalidArgumentError
from .geodesy import GeoBinning
from .ingest import coarse_grain, load_airports, load_countries, load_flows, load_routes
from .metrics import (
    TRIANGLE_TYPES,
    alpha_evolution,
    balance,
    basic_stats,
    clustering_suite,
    reciprocity_stats,
    triangle_census,
    triangle_summary,
)
from .model import aggregate_years
from .nullmodels import DEFAULT_METRICS, ensemble_stats
from .paths import chemical_distances, flow_path_stats


def fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "NA"
        return format(v, ".6g")
    return str(value)


def _clean(obj):
    """Make nested results JSON-safe (tuple keys, numpy scalars, NaN)."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return None if math.isnan(v) else v
    return obj


@dataclass
class Outputs:
    """Rendered files keyed by relative path."""

    seed: int | None
    config_hash: str

    def __post_init__(self):
        self.files: dict[str, str] = {}

    @property
    def meta(self) -> dict:
        return {"seed": self.seed, "config_hash": self.config_hash, "flownet_version": __version__}

    def csv(self, name: str, header: Iterable[str], rows: Iterable[Iterable]) -> None:
        buf = io.StringIO()
        buf.write(f"# seed={fmt(self.seed)} config_hash={self.config_hash}\n")
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(fmt(v) for v in row) + "\n")
        self.files[name] = buf.getvalue()

    def json(self, name: str, payload: dict) -> None:
        doc = {"meta": self.meta, **_clean(payload)}
        self.files[name] = json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"

    def commit(self, out_dir: Path) -> list[Path]:
        out_dir = Path(out_dir)
        out_dir.parent.mkdir(parents=True, exist_ok=True)
        scratch = Path(tempfile.mkdtemp(prefix=".flownet-", dir=out_dir.parent))
        try:
            for name, text in sorted(self.files.items()):
                target = scratch / name
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(text, encoding="utf-8", newline="\n")
            out_dir.mkdir(exist_ok=True)
            written = []
            for name in sorted(self.files):
                dest = out_dir / name
                dest.parent.mkdir(parents=True, exist_ok=True)
                os.replace(scratch / name, dest)
                written.append(dest)
            return written
        finally:
            shutil.rmtree(scratch, ignore_errors=True)


class Analysis:
    """Lazily loaded inputs and derived graphs for one configuration."""

    def __init__(self, config: RunConfig):
        self.config = config.validate()

    @cached_property
    def registry(self):
        self.config.require("countries")
        return load_countries(self.config.countries)

    @cached_property
    def flows(self):
        self.config.require("flows")
        return load_flows(self.config.flows, self.registry)

    @cached_property
    def years(self) -> tuple[int, int]:
        if self.config.years is not None:
            return self.config.years
        ys = self.flows.years()
        if not ys:
            raise InvalidArgumentError(f"flows file {self.config.flows} contains no flows")
        return ys[0], ys[-1]

    @cached_property
    def snapshot(self):
        return aggregate_years(self.flows, *self.years)

    @cached_property
    def airports(self):
        self.config.require("airports")
        return load_airports(self.config.airports, self.registry)

    @cached_property
    def routes(self):
        self.config.require("routes")
        return load_routes(self.config.routes)

    @cached_property
    def infrastructure(self):
        return coarse_grain(self.airports, self.routes, self.registry.codes)

    @cached_property
    def chem(self):
        return chemical_distances(self.infrastructure)

    def seed(self) -> int:
        if self.config.seed is None:
            raise InvalidArgumentError("randomized analyses need an explicit seed (config 'seed' or --seed)")
        return self.config.seed

    def index_sources(self):
        yield "chemical", chemical_index(self.chem)
        yield "geographic", geographic_index(
            self.registry, GeoBinning(self.config.bin_km), self.config.earth_radius_km
        )


def _meta_section(a: Analysis) -> dict:
    return {"years": list(a.years), "config": a.config.to_text(include_out=False).splitlines()}


def section_ingest(a: Analysis, out: Outputs) -> dict:
    snap = a.snapshot
    infra = a.infrastructure
    isolated = [v for v in snap.nodes if not snap.successors[v] and not snap.predecessors[v]]
    summary = {
        "countries": len(a.registry),
        "flow_links": snap.n_edges,
        "flow_records": sum(len(y) for y in a.flows.edges.values()),
        "dataset_years": a.flows.years(),
        "years": list(a.years),
        "isolated_countries": isolated,
        "airports": len(a.airports),
        "routes": len(a.routes),
        "infrastructure_links": len(infra.edges),
    }
    out.json("ingest.json", summary)
    return summary


def section_metrics(a: Analysis, out: Outputs) -> dict:
    snap = a.snapshot
    bs = basic_stats(snap)
    rs = reciprocity_stats(snap)
    cs = clustering_suite(snap, a.config.cyclic_mode)
    census = triangle_census(snap)
    ts = triangle_summary(census)
    bal = balance(snap)
    start = a.config.alpha_start if a.config.alpha_start is not None else a.years[0]
    end = a.config.alpha_end if a.config.alpha_end is not None else a.years[1]
    alpha = alpha_evolution(a.flows, start, end) if start < end else None
    payload = {
        **_meta_section(a),
        "basic_stats": bs.to_dict(),
        "reciprocity_stats": rs.to_dict(),
        "clustering_suite": cs.to_dict(),
        "triangle_summary": ts.to_dict(),
        "balance": bal.to_dict(),
        "alpha_evolution": alpha.to_dict() if alpha else None,
    }
    if a.config.airports is not None and a.config.routes is not None:
        payload["flow_path_stats"] = flow_path_stats(snap, a.chem).to_dict()
        payload["flow_path_stats_weighted"] = flow_path_stats(snap, a.chem, weighted=True).to_dict()
        payload["pair_path_stats"] = flow_path_stats(snap, a.chem, over="pairs").to_dict()
    out.json("metrics.json", payload)
    out.csv(
        "clustering.csv",
        ("node", "cyclic_clustering"),
        zip(cs.nodes, cs.cyclic.tolist()),
    )
    return payload


def section_triangles(a: Analysis, out: Outputs) -> dict:
    census = triangle_census(a.snapshot)
    ts = triangle_summary(census)
    out.csv("triangles.csv", ("node", *TRIANGLE_TYPES), census.rows())
    dist = ts.distribution or {}
    out.csv(
        "triangle_summary.csv",
        ("statistic", *TRIANGLE_TYPES),
        [
            ("distribution", *(dist.get(t) for t in TRIANGLE_TYPES)),
            ("participation", *(ts.participation[t] for t in TRIANGLE_TYPES)),
            ("total", *(ts.totals[t] for t in TRIANGLE_TYPES)),
        ],
    )
    return ts.to_dict()


def section_balance(a: Analysis, out: Outputs) -> dict:
    bal = balance(a.snapshot)
    out.csv("balance.csv", ("node", "structural", "functional"), bal.rows())
    q = quadrant_classification(a.snapshot, a.config.quadrant_mapping)
    out.csv(
        "quadrants.csv",
        ("node", "in_degree", "out_degree", "quadrant", "quadrant_name", "flow_ratio", "zero_in_degree"),
        ((r.node, r.in_degree, r.out_degree, r.quadrant, QUADRANT_NAMES.get(r.quadrant, r.quadrant),
          r.flow_ratio, r.zero_in_degree) for r in q.rows),
    )
    payload = {"balance": bal.to_dict(), "quadrants": q.to_dict()}
    out.json("balance.json", payload)
    return payload


def section_alpha(a: Analysis, out: Outputs) -> dict:
    start = a.config.alpha_start if a.config.alpha_start is not None else a.years[0]
    end = a.config.alpha_end if a.config.alpha_end is not None else a.years[1]
    rep = alpha_evolution(a.flows, start, end)
    out.csv(
        "alpha.csv",
        ("origin", "destination", "alpha"),
        ((o, d, v) for (o, d), v in rep.alpha.items()),
    )
    out.csv(
        "alpha_yearly.csv",
        ("year", "mean_alpha"),
        rep.yearly_mean.items(),
    )
    edges = rep.histogram_edges
    out.csv(
        "alpha_histogram.csv",
        ("bin_lo", "bin_hi", "count"),
        ((edges[i], edges[i + 1], c) for i, c in enumerate(rep.histogram_counts)),
    )
    payload = rep.to_dict()
    out.json("alpha.json", payload)
    return payload


def section_profiles(a: Analysis, out: Outputs) -> dict:
    payload = {}
    for kind, src in a.index_sources():
        for fn in (outgoing_flow_profile, link_share_profile, incoming_flow_profile):
            prof = fn(a.snapshot, src)
            name = f"{prof.measure}_{kind}"
            out.csv(
                f"profiles/{name}.csv",
                ("index", "label", "mean", "stderr", "countries", "mass", "index_kind", "bin_width_km", "excluded_links"),
                ((d, src.label(d), m, e, c, s, prof.kind, prof.bin_width_km, prof.excluded)
                 for d, m, e, c, s in prof.rows()),
            )
            payload[name] = prof.to_dict()
        am = argmax_matrix(a.snapshot, src)
        out.csv(
            f"profiles/argmax_{kind}.csv",
            ("flow_peak_index", "link_peak_index", "countries", "unregistered", "index_kind", "bin_width_km"),
            ((fi, li, c, unreg, am.kind, am.bin_width_km) for fi, li, c, unreg in am.rows()),
        )
        payload[f"argmax_{kind}"] = {
            "countries": am.total(),
            "excluded_links": am.excluded,
            "cells": {f"{fi},{li}": c for (fi, li), c in am.counts.items()},
        }
    out.json("profiles/profiles.json", payload)
    return payload


def section_communities(a: Analysis, out: Outputs) -> dict:
    seed = a.seed()
    raw = detect_communities(a.snapshot, seed, a.config.restarts)
    payload = {"weighted": raw.to_dict()}
    out.csv("communities.csv", ("node", "community"), sorted(raw.membership.items()))
    try:
        norm_snap = normalize_by_population(a.snapshot, a.registry)
    except InvalidArgumentError as exc:
        payload["normalized"] = {"skipped": str(exc)}
    else:
        norm = detect_communities(norm_snap, seed, a.config.restarts)
        payload["normalized"] = norm.to_dict()
        out.csv("communities_normalized.csv", ("node", "community"), sorted(norm.membership.items()))
    out.json("communities.json", payload)
    return payload


def section_nullmodel(a: Analysis, out: Outputs) -> dict:
    stats = ensemble_stats(
        a.snapshot,
        a.config.ensemble,
        a.seed(),
        DEFAULT_METRICS,
        swaps_per_edge=a.config.swaps_per_edge,
    )
    out.csv("nullmodel.csv", ("statistic", "model", *TRIANGLE_TYPES), stats.triangle_table())
    payload = stats.to_dict()
    out.json("nullmodel.json", payload)
    return payload


def section_paths(a: Analysis, out: Outputs) -> dict:
    out.csv("paths.csv", ("origin", "destination", "chemical_distance"), a.chem.rows())
    stats = flow_path_stats(a.snapshot, a.chem)
    out.csv(
        "path_histogram.csv",
        ("chemical_distance", "flow_links"),
        sorted(stats.histogram.items()),
    )
    return stats.to_dict()


SECTIONS: dict[str, tuple[Callable[[Analysis, Outputs], dict], ...]] = {
    "ingest-check": (section_ingest,),
    "metrics": (section_metrics,),
    "triangles": (section_triangles,),
    "balance": (section_balance,),
    "alpha": (section_alpha,),
    "profiles": (section_profiles,),
    "communities": (section_communities,),
    "nullmodel": (section_nullmodel,),
    "paths": (section_paths,),
}
SECTIONS["report"] = tuple(fn for name, fns in SECTIONS.items() for fn in fns)


def run(command: str, config: RunConfig) -> Outputs:
    """Compute every section of ``command`` and return the rendered files."""
    analysis = Analysis(config)
    out = Outputs(config.seed, config.digest())
    for section in SECTIONS[command]:
        section(analysis, out)
    return out


def run_report(config: RunConfig) -> list[Path]:
    """Write the full report to ``config.out``; returns the written paths."""
    if config.out is None:
        raise InvalidArgumentError("an output directory is required (config 'out' or --out)")
    config.require("countries", "flows", "airports", "routes")
    return run("report", config).commit(config.out)
