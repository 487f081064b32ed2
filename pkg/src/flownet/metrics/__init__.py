"""Structural and dynamical measures of a flow snapshot."""

from .alpha import AlphaReport, alpha_evolution
from .balance import BalanceScores, balance, pearson
from .basic import BasicStats, ReciprocityStats, basic_stats, reciprocity_stats
from .clustering import (
    ClusteringSuite,
    clustering_suite,
    cyclic_clustering,
    undirected_clustering,
    weighted_clustering,
)
from .triangles import (
    TRIANGLE_TYPES,
    TriangleCensus,
    TriangleSummary,
    triangle_census,
    triangle_summary,
)

__all__ = [
    "AlphaReport",
    "BalanceScores",
    "BasicStats",
    "ClusteringSuite",
    "ReciprocityStats",
    "TRIANGLE_TYPES",
    "TriangleCensus",
    "TriangleSummary",
    "alpha_evolution",
    "balance",
    "basic_stats",
    "clustering_suite",
    "cyclic_clustering",
    "pearson",
    "reciprocity_stats",
    "triangle_census",
    "triangle_summary",
    "undirected_clustering",
    "weighted_clustering",
]
