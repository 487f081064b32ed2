import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flownet.errors import InvalidArgumentError
from flownet.metrics import (
    TRIANGLE_TYPES,
    alpha_evolution,
    balance,
    basic_stats,
    clustering_suite,
    cyclic_clustering,
    pearson,
    reciprocity_stats,
    triangle_census,
    triangle_summary,
    undirected_clustering,
    weighted_clustering,
)
from flownet.model import FlowNetwork, NetworkSnapshot
from flownet.nullmodels import random_digraph

from oracles import (
    brute_cyclic,
    brute_triangles,
    brute_undirected_clustering,
    brute_weighted_clustering,
    random_weighted_digraph,
)

CYCLE = NetworkSnapshot.from_edges("ABC", [("A", "B"), ("B", "C"), ("C", "A")])
FULL3 = NetworkSnapshot.from_edges("ABC", [(a, b) for a in "ABC" for b in "ABC" if a != b])


def scaled(snap, c):
    return snap.with_weights({e: w * c for e, w in snap.weights.items()})


# basic statistics

def test_basic_stats_wtn_scale():
    s = basic_stats(random_digraph(214, 4148, seed=1))
    assert s.density == pytest.approx(0.0910, abs=1e-4)
    assert s.mean_out_degree == pytest.approx(19.38, abs=0.01)
    assert s.mean_in_degree == s.mean_out_degree


def test_basic_stats_degenerate():
    full = NetworkSnapshot.from_edges("ABCDE", [(a, b) for a in "ABCDE" for b in "ABCDE" if a != b])
    assert basic_stats(full).density == 1.0
    empty = basic_stats(NetworkSnapshot.from_edges("ABCDE", []))
    assert (empty.density, empty.mean_out_degree, empty.mean_in_degree, empty.n_isolated) == (0.0, 0.0, 0.0, 5)
    with pytest.raises(InvalidArgumentError):
        basic_stats(NetworkSnapshot.from_edges("A", []))


# reciprocity

def test_reciprocity_examples():
    sym = NetworkSnapshot.from_edges("ABC", {("A", "B"): 7, ("B", "A"): 7, ("B", "C"): 3, ("C", "B"): 3})
    r = reciprocity_stats(sym)
    assert (r.bidirectional_link_fraction, r.weighted_reciprocity) == (1.0, 1.0)
    pair = reciprocity_stats(NetworkSnapshot.from_edges("AB", {("A", "B"): 100, ("B", "A"): 44}))
    assert pair.weighted_reciprocity == pytest.approx(0.44, abs=1e-12)
    one_way = reciprocity_stats(CYCLE)
    assert one_way.bidirectional_link_fraction == 0.0
    assert one_way.weighted_reciprocity is None


@pytest.mark.parametrize("seed", range(20))
def test_reciprocity_range_and_scaling(seed):
    snap = random_weighted_digraph(random.Random(seed), 9, 0.4)
    r = reciprocity_stats(snap)
    if r.weighted_reciprocity is not None:
        assert 0 < r.weighted_reciprocity <= 1
        equal = all(snap.weights[(b, a)] == w for (a, b), w in snap.weights.items() if (b, a) in snap.weights)
        assert (r.weighted_reciprocity == 1.0) == equal
        assert reciprocity_stats(scaled(snap, 8)).weighted_reciprocity == r.weighted_reciprocity


# triangles

def test_triangle_examples():
    census = triangle_census(CYCLE)
    for v in "ABC":
        assert census.node_counts(v) == {"cycle": 1, "in": 0, "out": 0, "bridge": 0}
    full = triangle_census(FULL3)
    for v in "ABC":
        assert full.node_counts(v) == {t: 2 for t in TRIANGLE_TYPES}
    star = NetworkSnapshot.from_edges("HABC", [("H", "A"), ("H", "B"), ("C", "H")])
    assert triangle_census(star).totals() == {t: 0 for t in TRIANGLE_TYPES}


def test_triangle_summary():
    s = triangle_summary(triangle_census(CYCLE))
    assert s.distribution == {"cycle": 1.0, "in": 0.0, "out": 0.0, "bridge": 0.0}
    assert s.participation["cycle"] == 1.0
    assert s.participation["in"] == 0.0
    empty = triangle_summary(triangle_census(NetworkSnapshot.from_edges("AB", [("A", "B")])))
    assert empty.distribution is None
    assert all(v == 0 for v in empty.participation.values())


@pytest.mark.parametrize("seed", range(30))
def test_triangle_census_matches_brute_force(seed):
    rng = random.Random(seed)
    snap = random_weighted_digraph(rng, rng.randint(3, 12), rng.choice([0.1, 0.3, 0.6]))
    census = triangle_census(snap)
    ref = brute_triangles(snap)
    for v in snap.nodes:
        assert census.node_counts(v) == ref[v]
    t = census.totals()
    assert t["in"] == t["out"] == t["bridge"]
    s = triangle_summary(census)
    for typ in TRIANGLE_TYPES:
        nonzero = sum(1 for v in snap.nodes if ref[v][typ] > 0)
        assert s.participation[typ] == pytest.approx(nonzero / len(snap.nodes), abs=1e-15)


# clustering

def test_clustering_examples():
    assert cyclic_clustering(CYCLE)[0] == 0.5
    sym = NetworkSnapshot.from_edges("ABC", {e: 5 for e in FULL3.weights})
    assert weighted_clustering(sym) == 1.0
    path = NetworkSnapshot.from_edges("ABC", [("A", "B"), ("B", "C")])
    assert list(cyclic_clustering(path)) == [0.0, 0.0, 0.0]
    assert weighted_clustering(path) == 0.0
    assert np.isnan(undirected_clustering(path)[0])
    assert undirected_clustering(path)[1] == 0.0


def test_cyclic_fagiolo_mode():
    # denominator k_in k_out - k_bil: 1 for every node of a 3-cycle
    assert list(cyclic_clustering(CYCLE, "fagiolo")) == [1.0, 1.0, 1.0]
    with pytest.raises(InvalidArgumentError):
        cyclic_clustering(CYCLE, "bogus")


@pytest.mark.parametrize("seed", range(25))
def test_clustering_matches_brute_force(seed):
    rng = random.Random(1000 + seed)
    snap = random_weighted_digraph(rng, rng.randint(3, 10), rng.choice([0.2, 0.4, 0.7]), integer=False)
    got = cyclic_clustering(snap)
    for g, r in zip(got, brute_cyclic(snap)):
        assert g == pytest.approx(r, rel=1e-12, abs=1e-15)
    assert weighted_clustering(snap) == pytest.approx(brute_weighted_clustering(snap), rel=1e-12, abs=1e-15)
    suite = clustering_suite(snap)
    ref = brute_undirected_clustering(snap)
    if ref is None:
        assert suite.mean_undirected is None
    else:
        assert suite.mean_undirected == pytest.approx(ref, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_weighted_clustering_scale_invariant(seed):
    snap = random_weighted_digraph(random.Random(seed), 8, 0.5)
    assert weighted_clustering(scaled(snap, 16)) == pytest.approx(weighted_clustering(snap), rel=1e-13)


# balance

def test_balance_examples():
    snap = NetworkSnapshot.from_edges("SABI", {("S", "A"): 5, ("S", "B"): 9, ("A", "B"): 3, ("B", "A"): 3})
    b = balance(snap)
    i = {v: k for k, v in enumerate(b.nodes)}
    assert b.structural[i["S"]] == -1.0 and b.functional[i["S"]] == -1.0
    assert b.structural[i["I"]] is None and b.functional[i["I"]] is None
    even = NetworkSnapshot.from_edges("AB", {("A", "B"): 4, ("B", "A"): 4})
    assert balance(even).structural == (0.0, 0.0)
    assert balance(even).functional == (0.0, 0.0)


def test_pearson():
    x = [1.0, 2.0, 3.5, 7.0]
    assert pearson(x, [3 * v - 2 for v in x]) == pytest.approx(1.0, abs=1e-12)
    assert pearson(x, [-v for v in x]) == pytest.approx(-1.0, abs=1e-12)
    assert pearson([1.0], [2.0]) is None
    assert pearson([1.0, 1.0], [2.0, 3.0]) is None


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=3, max_size=30),
    st.floats(0.1, 50), st.floats(-10, 10),
)
def test_pearson_affine_invariance(pairs, a, b):
    x = [p[0] for p in pairs]
    y = [p[1] for p in pairs]
    r = pearson(x, y)
    r2 = pearson([a * v + b for v in x], y)
    if r is not None and r2 is not None and np.std(x) > 1e-6 and np.std(y) > 1e-6:
        assert r2 == pytest.approx(r, abs=1e-9)


@pytest.mark.parametrize("seed", range(15))
def test_balance_bounds_and_sink(seed):
    snap = random_weighted_digraph(random.Random(seed), 12, 0.25)
    b = balance(snap)
    for v, s, f in zip(b.nodes, b.structural, b.functional):
        for x in (s, f):
            assert x is None or -1.0 <= x <= 1.0
        pure_sink = bool(snap.predecessors[v]) and not snap.successors[v]
        assert (s == 1.0) == pure_sink
    assert b.rho is None or -1.0 <= b.rho <= 1.0
    b2 = balance(scaled(snap, 4))
    assert b2.functional == b.functional


# alpha

def alpha_net(rows, nodes=("MK", "IL", "ES", "FR")):
    net = FlowNetwork(nodes)
    for o, d, y, f in rows:
        net.add_flow(o, d, y, f)
    return net


def test_alpha_examples():
    net = alpha_net([
        ("MK", "IL", 2004, 4), ("MK", "IL", 2008, 3528),
        ("ES", "FR", 2004, 50), ("ES", "FR", 2008, 50),
        ("FR", "ES", 2004, 70),
        ("IL", "MK", 2006, 10),
    ])
    rep = alpha_evolution(net, 2004, 2008)
    assert rep.alpha[("MK", "IL")] == 881
    assert rep.alpha[("ES", "FR")] == 0
    assert rep.alpha[("FR", "ES")] == -1
    assert rep.excluded == (("IL", "MK"),)
    assert ("IL", "MK") not in rep.alpha
    assert min(rep.alpha.values()) >= -1
    assert sum(rep.histogram_counts) == 3
    assert rep.zero_change_fraction == pytest.approx(1 / 3)
    assert rep.top(1)[0] == (("MK", "IL"), 881)


def test_alpha_errors():
    net = alpha_net([("MK", "IL", 2004, 4), ("MK", "IL", 2008, 8)])
    with pytest.raises(InvalidArgumentError):
        alpha_evolution(net, 2008, 2004)
    with pytest.raises(InvalidArgumentError):
        alpha_evolution(net, 2004, 2006)


@pytest.mark.parametrize("seed", range(5))
def test_alpha_scale_invariant(seed):
    rng = random.Random(seed)
    nodes = [f"c{i}" for i in range(6)]
    rows = [(a, b, y, rng.randint(1, 900)) for a in nodes for b in nodes if a != b
            for y in (2004, 2008) if rng.random() < 0.5]
    base = alpha_evolution(alpha_net(rows, nodes), 2004, 2008)
    big = alpha_evolution(alpha_net([(a, b, y, f * 8) for a, b, y, f in rows], nodes), 2004, 2008)
    assert big.alpha == base.alpha
    assert all(v >= -1 for v in base.alpha.values())


@pytest.mark.parametrize("seed", range(3))
def test_metrics_with_float_flows_finite(seed):
    snap = random_weighted_digraph(random.Random(seed), 10, 0.3, integer=False)
    suite = clustering_suite(snap)
    assert all(math.isfinite(x) for x in suite.cyclic)
