import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flownet import (
    CountryRecord,
    CountryRegistry,
    FlowNetwork,
    InvalidArgumentError,
    NetworkSnapshot,
    NotFoundError,
    aggregate_years,
    degree,
)


def make_net(flows, nodes=("A", "B", "C", "D")):
    net = FlowNetwork(nodes)
    for o, d, y, f in flows:
        net.add_flow(o, d, y, f)
    return net


def test_aggregate_sums_years_in_range():
    net = make_net([("A", "B", 2004, 10), ("A", "B", 2008, 5)])
    assert aggregate_years(net, 2004, 2008).weights[("A", "B")] == 15


def test_aggregate_drops_edges_without_in_range_flow():
    net = make_net([("A", "B", 2004, 10)])
    snap = aggregate_years(net, 2006, 2008)
    assert ("A", "B") not in snap.weights
    assert snap.nodes == ("A", "B", "C", "D")


def test_aggregate_identity_for_single_year_flows():
    flows = [("A", "B", 2004, 3), ("B", "C", 2005, 7), ("C", "A", 2006, 11)]
    snap = aggregate_years(make_net(flows, ("A", "B", "C")), 2004, 2006)
    assert dict(snap.weights) == {("A", "B"): 3, ("B", "C"): 7, ("C", "A"): 11}


def test_aggregate_rejects_empty_range():
    with pytest.raises(InvalidArgumentError):
        aggregate_years(make_net([]), 2008, 2004)


def test_degree_examples():
    snap = NetworkSnapshot.from_edges("ABCD", [("A", "B"), ("A", "C")])
    assert degree(snap, "A", "out") == 2
    assert degree(snap, "D", "in") == 0 and degree(snap, "D", "out") == 0
    cyc = NetworkSnapshot.from_edges("ABC", [("A", "B"), ("B", "C"), ("C", "A")])
    assert degree(cyc, "A", "in") == 1 and degree(cyc, "A", "out") == 1
    with pytest.raises(NotFoundError):
        degree(snap, "Z", "in")


@pytest.mark.parametrize(
    "flow, exc",
    [
        (("A", "A", 2004, 5), InvalidArgumentError),
        (("A", "B", 2004, 0), InvalidArgumentError),
        (("A", "B", 2004, -3), InvalidArgumentError),
        (("A", "Z", 2004, 3), NotFoundError),
    ],
)
def test_flow_network_rejects_bad_flows(flow, exc):
    with pytest.raises(exc):
        make_net([flow])


def test_snapshot_is_read_only():
    snap = NetworkSnapshot.from_edges("AB", [("A", "B")])
    with pytest.raises(TypeError):
        snap.weights[("B", "A")] = 1
    with pytest.raises(AttributeError):
        snap.nodes = ("X",)


def test_country_record_validation():
    CountryRecord("PT", "Portugal", 39.56, -7.84, 10300000)
    with pytest.raises(InvalidArgumentError):
        CountryRecord("XX", "X", 95.0, 0.0)
    with pytest.raises(InvalidArgumentError):
        CountryRecord("XX", "X", 0.0, -180.0)
    with pytest.raises(InvalidArgumentError):
        CountryRecord("XX", "X", 0.0, 0.0, 0)
    reg = CountryRegistry([CountryRecord("PT", "Portugal", 39.56, -7.84)])
    with pytest.raises(InvalidArgumentError):
        reg.add(CountryRecord("PT", "Portugal again", 39.0, -8.0))


edge_lists = st.lists(
    st.tuples(st.integers(0, 7), st.integers(0, 7), st.integers(2004, 2008), st.integers(1, 500)),
    max_size=40,
)


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_degree_sums_equal_link_count(raw):
    nodes = [f"n{i}" for i in range(8)]
    net = FlowNetwork(nodes)
    for a, b, y, f in raw:
        if a != b and net.flow(nodes[a], nodes[b], y) == 0:
            net.add_flow(nodes[a], nodes[b], y, f)
    snap = aggregate_years(net, 2004, 2008)
    assert sum(degree(snap, v, "out") for v in nodes) == snap.n_edges
    assert sum(degree(snap, v, "in") for v in nodes) == snap.n_edges
    # aggregation commutes with reading weights
    for (o, d), w in snap.weights.items():
        assert w == sum(net.edges[(o, d)].values())
