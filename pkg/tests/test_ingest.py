import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flownet.errors import ParseError
from flownet.ingest import (
    AirportRecord,
    RouteRecord,
    coarse_grain,
    load_airports,
    load_countries,
    load_flows,
    load_routes,
    read_snapshot,
    write_airports,
    write_countries,
    write_flows,
    write_routes,
    write_snapshot,
)
from flownet.model import aggregate_years

HEADER = "code,name,lat,lon,population\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


@pytest.fixture
def registry(tmp_path):
    return load_countries(write(tmp_path, "c.csv", HEADER + "ES,Spain,40,-4,44100000\nBW,Botswana,-22,24,\n"))


def test_load_countries_row(tmp_path):
    reg = load_countries(write(tmp_path, "c.csv", HEADER + "PT,Portugal,39.56,-7.84,10300000\n"))
    rec = reg["PT"]
    assert (rec.name, rec.centroid_lat, rec.centroid_lon, rec.population) == ("Portugal", 39.56, -7.84, 10300000)


@pytest.mark.parametrize(
    "body, line",
    [
        ("PT,Portugal,39.56,-7.84,1\nPT,Portugal,39.56,-7.84,1\n", 3),
        ("PT,Portugal,95.0,-7.84,1\n", 2),
        ("PT,Portugal,abc,-7.84,1\n", 2),
        ("PT,Portugal,39.5\n", 2),
    ],
)
def test_load_countries_errors_name_row(tmp_path, body, line):
    with pytest.raises(ParseError) as info:
        load_countries(write(tmp_path, "c.csv", HEADER + body))
    assert info.value.line == line
    assert "c.csv" in str(info.value)


def test_missing_column(tmp_path):
    with pytest.raises(ParseError, match="missing column"):
        load_countries(write(tmp_path, "c.csv", "code,name,lat\nPT,Portugal,1\n"))


def test_missing_file_names_path(tmp_path):
    with pytest.raises(ParseError, match="nope.csv"):
        load_countries(tmp_path / "nope.csv")


def test_load_flows(tmp_path, registry):
    net = load_flows(write(tmp_path, "f.csv", "origin,destination,year,tourists\nES,BW,2006,1200\n"), registry)
    assert net.flow("ES", "BW", 2006) == 1200


@pytest.mark.parametrize(
    "row, msg",
    [("ES,ES,2006,50", "self-loop"), ("ES,BW,2006,0", "positive"), ("ES,XX,2006,5", "unknown")],
)
def test_load_flows_errors(tmp_path, registry, row, msg):
    with pytest.raises(ParseError, match=msg) as info:
        load_flows(write(tmp_path, "f.csv", f"origin,destination,year,tourists\n{row}\n"), registry)
    assert info.value.line == 2


AIRPORTS = [
    AirportRecord("MAD", "ES", 40.5, -3.6),
    AirportRecord("BCN", "ES", 41.3, 2.1),
    AirportRecord("FRA", "DE", 50.0, 8.6),
    AirportRecord("NBO", "KE", -1.3, 36.9),
    AirportRecord("GBE", "BW", -24.6, 25.9),
]


def pairs(infra):
    return set(infra.sorted_edges())


def test_coarse_grain_figure_chain():
    routes = [RouteRecord("MAD", "FRA"), RouteRecord("FRA", "NBO"), RouteRecord("NBO", "GBE")]
    assert pairs(coarse_grain(AIRPORTS, routes)) == {("DE", "ES"), ("DE", "KE"), ("BW", "KE")}


def test_coarse_grain_drops_domestic_and_dedups():
    assert pairs(coarse_grain(AIRPORTS, [RouteRecord("MAD", "BCN")])) == set()
    infra = coarse_grain(AIRPORTS, [RouteRecord("MAD", "FRA"), RouteRecord("BCN", "FRA")])
    assert pairs(infra) == {("DE", "ES")}


def test_coarse_grain_unresolvable_airport():
    with pytest.raises(ParseError):
        coarse_grain(AIRPORTS, [RouteRecord("MAD", "XXX")])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=20))
def test_coarse_grain_symmetric_and_duplication_idempotent(raw):
    routes = [RouteRecord(AIRPORTS[a].airport_id, AIRPORTS[b].airport_id) for a, b in raw]
    infra = coarse_grain(AIRPORTS, routes)
    for a, b in infra.sorted_edges():
        assert a != b
        assert infra.has_edge(a, b) and infra.has_edge(b, a)
    reversed_dupes = routes + [RouteRecord(r.destination_airport, r.source_airport) for r in routes]
    assert coarse_grain(AIRPORTS, reversed_dupes) == infra


def test_round_trip_files(tmp_path, fixture_dir):
    reg = load_countries(fixture_dir / "countries.csv")
    net = load_flows(fixture_dir / "flows.csv", reg)
    airports = load_airports(fixture_dir / "airports.csv", reg)
    routes = load_routes(fixture_dir / "routes.csv")
    write_countries(reg, tmp_path / "countries.csv")
    write_flows(net, tmp_path / "flows.csv")
    write_airports(airports, tmp_path / "airports.csv")
    write_routes(routes, tmp_path / "routes.csv")
    reg2 = load_countries(tmp_path / "countries.csv")
    assert list(reg2.values()) == list(reg.values())
    net2 = load_flows(tmp_path / "flows.csv", reg2)
    assert dict(net2.edges) == dict(net.edges)
    assert load_airports(tmp_path / "airports.csv") == airports
    assert load_routes(tmp_path / "routes.csv") == routes


def test_snapshot_round_trip(tmp_path, fixture_dir):
    reg = load_countries(fixture_dir / "countries.csv")
    snap = aggregate_years(load_flows(fixture_dir / "flows.csv", reg), 2004, 2008)
    write_snapshot(snap, tmp_path / "snap.csv")
    assert read_snapshot(tmp_path / "snap.csv", reg, (2004, 2008)) == snap
