"""Regenerate the bundled example dataset under src/flownet/data/fixture/."""

from pathlib import Path

from flownet.ingest import (
    AirportRecord,
    RouteRecord,
    write_airports,
    write_countries,
    write_flows,
    write_routes,
)
from flownet.model import CountryRecord, CountryRegistry
from flownet.synthetic import gravity_flows

OUT = Path(__file__).resolve().parents[1] / "src" / "flownet" / "data" / "fixture"

COUNTRIES = [
    ("AU", "Australia", -27.0, 133.0, 20700000),
    ("BR", "Brazil", -10.0, -55.0, 187000000),
    ("BW", "Botswana", -22.0, 24.0, 1900000),
    ("CN", "China", 35.0, 105.0, 1311000000),
    ("DE", "Germany", 51.0, 9.0, 82400000),
    ("ES", "Spain", 40.0, -4.0, 44100000),
    ("FR", "France", 46.0, 2.0, 63000000),
    ("GB", "United Kingdom", 54.0, -2.0, 60800000),
    ("IN", "India", 20.0, 77.0, 1117000000),
    ("JP", "Japan", 36.0, 138.0, 127800000),
    ("KE", "Kenya", 1.0, 38.0, 36800000),
    ("PT", "Portugal", 39.56, -7.84, 10300000),
    ("TV", "Tuvalu", -8.0, 178.0, 10000),
    ("US", "United States", 38.0, -97.0, 299000000),
    ("ZA", "South Africa", -29.0, 24.0, 48000000),
]

AIRPORTS = [
    ("SYD", "AU"), ("GRU", "BR"), ("GBE", "BW"), ("PEK", "CN"), ("FRA", "DE"),
    ("MUC", "DE"), ("MAD", "ES"), ("BCN", "ES"), ("CDG", "FR"), ("LHR", "GB"),
    ("DEL", "IN"), ("NRT", "JP"), ("NBO", "KE"), ("LIS", "PT"), ("JFK", "US"),
    ("LAX", "US"), ("JNB", "ZA"),
]

ROUTES = [
    ("MAD", "FRA"), ("FRA", "NBO"), ("NBO", "GBE"), ("MAD", "BCN"), ("BCN", "FRA"),
    ("MAD", "LIS"), ("BCN", "CDG"), ("MAD", "LHR"), ("MAD", "JFK"), ("MAD", "GRU"),
    ("FRA", "CDG"), ("MUC", "LHR"), ("FRA", "JFK"), ("FRA", "PEK"), ("MUC", "DEL"),
    ("FRA", "NRT"), ("CDG", "LHR"), ("CDG", "JFK"), ("LHR", "JFK"), ("LHR", "DEL"),
    ("LHR", "SYD"), ("JFK", "GRU"), ("LAX", "NRT"), ("LAX", "PEK"), ("JFK", "LAX"),
    ("NBO", "JNB"), ("NBO", "DEL"), ("JNB", "GBE"), ("JNB", "SYD"), ("PEK", "NRT"),
    ("PEK", "SYD"), ("DEL", "PEK"), ("GBE", "NBO"),
]


def main() -> None:
    registry = CountryRegistry(CountryRecord(*row) for row in COUNTRIES)
    # Tuvalu stays isolated: no flows, no airports.
    active = CountryRegistry(r for r in registry.values() if r.code != "TV")
    flows = gravity_flows(active, n_links=80, seed=2004, decay_km=4000.0)
    if flows.flow("ES", "BW", 2004) == 0:
        flows.add_flow("ES", "BW", 2004, 120)
    for code in registry:
        flows.add_node(code)
    write_countries(registry, OUT / "countries.csv")
    write_flows(flows, OUT / "flows.csv")
    write_airports(
        (AirportRecord(a, c, registry[c].centroid_lat, registry[c].centroid_lon) for a, c in AIRPORTS),
        OUT / "airports.csv",
    )
    write_routes((RouteRecord(a, b) for a, b in ROUTES), OUT / "routes.csv")


if __name__ == "__main__":
    main()
