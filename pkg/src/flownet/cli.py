"""Command-line front end: ``flownet <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .config import RunConfig, load_config, parse_years
from .errors import FlowNetError
from .report import SECTIONS, run

FIXTURE_CONFIG = "run.cfg"


def fixture_config_path() -> Path:
    return Path(str(resources.files("flownet") / "data" / "fixture" / FIXTURE_CONFIG))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flownet",
        description="Analyse directed multi-year flow networks over an infrastructure graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "ingest-check": "parse and validate inputs, print a summary",
        "metrics": "density, degrees, reciprocity, clustering, balance, alpha, path lengths",
        "triangles": "per-node directed triangle census and summary",
        "communities": "modularity communities, raw and population-normalised",
        "profiles": "distance-indexed flow and link profiles, argmax matrices",
        "nullmodel": "configuration-model ensemble statistics",
        "balance": "structural/functional balance and degree quadrants",
        "alpha": "relative flow change between two years",
        "paths": "chemical distance matrix and path-length histogram",
        "report": "all of the above",
    }
    for name in ("ingest-check", "metrics", "triangles", "communities", "profiles",
                 "nullmodel", "balance", "alpha", "paths", "report"):
        p = sub.add_parser(name, help=helps[name])
        src = p.add_mutually_exclusive_group()
        src.add_argument("--config", type=Path, help="key = value run configuration file")
        src.add_argument("--fixture", action="store_true", help="use the bundled example dataset")
        p.add_argument("--out", type=Path, help="output directory")
        p.add_argument("--seed", type=int, help="base RNG seed (unsigned 64-bit)")
        p.add_argument("--years", type=parse_years, help="inclusive year range START:END")
        p.add_argument("--bin-km", type=float, help="geographic bin width in km")
        p.add_argument("--ensemble", type=int, help="number of null-model instances")
        p.add_argument("--restarts", type=int, help="community detection restarts")
        for key in ("countries", "flows", "airports", "routes"):
            p.add_argument(f"--{key}", type=Path, help=f"{key}.csv path")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    if args.fixture:
        config = load_config(fixture_config_path())
    elif args.config is not None:
        config = load_config(args.config)
    else:
        config = RunConfig()
    return config.with_overrides(
        out=args.out,
        seed=args.seed,
        years=args.years,
        bin_km=args.bin_km,
        ensemble=args.ensemble,
        restarts=args.restarts,
        countries=args.countries,
        flows=args.flows,
        airports=args.airports,
        routes=args.routes,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        if args.command != "ingest-check" and config.out is None:
            raise FlowNetError("an output directory is required (config 'out' or --out)")
        if args.command == "report":
            config.require("countries", "flows", "airports", "routes")
        outputs = run(args.command, config)
        if args.command == "ingest-check":
            print(outputs.files["ingest.json"], end="")
            if config.out is not None:
                outputs.commit(config.out)
            return 0
        written = outputs.commit(config.out)
    except (FlowNetError, OSError) as exc:
        print(f"flownet: error: {exc}", file=sys.stderr)
        return 1
    summary = {"command": args.command, "out": str(config.out), "files": [str(p.relative_to(config.out)) for p in written]}
    print(json.dumps(summary, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
