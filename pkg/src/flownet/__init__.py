"""Analysis of directed, weighted, multi-year flow networks between countries
layered on an undirected infrastructure network."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    FlowNetError,
    InvalidArgumentError,
    NotFoundError,
    ParseError,
    RewireError,
)
from .model import (  # noqa: E402
    CountryRecord,
    CountryRegistry,
    FlowNetwork,
    InfrastructureNetwork,
    NetworkSnapshot,
    aggregate_years,
    degree,
)

__all__ = [
    "CountryRecord",
    "CountryRegistry",
    "FlowNetError",
    "FlowNetwork",
    "InfrastructureNetwork",
    "InvalidArgumentError",
    "NetworkSnapshot",
    "NotFoundError",
    "ParseError",
    "RewireError",
    "aggregate_years",
    "degree",
]
