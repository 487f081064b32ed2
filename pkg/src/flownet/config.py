"""Run configuration stored as ``key = value`` lines.

Blank lines and lines starting with ``#`` are ignored.  Relative paths are
resolved against the directory of the config file.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .distributions import DEFAULT_QUADRANTS
from .errors import InvalidArgumentError, ParseError
from .geodesy import EARTH_RADIUS_KM

PATH_KEYS = ("countries", "flows", "airports", "routes")
LEVELS = ("low", "high")


def format_quadrants(mapping) -> str:
    return ",".join(f"{i}/{o}={mapping[(i, o)]}" for i in LEVELS for o in LEVELS)


def parse_quadrants(text: str) -> dict[tuple[str, str], str]:
    out = {}
    for item in text.split(","):
        try:
            levels, label = item.split("=")
            i, o = levels.strip().split("/")
        except ValueError:
            raise InvalidArgumentError(f"bad quadrant mapping entry {item!r}") from None
        out[(i.strip(), o.strip())] = label.strip()
    if set(out) != {(i, o) for i in LEVELS for o in LEVELS}:
        raise InvalidArgumentError("quadrant mapping must cover low/low, low/high, high/low, high/high")
    return out


def parse_years(text: str) -> tuple[int, int] | None:
    if not text:
        return None
    try:
        a, b = text.split(":")
        start, end = int(a), int(b)
    except ValueError:
        raise InvalidArgumentError(f"years must look like START:END, got {text!r}") from None
    if start > end:
        raise InvalidArgumentError(f"empty year range {text!r}")
    return start, end


@dataclass(frozen=True)
class RunConfig:
    countries: Path | None = None
    flows: Path | None = None
    airports: Path | None = None
    routes: Path | None = None
    years: tuple[int, int] | None = None
    bin_km: float = 1000.0
    earth_radius_km: float = EARTH_RADIUS_KM
    ensemble: int = 100
    seed: int | None = None
    restarts: int = 20
    swaps_per_edge: int = 10
    out: Path | None = None
    quadrant_mapping: dict = field(default_factory=lambda: dict(DEFAULT_QUADRANTS))
    alpha_start: int | None = None
    alpha_end: int | None = None
    cyclic_mode: str = "neighbors"

    def validate(self) -> "RunConfig":
        if self.ensemble < 1:
            raise InvalidArgumentError(f"ensemble must be >= 1, got {self.ensemble}")
        if self.restarts < 1:
            raise InvalidArgumentError(f"restarts must be >= 1, got {self.restarts}")
        if not self.bin_km > 0:
            raise InvalidArgumentError(f"bin_km must be positive, got {self.bin_km}")
        if not self.earth_radius_km > 0:
            raise InvalidArgumentError(f"earth_radius_km must be positive, got {self.earth_radius_km}")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.cyclic_mode not in ("neighbors", "fagiolo"):
            raise InvalidArgumentError(f"unknown cyclic_mode {self.cyclic_mode!r}")
        return self

    def require(self, *keys: str) -> None:
        for key in keys:
            val = getattr(self, key)
            if val is None:
                raise InvalidArgumentError(f"config key {key!r} is required for this command")
            if key in PATH_KEYS and not Path(val).is_file():
                raise InvalidArgumentError(f"{key} file not readable: {val}")

    def to_text(self, include_out: bool = True) -> str:
        lines = []
        for f in fields(self):
            if f.name == "out" and not include_out:
                continue
            val = getattr(self, f.name)
            if val is None:
                text = ""
            elif f.name == "years":
                text = f"{val[0]}:{val[1]}"
            elif f.name == "quadrant_mapping":
                text = format_quadrants(val)
            elif isinstance(val, float):
                text = repr(val)
            else:
                text = str(val)
            lines.append(f"{f.name} = {text}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        """Short SHA-256 of the canonical config text, output directory excluded."""
        return hashlib.sha256(self.to_text(include_out=False).encode()).hexdigest()[:16]

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None}).validate()


_CONVERT = {
    "years": parse_years,
    "bin_km": float,
    "earth_radius_km": float,
    "ensemble": int,
    "seed": int,
    "restarts": int,
    "swaps_per_edge": int,
    "quadrant_mapping": parse_quadrants,
    "alpha_start": int,
    "alpha_end": int,
    "cyclic_mode": str,
}


def parse_config(text: str, base_dir: Path | None = None, source: str = "<config>") -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(source, lineno, f"expected 'key = value', got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ParseError(source, lineno, f"unknown config key {key!r}")
        if val == "":
            values[key] = None if key != "quadrant_mapping" else dict(DEFAULT_QUADRANTS)
            continue
        try:
            if key in PATH_KEYS or key == "out":
                p = Path(val)
                values[key] = p if p.is_absolute() or base_dir is None else base_dir / p
            else:
                values[key] = _CONVERT[key](val)
        except (ValueError, InvalidArgumentError) as exc:
            raise ParseError(source, lineno, f"bad value for {key}: {exc}") from None
    try:
        return RunConfig(**values).validate()
    except InvalidArgumentError as exc:
        raise ParseError(source, None, str(exc)) from None


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, None, f"cannot read config: {exc.strerror}") from None
    return parse_config(text, path.parent, str(path))
