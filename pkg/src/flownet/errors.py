"""Exception types shared across the package."""

from __future__ import annotations


class FlowNetError(Exception):
    """Base class for all errors raised by flownet."""


class InvalidArgumentError(FlowNetError, ValueError):
    """An argument is outside the domain an operation accepts."""


class NotFoundError(FlowNetError, KeyError):
    """A referenced node or record does not exist."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep messages readable.
        return str(self.args[0]) if self.args else ""


class ParseError(FlowNetError, ValueError):
    """An input file violates its schema. Carries the path and 1-based line number."""

    def __init__(self, path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        self.message = message
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


class RewireError(FlowNetError, RuntimeError):
    """Degree-preserving rewiring could not reach its swap target."""

    def __init__(self, message: str, seed: int | None = None):
        self.seed = seed
        super().__init__(message if seed is None else f"{message} (seed={seed})")
