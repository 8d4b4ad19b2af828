"""Exception types shared across the toolkit."""

from __future__ import annotations


class TracelearnError(Exception):
    """Base class for all toolkit errors."""


class PddlSyntaxError(TracelearnError):
    """Malformed surface syntax. Carries the source position when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)


class UnsupportedConstructError(PddlSyntaxError):
    """Input uses a construct outside the supported STRIPS subset."""

    def __init__(self, construct: str, line: int | None = None, col: int | None = None):
        self.construct = construct
        super().__init__(f"unsupported construct: {construct}", line, col)


class ValidationError(TracelearnError):
    """Structurally well-formed input that violates a semantic rule."""


class SimulationError(TracelearnError):
    """Ground action cannot be interpreted against the domain."""
