"""Access to the bundled domains, levels, plans, problems and traces."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path


def data_path(*parts: str) -> Path:
    """Filesystem path of a bundled data file or directory."""
    root = files(__package__)
    for part in parts:
        root = root / part
    return Path(str(root))


def read_text(*parts: str) -> str:
    return data_path(*parts).read_text(encoding="utf-8")
