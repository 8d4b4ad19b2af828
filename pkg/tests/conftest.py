from __future__ import annotations

from pathlib import Path

import pytest

from tracelearn import compile_level, parse_domain, parse_level, parse_trace
from tracelearn.data import read_text

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def sokoban():
    return parse_domain(read_text("domains", "sokoban.pddl"))


@pytest.fixture(scope="session")
def hanoi():
    return parse_domain(read_text("domains", "hanoi.pddl"))


@pytest.fixture(scope="session")
def npuzzle():
    return parse_domain(read_text("domains", "n-puzzle.pddl"))


@pytest.fixture(scope="session")
def level1():
    return parse_level(read_text("levels", "level1.sok"))


@pytest.fixture(scope="session")
def level1_problem(level1):
    return compile_level(level1)


@pytest.fixture(scope="session")
def level1_trace(sokoban):
    return parse_trace(read_text("traces", "level1-solution.trace"), sokoban)


@pytest.fixture(scope="session")
def tutorial_trace(sokoban):
    return parse_trace(read_text("traces", "level1-tutorial.trace"), sokoban)
