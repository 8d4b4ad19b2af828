#!/usr/bin/env python3
"""Regenerate the bundled traces (and level3) from levels and plans.

Everything here is deterministic: fixed plans, fixed seed for the level3
walk. Rerunning must reproduce the committed files byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import replace
from pathlib import Path

from tracelearn import (
    compile_level,
    parse_domain,
    parse_level,
    parse_plan,
    parse_problem,
    resolve_intent,
    run_plan,
    step,
    write_trace,
)
from tracelearn.pddl.model import Atom
from tracelearn.trace import Trajectory, Transition

DATA = Path(__file__).resolve().parent.parent / "src" / "tracelearn" / "data"


def read(*parts: str) -> str:
    return (DATA.joinpath(*parts)).read_text(encoding="utf-8")


def write(content: str, *parts: str) -> None:
    path = DATA.joinpath(*parts)
    path.write_text(content, encoding="utf-8")
    print(f"wrote {path} ({len(content)} bytes)")


def simulate_to_trace(domain_file: str, level_or_problem: str, plan_file: str, out: str) -> None:
    domain = parse_domain(read("domains", domain_file))
    if level_or_problem.endswith(".sok"):
        problem = compile_level(parse_level(read("levels", level_or_problem)))
    else:
        problem = parse_problem(read("problems", level_or_problem), domain)
    plan = parse_plan(read("plans", plan_file))
    trajectory = run_plan(problem, plan, domain)
    bad = [t for t in trajectory.transitions if not t.ok]
    assert not bad, f"{plan_file}: unexpected failures {bad}"
    write(write_trace(trajectory), "traces", out)


def tutorial_trace() -> None:
    """Level1 walkthrough with three engineered failed moves.

    The init gains one move-dir atom pointing into the wall above the
    corridor so the wall bump violates only clear; the other two failures
    each violate exactly one other precondition (at via a move from the
    stone's cell, move-dir via a wrong-direction move).
    """
    domain = parse_domain(read("domains", "sokoban.pddl"))
    problem = compile_level(parse_level(read("levels", "level1.sok")))
    extra = Atom("move-dir", ("pos-02-01", "pos-02-00", "dir-up"))
    problem = replace(problem, init=problem.init | {extra})
    plan = parse_plan(read("plans", "level1-tutorial.plan"))
    trajectory = run_plan(problem, plan, domain)
    outcomes = [t.ok for t in trajectory.transitions]
    assert outcomes == [True, False, True, False, False, True], outcomes
    write(write_trace(trajectory), "traces", "level1-tutorial.trace")


def build_level3() -> None:
    """A larger pillared room, five stones, five goals."""
    width, height = 15, 11
    rows = [["#"] * width for _ in range(height)]
    for r in range(1, height - 1):
        for c in range(1, width - 1):
            rows[r][c] = " "
    for r in range(2, height - 1, 3):
        for c in range(3, width - 1, 4):
            rows[r][c] = "#"
    for c, r in [(5, 1), (9, 3), (2, 5), (11, 7), (6, 9)]:
        rows[r][c] = "$"
    for c, r in [(1, 1), (13, 1), (7, 5), (1, 9), (13, 9)]:
        rows[r][c] = "."
    rows[5][5] = "@"
    text = "\n".join("".join(r) for r in rows) + "\n"
    parse_level(text)  # sanity
    write(text, "levels", "level3.sok")


def level3_walk(steps: int = 260, seed: int = 2024) -> None:
    """Seeded random walk over level3 keeping only applicable actions."""
    domain = parse_domain(read("domains", "sokoban.pddl"))
    problem = compile_level(parse_level(read("levels", "level3.sok")))
    rng = random.Random(seed)
    state = problem.init
    transitions = []
    while len(transitions) < steps:
        directions = ["up", "down", "left", "right"]
        rng.shuffle(directions)
        for direction in directions:
            action = resolve_intent(state, direction, domain, problem)
            result = step(state, action, domain, problem.objects)
            if result.ok:
                transitions.append(Transition(state, action, True, result.next_state))
                state = result.next_state
                break
        else:
            break
    trajectory = Trajectory(
        objects=dict(problem.objects), init=problem.init, transitions=tuple(transitions)
    )
    names = {t.action.name for t in trajectory.transitions}
    print(f"level3 walk: {len(trajectory)} transitions, actions seen: {sorted(names)}")
    write(write_trace(trajectory), "traces", "level3-walk.trace")


def main() -> None:
    build_level3()
    simulate_to_trace("sokoban.pddl", "level1.sok", "level1-solution.plan", "level1-solution.trace")
    simulate_to_trace("sokoban.pddl", "level2.sok", "level2-solution.plan", "level2-solution.trace")
    simulate_to_trace("hanoi.pddl", "hanoi-3.pddl", "hanoi-3.plan", "hanoi-3.trace")
    simulate_to_trace("n-puzzle.pddl", "npuzzle-8.pddl", "npuzzle-8.plan", "npuzzle-8.trace")
    tutorial_trace()
    level3_walk()


if __name__ == "__main__":
    main()
