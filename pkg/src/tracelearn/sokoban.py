"""Sokoban text levels and their compilation into typed STRIPS problems.

Level glyphs follow the community standard: ``#`` wall, space floor,
``.`` goal, ``@`` player, ``+`` player on goal, ``$`` stone, ``*`` stone
on goal. Compilation emits one location object per grid cell, walls
included; wall cells carry neither an ``at`` nor a ``clear`` atom, which
is exactly what makes them impassable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import SimulationError, ValidationError
from .pddl.model import Atom, Domain, GroundAction, Problem

WALL = "#"
FLOOR = " "
GOAL = "."
PLAYER = "@"
PLAYER_ON_GOAL = "+"
STONE = "$"
STONE_ON_GOAL = "*"

_GLYPHS = {WALL, FLOOR, GOAL, PLAYER, PLAYER_ON_GOAL, STONE, STONE_ON_GOAL}

SOKOBAN_DOMAIN_NAME = "sokoban-sequential"

# direction name -> (column delta, row delta); rows grow downward
DIRECTION_DELTAS = {
    "up": (0, -1),
    "down": (0, 1),
    "left": (-1, 0),
    "right": (1, 0),
}

_LOC_RE = re.compile(r"^pos-(\d+)-(\d+)$")


@dataclass(frozen=True)
class SokobanLevel:
    rows: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValidationError("level has no rows")
        width = max(len(r) for r in self.rows)
        object.__setattr__(self, "rows", tuple(r.ljust(width) for r in self.rows))
        bad = {c for r in self.rows for c in r} - _GLYPHS
        if bad:
            raise ValidationError(f"unknown level glyphs: {sorted(bad)}")
        players = [c for r in self.rows for c in r if c in (PLAYER, PLAYER_ON_GOAL)]
        if len(players) != 1:
            raise ValidationError(f"level must contain exactly one player, found {len(players)}")

    @property
    def width(self) -> int:
        return len(self.rows[0])

    @property
    def height(self) -> int:
        return len(self.rows)

    def cell(self, col: int, row: int) -> str:
        return self.rows[row][col]

    def stone_count(self) -> int:
        return sum(r.count(STONE) + r.count(STONE_ON_GOAL) for r in self.rows)


def parse_level(text: str) -> SokobanLevel:
    """Read a `.sok` level. Blank and `;` comment lines are skipped.

    Playability rules are enforced here (at least one stone); the
    SokobanLevel type itself only demands a single player so synthetic
    stoneless grids remain constructible in code.
    """
    rows = [
        line.rstrip("\n")
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith(";")
    ]
    level = SokobanLevel(tuple(rows))
    if level.stone_count() == 0:
        raise ValidationError("level has no stones")
    return level


def location_name(col: int, row: int) -> str:
    return f"pos-{col:02d}-{row:02d}"


def parse_location(name: str) -> tuple[int, int]:
    m = _LOC_RE.match(name)
    if m is None:
        raise SimulationError(f"location {name!r} does not follow the pos-COL-ROW convention")
    return int(m.group(1)), int(m.group(2))


def compile_level(level: SokobanLevel) -> Problem:
    """Encode a level as a Problem over the Sokoban domain signature.

    Every cell becomes a location; move-dir atoms connect orthogonally
    adjacent non-wall cells; every location is flagged is-goal or
    is-nongoal; clear marks empty floor/goal cells; wall locations get
    neither at nor clear.
    """
    objects: dict[str, str] = {f"dir-{d}": "direction" for d in sorted(DIRECTION_DELTAS)}
    init: set[Atom] = set()
    goal_pos: set[Atom] = set()

    stones = 0
    for row in range(level.height):
        for col in range(level.width):
            loc = location_name(col, row)
            objects[loc] = "location"
            glyph = level.cell(col, row)
            if glyph in (GOAL, PLAYER_ON_GOAL, STONE_ON_GOAL):
                init.add(Atom("is-goal", (loc,)))
            else:
                init.add(Atom("is-nongoal", (loc,)))
            if glyph in (PLAYER, PLAYER_ON_GOAL):
                objects["player-01"] = "player"
                init.add(Atom("at", ("player-01", loc)))
            elif glyph in (STONE, STONE_ON_GOAL):
                stones += 1
                stone = f"stone-{stones:02d}"
                objects[stone] = "stone"
                init.add(Atom("at", (stone, loc)))
                if glyph == STONE_ON_GOAL:
                    init.add(Atom("at-goal", (stone,)))
                goal_pos.add(Atom("at-goal", (stone,)))
            elif glyph in (FLOOR, GOAL):
                init.add(Atom("clear", (loc,)))

    for row in range(level.height):
        for col in range(level.width):
            if level.cell(col, row) == WALL:
                continue
            for direction, (dc, dr) in DIRECTION_DELTAS.items():
                c2, r2 = col + dc, row + dr
                if 0 <= c2 < level.width and 0 <= r2 < level.height and level.cell(c2, r2) != WALL:
                    init.add(
                        Atom(
                            "move-dir",
                            (location_name(col, row), location_name(c2, r2), f"dir-{direction}"),
                        )
                    )

    return Problem(
        name="sokoban-level",
        domain_name=SOKOBAN_DOMAIN_NAME,
        objects=objects,
        init=frozenset(init),
        goal_pos=frozenset(goal_pos),
    )


def _player_position(state: frozenset, objects: dict[str, str], domain: Domain) -> tuple[str, str]:
    players = [o for o, t in objects.items() if domain.types.is_subtype(t, "player")]
    if len(players) != 1:
        raise SimulationError(f"expected exactly one player object, found {len(players)}")
    player = players[0]
    at = [a for a in state if a.pred == "at" and a.args[0] == player]
    if len(at) != 1:
        raise SimulationError(f"expected exactly one at atom for {player!r}, found {len(at)}")
    return player, at[0].args[1]


def _occupant(state: frozenset, loc: str, player: str) -> str | None:
    for a in state:
        if a.pred == "at" and a.args[1] == loc and a.args[0] != player:
            return a.args[0]
    return None


def _nearest_wall(objects: dict[str, str], state: frozenset, target: tuple[int, int]) -> str | None:
    """Wall = location with neither at nor clear attached in `state`."""
    occupied = {a.args[1] for a in state if a.pred == "at"}
    clear = {a.args[0] for a in state if a.pred == "clear"}
    best: tuple[int, str] | None = None
    for obj, typ in objects.items():
        if typ != "location" or obj in occupied or obj in clear:
            continue
        col, row = parse_location(obj)
        dist = abs(col - target[0]) + abs(row - target[1])
        if best is None or (dist, obj) < best:
            best = (dist, obj)
    return best[1] if best else None


def resolve_intent(
    state: frozenset, direction: str, domain: Domain, problem: Problem
) -> GroundAction:
    """Map a directional keypress to the ground action it attempts.

    A stone in the target cell makes this a push (goal/nongoal chosen by
    the cell beyond the stone); otherwise it is a move, possibly doomed to
    fail when the target is a wall. Off-grid intents synthesize a failed
    move onto the nearest wall location so every input stays expressible
    as a ground action.
    """
    if direction not in DIRECTION_DELTAS:
        raise SimulationError(f"unknown direction {direction!r}")
    dc, dr = DIRECTION_DELTAS[direction]
    dir_obj = f"dir-{direction}"
    if dir_obj not in problem.objects:
        raise SimulationError(f"problem has no direction object {dir_obj!r}")
    player, ploc = _player_position(state, problem.objects, domain)
    col, row = parse_location(ploc)
    tcol, trow = col + dc, row + dr
    target = location_name(tcol, trow)

    if target not in problem.objects:
        wall = _nearest_wall(problem.objects, state, (tcol, trow))
        if wall is None:
            raise SimulationError(f"direction {direction!r} leaves the grid and no wall location exists")
        return GroundAction("move", (player, ploc, wall, dir_obj))

    stone = _occupant(state, target, player)
    if stone is not None:
        bcol, brow = tcol + dc, trow + dr
        beyond = location_name(bcol, brow)
        if beyond not in problem.objects:
            return GroundAction("move", (player, ploc, target, dir_obj))
        schema = "push-to-goal" if Atom("is-goal", (beyond,)) in state else "push-to-nongoal"
        return GroundAction(schema, (player, stone, ploc, target, beyond, dir_obj))
    return GroundAction("move", (player, ploc, target, dir_obj))


def render_grid(level: SokobanLevel, state: frozenset) -> list[str]:
    """Redraw the level rows using walls/goals from the level and
    player/stone placement from `state`."""
    goals = {
        (c, r)
        for r in range(level.height)
        for c in range(level.width)
        if level.cell(c, r) in (GOAL, PLAYER_ON_GOAL, STONE_ON_GOAL)
    }
    grid = [
        [WALL if level.cell(c, r) == WALL else (GOAL if (c, r) in goals else FLOOR) for c in range(level.width)]
        for r in range(level.height)
    ]
    for atom in state:
        if atom.pred != "at":
            continue
        col, row = parse_location(atom.args[1])
        on_goal = (col, row) in goals
        if atom.args[0].startswith("player"):
            grid[row][col] = PLAYER_ON_GOAL if on_goal else PLAYER
        else:
            grid[row][col] = STONE_ON_GOAL if on_goal else STONE
    return ["".join(r) for r in grid]
