import pytest

from tracelearn import (
    Atom,
    GroundAction,
    SokobanLevel,
    compile_level,
    parse_level,
    resolve_intent,
    run_plan,
    step,
    validate_trajectory,
)
from tracelearn.data import read_text
from tracelearn.errors import SimulationError, ValidationError
from tracelearn.simulator import parse_plan
from tracelearn.sokoban import render_grid


def corridor_state():
    """Three floor cells a-b-c, player on a, all nongoal."""
    atoms = {
        Atom("at", ("p1", "a")),
        Atom("clear", ("b",)),
        Atom("clear", ("c",)),
        Atom("move-dir", ("a", "b", "d")),
        Atom("move-dir", ("b", "a", "e")),
        Atom("move-dir", ("b", "c", "d")),
        Atom("move-dir", ("c", "b", "e")),
        Atom("is-nongoal", ("a",)),
        Atom("is-nongoal", ("b",)),
        Atom("is-nongoal", ("c",)),
    }
    objects = {"p1": "player", "a": "location", "b": "location", "c": "location",
               "d": "direction", "e": "direction"}
    return frozenset(atoms), objects


class TestStep:
    def test_move_into_clear_cell(self, sokoban):
        state, objects = corridor_state()
        result = step(state, GroundAction("move", ("p1", "a", "b", "d")), sokoban, objects)
        assert result.ok
        assert Atom("at", ("p1", "b")) in result.next_state
        assert Atom("at", ("p1", "a")) not in result.next_state
        assert Atom("clear", ("a",)) in result.next_state
        assert Atom("clear", ("b",)) not in result.next_state

    def test_move_into_wall_reports_violations(self, sokoban):
        state, objects = corridor_state()
        # w is a wall: no clear, no move-dir into it
        objects = {**objects, "w": "location"}
        result = step(state, GroundAction("move", ("p1", "a", "w", "d")), sokoban, objects)
        assert not result.ok
        assert Atom("clear", ("w",)) in result.violated_pos
        assert Atom("move-dir", ("a", "w", "d")) in result.violated_pos
        assert result.violated_neg == frozenset()

    def test_failure_preserves_state(self, sokoban):
        state, objects = corridor_state()
        result = step(state, GroundAction("move", ("p1", "b", "c", "d")), sokoban, objects)
        assert not result.ok and result.next_state is None

    def test_empty_precondition_schema_always_ok(self):
        from tracelearn import parse_domain

        d = parse_domain(
            "(define (domain d) (:predicates (p)) (:action a :parameters () :effect (p)))"
        )
        result = step(frozenset(), GroundAction("a", ()), d, {})
        assert result.ok and result.next_state == {Atom("p")}

    def test_unknown_schema(self, sokoban):
        with pytest.raises(SimulationError):
            step(frozenset(), GroundAction("teleport", ()), sokoban, {})

    def test_frame_property(self, sokoban):
        state, objects = corridor_state()
        action = GroundAction("move", ("p1", "a", "b", "d"))
        result = step(state, action, sokoban, objects)
        from tracelearn import ground

        g = ground(sokoban.actions["move"], action.args)
        touched = g.eff_add | g.eff_del
        assert result.next_state - touched == state - touched

    def test_determinism(self, sokoban):
        state, objects = corridor_state()
        action = GroundAction("move", ("p1", "a", "b", "d"))
        assert step(state, action, sokoban, objects) == step(state, action, sokoban, objects)


class TestRunPlan:
    def test_level1_solution_reaches_goal(self, sokoban, level1_problem):
        plan = parse_plan(read_text("plans", "level1-solution.plan"))
        t = run_plan(level1_problem, plan, sokoban)
        assert all(tr.ok for tr in t.transitions)
        assert level1_problem.goal_pos <= t.final_state
        validate_trajectory(t, sokoban)

    def test_empty_plan(self, sokoban, level1_problem):
        t = run_plan(level1_problem, [], sokoban)
        assert len(t) == 0 and t.init == level1_problem.init

    def test_wall_bump_changes_nothing_but_adds_transition(self, sokoban, level1_problem):
        plan = parse_plan(read_text("plans", "level1-solution.plan"))
        bump = GroundAction("move", ("player-01", "pos-01-01", "pos-01-00", "dir-up"))
        with_bump = run_plan(level1_problem, [bump] + plan, sokoban)
        without = run_plan(level1_problem, plan, sokoban)
        assert len(with_bump) == len(without) + 1
        assert not with_bump.transitions[0].ok
        assert with_bump.final_state == without.final_state

    def test_stop_on_failure(self, sokoban, level1_problem):
        plan = parse_plan(read_text("plans", "level1-solution.plan"))
        bump = GroundAction("move", ("player-01", "pos-01-01", "pos-01-00", "dir-up"))
        t = run_plan(level1_problem, [bump] + plan, sokoban, stop_on_failure=True)
        assert len(t) == 1 and not t.transitions[0].ok

    def test_unknown_object_in_plan(self, sokoban, level1_problem):
        plan = [GroundAction("move", ("player-99", "pos-01-01", "pos-02-01", "dir-right"))]
        with pytest.raises(ValidationError):
            run_plan(level1_problem, plan, sokoban)


class TestCompileLevel:
    def test_three_by_three_open_grid(self):
        level = SokobanLevel(("   ", " @ ", "   "))
        problem = compile_level(level)
        locations = [o for o, t in problem.objects.items() if t == "location"]
        assert len(locations) == 9
        move_dirs = [a for a in problem.init if a.pred == "move-dir"]
        # oracle: directed orthogonal adjacencies of a 3x3 grid
        expected = 0
        for r in range(3):
            for c in range(3):
                for dc, dr in ((0, 1), (0, -1), (1, 0), (-1, 0)):
                    if 0 <= c + dc < 3 and 0 <= r + dr < 3:
                        expected += 1
        assert len(move_dirs) == expected == 24
        clear = [a for a in problem.init if a.pred == "clear"]
        assert len(clear) == 8

    def test_stone_on_goal_gets_at_goal(self):
        problem = compile_level(SokobanLevel(("@* ",)))
        assert Atom("at-goal", ("stone-01",)) in problem.init

    def test_wall_border_has_no_move_dir_into_it(self, level1_problem):
        walls = {
            o
            for o, t in level1_problem.objects.items()
            if t == "location"
            and not any(a.pred in ("clear", "at") and o in a.args for a in level1_problem.init)
        }
        assert walls  # level1 is wall-bordered
        for atom in level1_problem.init:
            if atom.pred == "move-dir":
                assert atom.args[0] not in walls
                assert atom.args[1] not in walls

    def test_wall_locations_carry_neither_at_nor_clear(self, level1_problem):
        wall = "pos-00-00"
        assert wall in level1_problem.objects
        for atom in level1_problem.init:
            assert not (atom.pred == "at" and atom.args[1] == wall)
            assert not (atom.pred == "clear" and atom.args[0] == wall)
        assert Atom("is-nongoal", (wall,)) in level1_problem.init

    def test_player_count_enforced(self):
        with pytest.raises(ValidationError):
            SokobanLevel(("@@",))
        with pytest.raises(ValidationError):
            SokobanLevel(("  ",))

    def test_parse_level_requires_a_stone(self):
        with pytest.raises(ValidationError):
            parse_level("###\n#@#\n###\n")


class TestResolveIntent:
    def test_push_choice_follows_cell_beyond_stone(self, sokoban, level1_problem):
        plan = parse_plan(read_text("plans", "level1-solution.plan"))
        # after two moves the stone is adjacent with plain floor beyond
        state = run_plan(level1_problem, plan[:2], sokoban).final_state
        action = resolve_intent(state, "right", sokoban, level1_problem)
        assert action == GroundAction(
            "push-to-nongoal",
            ("player-01", "stone-01", "pos-03-01", "pos-04-01", "pos-05-01", "dir-right"),
        )
        # after the first push the goal cell lies beyond the stone
        state = run_plan(level1_problem, plan[:3], sokoban).final_state
        action = resolve_intent(state, "right", sokoban, level1_problem)
        assert action == GroundAction(
            "push-to-goal",
            ("player-01", "stone-01", "pos-04-01", "pos-05-01", "pos-06-01", "dir-right"),
        )

    def test_plain_move_when_target_empty(self, sokoban, level1_problem):
        action = resolve_intent(level1_problem.init, "right", sokoban, level1_problem)
        assert action == GroundAction(
            "move", ("player-01", "pos-01-01", "pos-02-01", "dir-right")
        )

    def test_move_into_wall_fails_at_step(self, sokoban, level1_problem):
        action = resolve_intent(level1_problem.init, "up", sokoban, level1_problem)
        assert action.name == "move"
        result = step(level1_problem.init, action, sokoban, level1_problem.objects)
        assert not result.ok

    def test_unknown_direction(self, sokoban, level1_problem):
        with pytest.raises(SimulationError):
            resolve_intent(level1_problem.init, "northwest", sokoban, level1_problem)


class TestRenderGrid:
    def test_round_trips_initial_layout(self, level1_problem):
        level = parse_level(read_text("levels", "level1.sok"))
        assert render_grid(level, level1_problem.init) == list(level.rows)
