import pytest

from tracelearn import Atom, GroundAction, Trajectory, Transition, parse_domain, run_plan
from tracelearn.data import read_text
from tracelearn.errors import ValidationError
from tracelearn.learner import step1_successful
from tracelearn.simulator import parse_plan


def single_move_trajectory(sokoban, level1_problem):
    plan = [GroundAction("move", ("player-01", "pos-01-01", "pos-02-01", "dir-right"))]
    return run_plan(level1_problem, plan, sokoban)


# Hand-derived oracle for one move in the level1 corridor. The candidate
# fluent space F for a move binding (player, from, to, dir) holds twelve
# atoms: at/clear over {from,to}, is-goal/is-nongoal over {from,to}, and
# four move-dir combinations. Five are true in the pre-state, seven false.
MOVE_PRE_POS = {
    Atom("at", ("?p", "?from")),
    Atom("clear", ("?to",)),
    Atom("move-dir", ("?from", "?to", "?dir")),
    Atom("is-nongoal", ("?from",)),
    Atom("is-nongoal", ("?to",)),
}
MOVE_PRE_NEG = {
    Atom("at", ("?p", "?to")),
    Atom("clear", ("?from",)),
    Atom("is-goal", ("?from",)),
    Atom("is-goal", ("?to",)),
    Atom("move-dir", ("?to", "?from", "?dir")),
    Atom("move-dir", ("?from", "?from", "?dir")),
    Atom("move-dir", ("?to", "?to", "?dir")),
}
MOVE_EFF_ADD = {Atom("at", ("?p", "?to")), Atom("clear", ("?from",))}
MOVE_EFF_DEL = {Atom("at", ("?p", "?from")), Atom("clear", ("?to",))}


class TestSingleMove:
    def test_effects_are_exact(self, sokoban, level1_problem):
        t = single_move_trajectory(sokoban, level1_problem)
        model = step1_successful([t], sokoban)
        k = model.actions["move"]
        assert k.eff_add == MOVE_EFF_ADD
        assert k.eff_del == MOVE_EFF_DEL

    def test_precondition_candidates_match_oracle(self, sokoban, level1_problem):
        t = single_move_trajectory(sokoban, level1_problem)
        k = step1_successful([t], sokoban).actions["move"]
        assert set(k.pre_pos) == MOVE_PRE_POS
        assert set(k.pre_neg) == MOVE_PRE_NEG

    def test_superfluous_candidates_present(self, sokoban, level1_problem):
        """The initial estimate deliberately overshoots the true model."""
        t = single_move_trajectory(sokoban, level1_problem)
        k = step1_successful([t], sokoban).actions["move"]
        truth = sokoban.actions["move"]
        assert set(k.pre_pos) > set(truth.pre_pos)
        assert Atom("is-nongoal", ("?from",)) in k.pre_pos

    def test_nothing_marked_confirmed(self, sokoban, level1_problem):
        t = single_move_trajectory(sokoban, level1_problem)
        k = step1_successful([t], sokoban).actions["move"]
        assert not any(k.pre_pos.values()) and not any(k.pre_neg.values())


class TestAggregation:
    def test_empty_trajectory_set(self, sokoban):
        model = step1_successful([], sokoban)
        assert model.actions == {}

    def test_failed_transitions_ignored(self, sokoban, tutorial_trace):
        model = step1_successful([tutorial_trace], sokoban)
        assert model.actions["move"].success_count == 3

    def test_intersection_eliminates_is_nongoal(self, sokoban, level1_problem):
        """Moving onto a goal cell kills the is-nongoal(?to) candidate."""
        plan = parse_plan(read_text("plans", "level1-solution.plan"))
        # after the four pushes the stone rests on pos-08-01; pos-06-01 is a
        # free goal cell the player can then step onto
        extra = [
            GroundAction("move", ("player-01", "pos-05-01", "pos-06-01", "dir-right")),
        ]
        t = run_plan(level1_problem, plan + extra, sokoban)
        assert all(tr.ok for tr in t.transitions)
        k = step1_successful([t], sokoban).actions["move"]
        assert Atom("is-nongoal", ("?to",)) not in k.pre_pos
        assert Atom("is-nongoal", ("?from",)) in k.pre_pos  # never moved off a goal
        assert Atom("is-goal", ("?to",)) not in k.pre_neg

    def test_effects_union_across_occurrences(self, sokoban, level1_trace):
        model = step1_successful([level1_trace], sokoban)
        truth = sokoban.actions["push-to-nongoal"]
        k = model.actions["push-to-nongoal"]
        # the at-goal delete shows up only in the push off the goal cell;
        # the union over both pushes recovers the full effect list
        assert k.eff_add == set(truth.eff_add)
        assert k.eff_del == set(truth.eff_del)

    def test_multiple_trajectories_intersect_too(self, sokoban, level1_problem):
        t1 = single_move_trajectory(sokoban, level1_problem)
        plan2 = parse_plan(read_text("plans", "level1-solution.plan"))
        t2 = run_plan(level1_problem, plan2, sokoban)
        merged = step1_successful([t1, t2], sokoban).actions["move"]
        alone = step1_successful([t2], sokoban).actions["move"]
        assert set(merged.pre_pos) <= set(alone.pre_pos)


class TestEdgeCases:
    def test_zero_arity_predicates_survive(self):
        domain = parse_domain(
            "(define (domain d) (:predicates (raining) (dry ?x - object)) "
            "(:action a :parameters (?x - object) :precondition (raining) :effect (dry ?x)))"
        )
        init = frozenset({Atom("raining")})
        post = init | {Atom("dry", ("o1",))}
        t = Trajectory(
            objects={"o1": "object"},
            init=init,
            transitions=(Transition(init, GroundAction("a", ("o1",)), True, post),),
        )
        k = step1_successful([t], domain).actions["a"]
        assert Atom("raining") in k.pre_pos
        assert Atom("dry", ("?x",)) in k.pre_neg

    def test_object_outside_trajectory_objects(self, sokoban, level1_problem):
        t = single_move_trajectory(sokoban, level1_problem)
        bad = Trajectory(
            objects={k: v for k, v in t.objects.items() if k != "player-01"},
            init=t.init,
            transitions=t.transitions,
        )
        with pytest.raises(ValidationError):
            step1_successful([bad], sokoban)

    def test_nondeterministic_effects_rejected(self):
        domain = parse_domain(
            "(define (domain d) (:predicates (p ?x - object)) "
            "(:action a :parameters (?x - object) :effect (p ?x)))"
        )
        on = frozenset({Atom("p", ("o1",))})
        off = frozenset()
        t = Trajectory(
            objects={"o1": "object"},
            init=off,
            transitions=(
                Transition(off, GroundAction("a", ("o1",)), True, on),
                Transition(on, GroundAction("a", ("o1",)), True, off),
            ),
        )
        with pytest.raises(ValidationError) as err:
            step1_successful([t], domain)
        assert "deterministic" in str(err.value)
