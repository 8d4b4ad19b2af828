import pytest

from tracelearn import (
    Atom,
    GroundAction,
    Trajectory,
    Transition,
    parse_fama_trace,
    parse_trace,
    run_plan,
    strip_failures,
    validate_trajectory,
    write_fama_trace,
    write_trace,
)
from tracelearn.data import read_text
from tracelearn.errors import ValidationError
from tracelearn.simulator import parse_plan
from tracelearn.sokoban import compile_level, parse_level

TWO_STEP = """
(trajectory
  (:objects p1 - player s1 - stone a b c - location d - direction)
  (:init (at p1 a) (at s1 c) (clear b) (move-dir a b d) (move-dir b c d)
         (is-nongoal a) (is-nongoal b) (is-nongoal c))
  (:action (move p1 a b d) :ok)
  (:state (at p1 b) (at s1 c) (clear a) (move-dir a b d) (move-dir b c d)
          (is-nongoal a) (is-nongoal b) (is-nongoal c))
  (:action (move p1 b c d) :failed))
"""


class TestParseTrace:
    def test_two_transition_file(self, sokoban):
        t = parse_trace(TWO_STEP, sokoban)
        assert len(t) == 2
        assert t.transitions[0].ok and not t.transitions[1].ok
        assert t.transitions[1].post_state == t.transitions[1].pre_state

    def test_failed_followed_by_differing_state_rejected(self, sokoban):
        text = TWO_STEP.rstrip()[:-1] + "\n  (:state (at p1 c)))\n"
        with pytest.raises(ValidationError) as err:
            parse_trace(text, sokoban)
        assert "differing" in str(err.value)

    def test_failed_followed_by_identical_state_tolerated(self, sokoban):
        state = (
            "(at p1 b) (at s1 c) (clear a) (move-dir a b d) (move-dir b c d) "
            "(is-nongoal a) (is-nongoal b) (is-nongoal c)"
        )
        text = TWO_STEP.rstrip()[:-1] + f"\n  (:state {state}))\n"
        assert len(parse_trace(text, sokoban)) == 2

    def test_unknown_action_rejected(self, sokoban):
        text = TWO_STEP.replace("(move p1 a b d) :ok", "(fly p1 a b d) :ok")
        with pytest.raises(Exception):
            parse_trace(text, sokoban)

    def test_unknown_object_rejected(self, sokoban):
        text = TWO_STEP.replace("(at p1 a)", "(at p9 a)")
        with pytest.raises(ValidationError):
            parse_trace(text, sokoban)

    def test_bundled_level1_trace_objects_typed(self, sokoban, level1_trace, level1_problem):
        assert level1_trace.objects == level1_problem.objects
        assert level1_trace.objects["player-01"] == "player"
        assert level1_trace.objects["pos-01-01"] == "location"


class TestChainConsistency:
    def test_dropped_atom_breaks_chain_at_index_1(self, sokoban, level1_problem):
        domain, problem = sokoban, level1_problem
        plan = parse_plan(read_text("plans", "level1-solution.plan"))
        good = run_plan(problem, plan, domain)
        t0, t1 = good.transitions[0], good.transitions[1]
        # drop an atom the first action produced from the second pre-state
        produced = next(iter(t0.post_state - t0.pre_state))
        bad_t1 = Transition(t1.pre_state - {produced}, t1.action, t1.ok, t1.post_state)
        broken = Trajectory(
            objects=good.objects, init=good.init, transitions=(t0, bad_t1) + good.transitions[2:]
        )
        with pytest.raises(ValidationError) as err:
            validate_trajectory(broken, domain)
        assert "transition 1" in str(err.value)

    def test_failed_transition_state_change_rejected(self, sokoban, level1_problem):
        init = level1_problem.init
        action = GroundAction("move", ("player-01", "pos-01-01", "pos-00-00", "dir-left"))
        bad = Trajectory(
            objects=level1_problem.objects,
            init=init,
            transitions=(Transition(init, action, False, init - {Atom("clear", ("pos-02-01",))}),),
        )
        with pytest.raises(ValidationError):
            validate_trajectory(bad, sokoban)


class TestWriteTrace:
    def test_round_trip_bundled_traces(self, sokoban, hanoi, npuzzle):
        for domain, name in [
            (sokoban, "level1-solution"),
            (sokoban, "level1-tutorial"),
            (sokoban, "level2-solution"),
            (hanoi, "hanoi-3"),
            (npuzzle, "npuzzle-8"),
        ]:
            t = parse_trace(read_text("traces", f"{name}.trace"), domain)
            again = parse_trace(write_trace(t), domain)
            assert again == t, name

    def test_empty_trajectory_init_only(self, sokoban, level1_problem):
        t = run_plan(level1_problem, [], sokoban)
        assert len(t) == 0
        again = parse_trace(write_trace(t), sokoban)
        assert again == t

    def test_failed_transitions_omit_state_blocks(self, sokoban, tutorial_trace):
        text = write_trace(tutorial_trace)
        ok_count = sum(1 for tr in tutorial_trace.transitions if tr.ok)
        assert text.count("(:state") == ok_count
        assert text.count("(:init") == 1


class TestStripFailures:
    def test_lengths(self, tutorial_trace):
        failures = sum(1 for t in tutorial_trace.transitions if not t.ok)
        stripped = strip_failures(tutorial_trace)
        assert failures == 3
        assert len(stripped) == len(tutorial_trace) - failures

    def test_identity_without_failures(self, level1_trace):
        assert strip_failures(level1_trace) == level1_trace

    def test_idempotent(self, tutorial_trace):
        once = strip_failures(tutorial_trace)
        assert strip_failures(once) == once

    def test_equals_replay_without_failed_inputs(self, sokoban, tutorial_trace, level1_problem):
        """Stripping equals a run that never attempted the failed actions."""
        from dataclasses import replace

        plan = [t.action for t in tutorial_trace.transitions if t.ok]
        problem = replace(
            level1_problem,
            init=level1_problem.init | {Atom("move-dir", ("pos-02-01", "pos-02-00", "dir-up"))},
        )
        replayed = run_plan(problem, plan, sokoban)
        assert strip_failures(tutorial_trace) == replayed


class TestFamaExport:
    def test_alternating_blocks_parse_back(self, sokoban, tutorial_trace):
        text = write_fama_trace(tutorial_trace)
        assert ":ok" not in text and ":failed" not in text
        back = parse_fama_trace(text, sokoban)
        assert back == strip_failures(tutorial_trace)

    def test_export_is_idempotent(self, sokoban, tutorial_trace):
        once = write_fama_trace(tutorial_trace)
        back = parse_fama_trace(once, sokoban)
        assert write_fama_trace(back) == once
