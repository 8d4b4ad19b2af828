"""Ground-truth STRIPS execution.

Pure functions over immutable values: applying the same action to the same
state always yields the same result, and a failed action reports exactly
which ground preconditions were violated while leaving the state untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import PddlSyntaxError, SimulationError
from .pddl.model import Domain, GroundAction, Problem, binding_map, check_ground_action, ground
from .sexpr import Symbol, as_symbol, parse_sexprs
from .trace import Trajectory, Transition


@dataclass(frozen=True)
class ExecutionResult:
    ok: bool
    next_state: frozenset | None = None
    violated_pos: frozenset = frozenset()
    violated_neg: frozenset = frozenset()


def step(
    state: frozenset,
    action: GroundAction,
    domain: Domain,
    objects: Mapping[str, str] | None = None,
) -> ExecutionResult:
    """Apply one ground action.

    Success requires every positive precondition present and every negative
    one absent; then the next state is (state - deletes) | adds. On failure
    the violated ground literals are reported. Passing the problem's object
    map adds argument type checking on top of the schema/arity check.
    """
    if objects is not None:
        schema = check_ground_action(action, domain, objects)
    else:
        schema = domain.actions.get(action.name)
        if schema is None:
            raise SimulationError(f"unknown action schema {action.name!r}")
        binding_map(schema, action.args)  # arity check
    grounded = ground(schema, action.args)
    missing = frozenset(a for a in grounded.pre_pos if a not in state)
    present = frozenset(a for a in grounded.pre_neg if a in state)
    if missing or present:
        return ExecutionResult(ok=False, violated_pos=missing, violated_neg=present)
    return ExecutionResult(ok=True, next_state=(state - grounded.eff_del) | grounded.eff_add)


def run_plan(
    problem: Problem,
    plan: list[GroundAction],
    domain: Domain,
    stop_on_failure: bool = False,
) -> Trajectory:
    """Execute `plan` from the problem's initial state.

    Failed actions are recorded as state-preserving transitions. With
    `stop_on_failure` the trajectory ends right after the first failure.
    """
    state = problem.init
    transitions: list[Transition] = []
    for action in plan:
        result = step(state, action, domain, problem.objects)
        if result.ok:
            transitions.append(Transition(state, action, True, result.next_state))
            state = result.next_state
        else:
            transitions.append(Transition(state, action, False, state))
            if stop_on_failure:
                break
    return Trajectory(objects=dict(problem.objects), init=problem.init, transitions=tuple(transitions))


def parse_plan(text: str) -> list[GroundAction]:
    """Read a plan file: one `(name o1 o2 ...)` per line, `;` comments.

    FastDownward sas_plan files parse unchanged (their trailing cost line
    is a comment).
    """
    actions: list[GroundAction] = []
    for node in parse_sexprs(text):
        if isinstance(node, Symbol):
            raise PddlSyntaxError(f"stray token {node.text!r} in plan", node.line, node.col)
        if not node:
            raise PddlSyntaxError("empty action in plan", node.line, node.col)
        name = as_symbol(node[0], "action name").text.lower()
        args = tuple(as_symbol(a, "object name").text.lower() for a in node[1:])
        actions.append(GroundAction(name, args))
    return actions
