"""Play trajectories: fully observed states plus ok/failed actions.

File format, one trajectory per file::

    (trajectory
      (:objects o1 - t1 o2 - t2 ...)
      (:init (atom ...) ...)
      (:action (name o1 o2 ...) :ok)
      (:state (atom ...) ...)
      (:action (name ...) :failed)
      ...)

A ``:failed`` action is not followed by a ``:state`` block; the state is
unchanged by definition. The reader tolerates a redundant ``:state`` after
a failure but insists it equals the pre-state. States are full: the parser
has no notion of partially observed states.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PddlSyntaxError, ValidationError
from .pddl.model import (
    Atom,
    Domain,
    GroundAction,
    check_atom,
    check_ground_action,
)
from .pddl.printer import format_typed_names, wrap_atoms
from .sexpr import Node, SList, Symbol, as_list, as_symbol, parse_sexprs


@dataclass(frozen=True)
class Transition:
    pre_state: frozenset
    action: GroundAction
    ok: bool
    post_state: frozenset

    @property
    def outcome(self) -> str:
        return "ok" if self.ok else "failed"


@dataclass(frozen=True)
class Trajectory:
    objects: dict[str, str]
    init: frozenset
    transitions: tuple[Transition, ...] = ()

    def __len__(self) -> int:
        return len(self.transitions)

    @property
    def final_state(self) -> frozenset:
        return self.transitions[-1].post_state if self.transitions else self.init

    def states(self) -> list[frozenset]:
        """Every distinct-by-position state, init first."""
        return [self.init] + [t.post_state for t in self.transitions]


def validate_trajectory(trajectory: Trajectory, domain: Domain) -> None:
    """Enforce typing, chain consistency and failure state-preservation."""
    objects = trajectory.objects
    for obj, typ in objects.items():
        if typ not in domain.types:
            raise ValidationError(f"object {obj!r} has unknown type {typ!r}")
    for atom in trajectory.init:
        check_atom(atom, domain, objects, "initial state")
    prev = trajectory.init
    for i, tr in enumerate(trajectory.transitions):
        if tr.pre_state != prev:
            raise ValidationError(
                f"transition {i}: pre-state does not match the preceding post-state "
                "(chain inconsistency)"
            )
        check_ground_action(tr.action, domain, objects)
        if not tr.ok and tr.post_state != tr.pre_state:
            raise ValidationError(
                f"transition {i}: failed action {tr.action} must leave the state unchanged"
            )
        for atom in tr.post_state - tr.pre_state:
            check_atom(atom, domain, objects, f"transition {i}")
        prev = tr.post_state


def _parse_state_block(sec: SList, intern: dict[Atom, Atom]) -> frozenset:
    atoms = set()
    for node in sec[1:]:
        lst = as_list(node, "state atom")
        if not lst:
            raise PddlSyntaxError("empty atom in state", lst.line, lst.col)
        head = as_symbol(lst[0], "predicate name").text.lower()
        if head == "not":
            raise ValidationError("states are full observations of true atoms; (not ...) is not allowed")
        args = tuple(as_symbol(a, "object name").text.lower() for a in lst[1:])
        atom = Atom(head, args)
        atoms.add(intern.setdefault(atom, atom))
    return frozenset(atoms)


def _parse_action_block(sec: SList) -> tuple[GroundAction, bool]:
    if len(sec) != 3:
        raise PddlSyntaxError("(:action (...) :ok|:failed) expected", sec.line, sec.col)
    act = as_list(sec[1], "ground action")
    if not act:
        raise PddlSyntaxError("empty ground action", act.line, act.col)
    name = as_symbol(act[0], "action name").text.lower()
    args = tuple(as_symbol(a, "object name").text.lower() for a in act[1:])
    outcome = as_symbol(sec[2], "outcome keyword").text.lower()
    if outcome not in (":ok", ":failed"):
        raise PddlSyntaxError(f"unknown outcome {outcome!r}", sec.line, sec.col)
    return GroundAction(name, args), outcome == ":ok"


def parse_trace(text: str, domain: Domain) -> Trajectory:
    """Parse and validate one `.trace` file body."""
    trajectory = parse_trace_structure(text)
    validate_trajectory(trajectory, domain)
    return trajectory


def parse_trace_structure(text: str) -> Trajectory:
    """Structural parse only; no domain signature checks.

    Chain consistency and the failure/state rule still hold by
    construction. Use parse_trace when a domain is at hand.
    """
    nodes = parse_sexprs(text)
    if len(nodes) != 1:
        raise PddlSyntaxError(f"expected one (trajectory ...) form, found {len(nodes)}")
    root = as_list(nodes[0], "(trajectory ...)")
    if not root or as_symbol(root[0], "trajectory").text.lower() != "trajectory":
        raise PddlSyntaxError("expected (trajectory ...)", root.line, root.col)

    objects: dict[str, str] = {}
    init: frozenset | None = None
    transitions: list[Transition] = []
    pending: tuple[GroundAction, bool] | None = None
    current: frozenset | None = None
    intern: dict[Atom, Atom] = {}

    def flush_pending(next_state: frozenset | None, sec: SList | None) -> None:
        nonlocal pending, current
        if pending is None:
            if next_state is not None and sec is not None:
                raise PddlSyntaxError("(:state ...) without a preceding action", sec.line, sec.col)
            return
        action, ok = pending
        assert current is not None
        if ok:
            if next_state is None:
                raise ValidationError(f"ok action {action} must be followed by a (:state ...) block")
            post = next_state
        else:
            if next_state is not None and next_state != current:
                raise ValidationError(
                    f"failed action {action} is followed by a state differing from its pre-state"
                )
            post = current
        transitions.append(Transition(current, action, ok, post))
        current = post
        pending = None

    from .pddl.parser import parse_typed_list  # shared typed-list syntax

    for section in root[1:]:
        sec = as_list(section, "trajectory section")
        if not sec:
            raise PddlSyntaxError("empty trajectory section", sec.line, sec.col)
        key = as_symbol(sec[0], "section keyword").text.lower()
        if key == ":objects":
            for obj, typ in parse_typed_list(list(sec[1:]), ":objects"):
                if obj in objects:
                    raise ValidationError(f"object {obj!r} declared twice")
                objects[obj] = typ
        elif key == ":init":
            if init is not None:
                raise PddlSyntaxError("duplicate (:init ...) block", sec.line, sec.col)
            init = _parse_state_block(sec, intern)
            current = init
        elif key == ":action":
            if init is None:
                raise PddlSyntaxError("(:action ...) before (:init ...)", sec.line, sec.col)
            flush_pending(None, None)
            pending = _parse_action_block(sec)
        elif key == ":state":
            if init is None:
                raise PddlSyntaxError("(:state ...) before (:init ...)", sec.line, sec.col)
            flush_pending(_parse_state_block(sec, intern), sec)
        else:
            raise PddlSyntaxError(f"unknown trajectory section {key!r}", sec.line, sec.col)

    if init is None:
        raise PddlSyntaxError("trajectory has no (:init ...) block", root.line, root.col)
    flush_pending(None, None)

    return Trajectory(objects=objects, init=init, transitions=tuple(transitions))


def write_trace(trajectory: Trajectory) -> str:
    """Serialize to the `.trace` format; parse_trace round-trips it."""
    lines = ["(trajectory"]
    lines.append(f"  (:objects {format_typed_names(trajectory.objects)})")
    lines.append("  (:init")
    lines.extend(wrap_atoms(trajectory.init, "    "))
    lines[-1] += ")"
    for tr in trajectory.transitions:
        lines.append(f"  (:action {tr.action} {':ok' if tr.ok else ':failed'})")
        if tr.ok:
            lines.append("  (:state")
            lines.extend(wrap_atoms(tr.post_state, "    "))
            lines[-1] += ")"
    lines.append(")")
    return "\n".join(lines) + "\n"


def strip_failures(trajectory: Trajectory) -> Trajectory:
    """Drop failed transitions; chain consistency is preserved because
    failures never change the state."""
    kept = tuple(t for t in trajectory.transitions if t.ok)
    return Trajectory(objects=trajectory.objects, init=trajectory.init, transitions=kept)


def write_fama_trace(trajectory: Trajectory) -> str:
    """Failure-stripped export with alternating full (:state ...) and
    (:action ...) blocks."""
    stripped = strip_failures(trajectory)
    lines = ["(trajectory"]
    lines.append(f"  (:objects {format_typed_names(stripped.objects)})")
    lines.append("  (:state")
    lines.extend(wrap_atoms(stripped.init, "    "))
    lines[-1] += ")"
    for tr in stripped.transitions:
        lines.append(f"  (:action {tr.action})")
        lines.append("  (:state")
        lines.extend(wrap_atoms(tr.post_state, "    "))
        lines[-1] += ")"
    lines.append(")")
    return "\n".join(lines) + "\n"


def parse_fama_trace(text: str, domain: Domain) -> Trajectory:
    """Read the alternating-block export format; all actions are ok."""
    nodes = parse_sexprs(text)
    if len(nodes) != 1:
        raise PddlSyntaxError(f"expected one (trajectory ...) form, found {len(nodes)}")
    root = as_list(nodes[0], "(trajectory ...)")
    if not root or as_symbol(root[0], "trajectory").text.lower() != "trajectory":
        raise PddlSyntaxError("expected (trajectory ...)", root.line, root.col)

    from .pddl.parser import parse_typed_list

    objects: dict[str, str] = {}
    states: list[frozenset] = []
    actions: list[GroundAction] = []
    intern: dict[Atom, Atom] = {}
    for section in root[1:]:
        sec = as_list(section, "trajectory section")
        key = as_symbol(sec[0], "section keyword").text.lower()
        if key == ":objects":
            for obj, typ in parse_typed_list(list(sec[1:]), ":objects"):
                objects[obj] = typ
        elif key == ":state":
            states.append(_parse_state_block(sec, intern))
        elif key == ":action":
            if len(sec) != 2:
                raise PddlSyntaxError("(:action (...)) expected", sec.line, sec.col)
            act = as_list(sec[1], "ground action")
            name = as_symbol(act[0], "action name").text.lower()
            args = tuple(as_symbol(a, "object name").text.lower() for a in act[1:])
            actions.append(GroundAction(name, args))
        else:
            raise PddlSyntaxError(f"unknown trajectory section {key!r}", sec.line, sec.col)
    if len(states) != len(actions) + 1:
        raise PddlSyntaxError(
            f"expected {len(actions) + 1} states for {len(actions)} actions, found {len(states)}"
        )
    transitions = tuple(
        Transition(states[i], actions[i], True, states[i + 1]) for i in range(len(actions))
    )
    trajectory = Trajectory(objects=objects, init=states[0], transitions=transitions)
    validate_trajectory(trajectory, domain)
    return trajectory
