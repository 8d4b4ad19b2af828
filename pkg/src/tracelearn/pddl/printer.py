"""Canonical PDDL printing.

Output is deterministic: sections, predicates, actions and literals are
sorted, identifiers are lowercase, and parse(print(parse(x))) equals
parse(x) structurally for every supported input.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .model import OBJECT, ActionSchema, Atom, Domain, Problem, TypeHierarchy


def _atom_key(atom: Atom) -> tuple:
    return (atom.pred, atom.args)


def format_atom(atom: Atom) -> str:
    return str(atom)


def _format_condition(pos: Iterable[Atom], neg: Iterable[Atom]) -> str:
    parts = [str(a) for a in sorted(pos, key=_atom_key)]
    parts += [f"(not {a})" for a in sorted(neg, key=_atom_key)]
    return f"(and {' '.join(parts)})" if parts else "(and)"


def format_typed_names(names_to_type: Mapping[str, str]) -> str:
    """Group `name - type` runs by type, types in sorted order."""
    by_type: dict[str, list[str]] = {}
    for name, typ in names_to_type.items():
        by_type.setdefault(typ, []).append(name)
    chunks = []
    for typ in sorted(by_type):
        names = " ".join(sorted(by_type[typ]))
        chunks.append(f"{names} - {typ}")
    return " ".join(chunks)


def _format_types(types: TypeHierarchy) -> str | None:
    if not types.parent:
        return None
    return f"  (:types {format_typed_names(types.parent)})"


def _format_action(schema: ActionSchema) -> str:
    params = " ".join(f"{var} - {typ}" for var, typ in schema.params)
    lines = [
        f"  (:action {schema.name}",
        f"    :parameters ({params})",
        f"    :precondition {_format_condition(schema.pre_pos, schema.pre_neg)}",
        f"    :effect {_format_condition(schema.eff_add, schema.eff_del)})",
    ]
    return "\n".join(lines)


def print_domain(domain: Domain) -> str:
    """Render `domain` as canonical PDDL text."""
    reqs = [":strips", ":typing"]
    if any(a.pre_neg for a in domain.actions.values()):
        reqs.append(":negative-preconditions")
    lines = [f"(define (domain {domain.name})", f"  (:requirements {' '.join(reqs)})"]
    types_line = _format_types(domain.types)
    if types_line:
        lines.append(types_line)
    pred_lines = []
    for name in sorted(domain.predicates):
        pred = domain.predicates[name]
        params = " ".join(f"?v{i} - {t}" for i, t in enumerate(pred.param_types))
        pred_lines.append(f"    ({name}{' ' + params if params else ''})")
    lines.append("  (:predicates")
    lines.extend(pred_lines)
    lines[-1] += ")" if pred_lines else ""
    if not pred_lines:
        lines[-1] = "  (:predicates)"
    for name in sorted(domain.actions):
        lines.append(_format_action(domain.actions[name]))
    lines.append(")")
    return "\n".join(lines) + "\n"


def wrap_atoms(atoms: Iterable[Atom], indent: str, width: int = 96) -> list[str]:
    lines: list[str] = []
    current = indent
    for atom in sorted(atoms, key=_atom_key):
        text = str(atom)
        if current != indent and len(current) + 1 + len(text) > width:
            lines.append(current)
            current = indent
        current = text if current == indent else f"{current} {text}"
        if current == text:
            current = indent + text
    if current != indent:
        lines.append(current)
    return lines


def print_problem(problem: Problem) -> str:
    """Render `problem` as canonical PDDL text."""
    lines = [
        f"(define (problem {problem.name})",
        f"  (:domain {problem.domain_name})",
        f"  (:objects {format_typed_names(problem.objects)})",
        "  (:init",
    ]
    init_lines = wrap_atoms(problem.init, "    ")
    if init_lines:
        lines.extend(init_lines)
        lines[-1] += ")"
    else:
        lines[-1] = "  (:init)"
    goal = _format_condition(problem.goal_pos, problem.goal_neg)
    lines.append(f"  (:goal {goal})")
    lines.append(")")
    return "\n".join(lines) + "\n"
