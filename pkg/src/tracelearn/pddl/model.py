"""Core STRIPS-with-typing value types.

Everything here is immutable after construction and safe to share across
threads. Atoms double as ground atoms and lifted literals: an argument
whose name starts with '?' is a variable. Sign is never stored on the atom
itself; the containing set (pre_pos vs pre_neg, eff_add vs eff_del)
encodes it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, NamedTuple

from ..errors import SimulationError, ValidationError

OBJECT = "object"


def is_variable(name: str) -> bool:
    return name.startswith("?")


class Atom(NamedTuple):
    pred: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return f"({self.pred})"
        return f"({self.pred} {' '.join(self.args)})"

    @property
    def is_lifted(self) -> bool:
        return any(is_variable(a) for a in self.args)

    def objects(self) -> frozenset[str]:
        return frozenset(a for a in self.args if not is_variable(a))

    def substitute(self, binding: Mapping[str, str]) -> "Atom":
        return Atom(self.pred, tuple(binding.get(a, a) for a in self.args))


State = frozenset  # frozenset[Atom]


class GroundAction(NamedTuple):
    name: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return f"({self.name})"
        return f"({self.name} {' '.join(self.args)})"


class Predicate(NamedTuple):
    name: str
    param_types: tuple[str, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.param_types)


@dataclass(frozen=True)
class TypeHierarchy:
    """Single-inheritance type tree rooted at `object`.

    `parent` maps every declared type except `object` to its parent.
    """

    parent: dict[str, str] = field(default_factory=dict)

    @property
    def names(self) -> frozenset[str]:
        return frozenset(self.parent) | {OBJECT}

    def validate(self) -> None:
        for name, par in self.parent.items():
            if par != OBJECT and par not in self.parent:
                raise ValidationError(f"type {name!r} has undeclared parent {par!r}")
            seen = {name}
            cur = name
            while cur != OBJECT:
                cur = self.parent[cur]
                if cur in seen:
                    raise ValidationError(f"type cycle through {name!r}")
                seen.add(cur)

    def is_subtype(self, t: str, ancestor: str) -> bool:
        if ancestor == OBJECT:
            return t == OBJECT or t in self.parent
        cur = t
        while cur != OBJECT:
            if cur == ancestor:
                return True
            nxt = self.parent.get(cur)
            if nxt is None:
                return False
            cur = nxt
        return False

    def __contains__(self, t: str) -> bool:
        return t == OBJECT or t in self.parent


@dataclass(frozen=True)
class ActionSchema:
    name: str
    params: tuple[tuple[str, str], ...]  # (variable, type) pairs, ordered
    pre_pos: frozenset = frozenset()
    pre_neg: frozenset = frozenset()
    eff_add: frozenset = frozenset()
    eff_del: frozenset = frozenset()

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.params)

    def literal_count(self) -> int:
        return (
            len(self.pre_pos) + len(self.pre_neg) + len(self.eff_add) + len(self.eff_del)
        )


@dataclass(frozen=True)
class Domain:
    name: str
    types: TypeHierarchy
    predicates: dict[str, Predicate]
    actions: dict[str, ActionSchema]


@dataclass(frozen=True)
class Problem:
    name: str
    domain_name: str
    objects: dict[str, str]  # object name -> type
    init: frozenset
    goal_pos: frozenset = frozenset()
    goal_neg: frozenset = frozenset()


@dataclass(frozen=True)
class GroundSchema:
    """An ActionSchema instantiated with a concrete binding."""

    pre_pos: frozenset
    pre_neg: frozenset
    eff_add: frozenset
    eff_del: frozenset


def binding_map(schema: ActionSchema, binding: Iterable[str]) -> dict[str, str]:
    binding = tuple(binding)
    if len(binding) != len(schema.params):
        raise ValidationError(
            f"action {schema.name!r} expects {len(schema.params)} arguments, got {len(binding)}"
        )
    return {var: obj for (var, _), obj in zip(schema.params, binding)}


def generalize(atoms: Iterable[Atom], schema: ActionSchema, binding: Iterable[str]) -> frozenset:
    """Replace objects in `atoms` by schema variables.

    Each object maps to the variable at the first parameter position bound
    to it, so bindings that repeat an object still generalize
    deterministically. Every object mentioned by `atoms` must appear in the
    binding.
    """
    to_var: dict[str, str] = {}
    for (var, _), obj in zip(schema.params, tuple(binding)):
        to_var.setdefault(obj, var)
    out = set()
    for atom in atoms:
        lifted_args = []
        for a in atom.args:
            if is_variable(a):
                lifted_args.append(a)
                continue
            var = to_var.get(a)
            if var is None:
                raise ValidationError(
                    f"object {a!r} in {atom} does not occur in the binding of {schema.name!r}"
                )
            lifted_args.append(var)
        out.add(Atom(atom.pred, tuple(lifted_args)))
    return frozenset(out)


def ground_atoms(atoms: Iterable[Atom], schema: ActionSchema, binding: Iterable[str]) -> frozenset:
    bmap = binding_map(schema, binding)
    return frozenset(a.substitute(bmap) for a in atoms)


def ground(schema: ActionSchema, binding: Iterable[str]) -> GroundSchema:
    """Instantiate all four literal sets of `schema` with `binding`."""
    bmap = binding_map(schema, tuple(binding))
    return GroundSchema(
        pre_pos=frozenset(a.substitute(bmap) for a in schema.pre_pos),
        pre_neg=frozenset(a.substitute(bmap) for a in schema.pre_neg),
        eff_add=frozenset(a.substitute(bmap) for a in schema.eff_add),
        eff_del=frozenset(a.substitute(bmap) for a in schema.eff_del),
    )


def check_ground_action(
    action: GroundAction, domain: Domain, objects: Mapping[str, str]
) -> ActionSchema:
    """Validate name, arity and argument types; return the schema."""
    schema = domain.actions.get(action.name)
    if schema is None:
        raise SimulationError(f"unknown action schema {action.name!r}")
    if len(action.args) != len(schema.params):
        raise ValidationError(
            f"action {action.name!r} expects {len(schema.params)} arguments, got {len(action.args)}"
        )
    for obj, (var, typ) in zip(action.args, schema.params):
        obj_type = objects.get(obj)
        if obj_type is None:
            raise ValidationError(f"unknown object {obj!r} in {action}")
        if not domain.types.is_subtype(obj_type, typ):
            raise ValidationError(
                f"argument {obj!r} of {action} has type {obj_type!r}, expected {typ!r}"
            )
    return schema


def check_atom(atom: Atom, domain: Domain, objects: Mapping[str, str], where: str = "") -> None:
    """Validate one ground atom against the domain signature."""
    pred = domain.predicates.get(atom.pred)
    ctx = f" in {where}" if where else ""
    if pred is None:
        raise ValidationError(f"unknown predicate {atom.pred!r}{ctx}")
    if len(atom.args) != pred.arity:
        raise ValidationError(
            f"predicate {atom.pred!r} expects {pred.arity} arguments, got {len(atom.args)}{ctx}"
        )
    for obj, typ in zip(atom.args, pred.param_types):
        obj_type = objects.get(obj)
        if obj_type is None:
            raise ValidationError(f"unknown object {obj!r} in {atom}{ctx}")
        if not domain.types.is_subtype(obj_type, typ):
            raise ValidationError(
                f"argument {obj!r} of {atom} has type {obj_type!r}, expected {typ!r}{ctx}"
            )


def typed_groundings(
    predicates: Iterable[Predicate],
    objects: Iterable[str],
    object_types: Mapping[str, str],
    types: TypeHierarchy,
) -> frozenset:
    """All well-typed ground atoms over `objects` (repetition allowed)."""
    objs = tuple(dict.fromkeys(objects))
    out = set()
    for pred in predicates:
        slots = []
        for typ in pred.param_types:
            slots.append([o for o in objs if types.is_subtype(object_types[o], typ)])
        for combo in product(*slots):
            out.add(Atom(pred.name, combo))
    return frozenset(out)
