"""STRIPS-with-typing PDDL subset: values, parsing, printing, lifting."""

from .model import (
    OBJECT,
    ActionSchema,
    Atom,
    Domain,
    GroundAction,
    GroundSchema,
    Predicate,
    Problem,
    State,
    TypeHierarchy,
    binding_map,
    check_atom,
    check_ground_action,
    generalize,
    ground,
    ground_atoms,
    is_variable,
    typed_groundings,
)
from .parser import parse_domain, parse_problem
from .printer import format_atom, print_domain, print_problem

__all__ = [
    "OBJECT",
    "ActionSchema",
    "Atom",
    "Domain",
    "GroundAction",
    "GroundSchema",
    "Predicate",
    "Problem",
    "State",
    "TypeHierarchy",
    "binding_map",
    "check_atom",
    "check_ground_action",
    "format_atom",
    "generalize",
    "ground",
    "ground_atoms",
    "is_variable",
    "parse_domain",
    "parse_problem",
    "print_domain",
    "print_problem",
    "typed_groundings",
]
