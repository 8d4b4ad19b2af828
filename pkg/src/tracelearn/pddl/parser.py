"""Parsing for the supported PDDL subset.

Supported requirements: :strips, :typing, :negative-preconditions.
Preconditions are conjunctions of literals, effects conjunctions of add and
delete literals. Anything richer (conditional effects, quantifiers,
equality, numeric fluents, action costs, disjunctions, derived predicates,
domain constants) is rejected with an error naming the construct, never
silently dropped.

All identifiers are canonicalized to lowercase; IPC files mix cases freely
and lowercasing makes structural equality deterministic.
"""

from __future__ import annotations

from ..errors import PddlSyntaxError, UnsupportedConstructError, ValidationError
from ..sexpr import Node, SList, Symbol, as_list, as_symbol, parse_sexprs
from .model import (
    OBJECT,
    ActionSchema,
    Atom,
    Domain,
    Predicate,
    Problem,
    TypeHierarchy,
    check_atom,
    is_variable,
)

SUPPORTED_REQUIREMENTS = {":strips", ":typing", ":negative-preconditions"}

# construct name reported when one of these appears as a formula head
_REJECTED_HEADS = {
    "when": "conditional effects (when)",
    "forall": "quantifiers (forall)",
    "exists": "quantifiers (exists)",
    "or": "disjunctions (or)",
    "imply": "disjunctions (imply)",
    "=": "equality (=)",
    "increase": "action costs (increase)",
    "decrease": "numeric fluents (decrease)",
    "assign": "numeric fluents (assign)",
    "scale-up": "numeric fluents (scale-up)",
    "scale-down": "numeric fluents (scale-down)",
}

_REJECTED_SECTIONS = {
    ":functions": "numeric fluents (:functions)",
    ":constants": "domain constants (:constants)",
    ":derived": "derived predicates (:derived)",
    ":axiom": "axioms (:axiom)",
    ":constraints": "state constraints (:constraints)",
}


def _sym(node: Node, what: str) -> str:
    return as_symbol(node, what).text.lower()


def parse_typed_list(nodes: list[Node], what: str) -> list[tuple[str, str]]:
    """Parse `a b - t c - u d` into [(a,t),(b,t),(c,u),(d,object)]."""
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(nodes):
        tok = as_symbol(nodes[i], what)
        if tok.text == "-":
            if not pending:
                raise PddlSyntaxError(f"dangling '-' in {what}", tok.line, tok.col)
            if i + 1 >= len(nodes):
                raise PddlSyntaxError(f"missing type after '-' in {what}", tok.line, tok.col)
            typ = _sym(nodes[i + 1], "type name")
            out.extend((name, typ) for name in pending)
            pending = []
            i += 2
        else:
            pending.append(tok.text.lower())
            i += 1
    out.extend((name, OBJECT) for name in pending)
    return out


def _parse_literal(node: Node, polarity_ok: bool, where: str) -> tuple[bool, Atom]:
    """Return (positive, atom); rejects nested/non-literal structure."""
    lst = as_list(node, f"literal in {where}")
    if not lst:
        raise PddlSyntaxError(f"empty literal in {where}", lst.line, lst.col)
    head = as_symbol(lst[0], "predicate name")
    name = head.text.lower()
    if name in _REJECTED_HEADS:
        raise UnsupportedConstructError(_REJECTED_HEADS[name], head.line, head.col)
    if name == "not":
        if len(lst) != 2:
            raise PddlSyntaxError("(not ...) takes exactly one literal", lst.line, lst.col)
        if not polarity_ok:
            raise PddlSyntaxError(f"negation not allowed in {where}", lst.line, lst.col)
        positive, atom = _parse_literal(lst[1], False, where)
        return False, atom
    if name == "and":
        raise PddlSyntaxError(f"nested conjunction in {where}", lst.line, lst.col)
    args = tuple(_sym(a, "term") for a in lst[1:])
    return True, Atom(name, args)


def _parse_condition(node: Node, where: str) -> list[tuple[bool, Atom]]:
    """A condition is a single literal or an (and ...) of literals."""
    lst = as_list(node, where)
    if lst and isinstance(lst[0], Symbol) and lst[0].text.lower() == "and":
        return [_parse_literal(child, True, where) for child in lst[1:]]
    if not lst:
        return []  # "()" counts as an empty conjunction
    return [_parse_literal(lst, True, where)]


class _DomainBuilder:
    def __init__(self) -> None:
        self.name = ""
        self.types = TypeHierarchy()
        self.predicates: dict[str, Predicate] = {}
        self.actions: dict[str, ActionSchema] = {}

    def check_type(self, typ: str, node: Node) -> None:
        if typ not in self.types:
            sym = node if isinstance(node, Symbol) else None
            raise ValidationError(f"undeclared type {typ!r}")


def parse_domain(text: str) -> Domain:
    """Parse a PDDL domain in the supported subset."""
    nodes = parse_sexprs(text)
    if len(nodes) != 1:
        raise PddlSyntaxError(f"expected one (define ...) form, found {len(nodes)}")
    root = as_list(nodes[0], "(define ...)")
    if len(root) < 2 or _sym(root[0], "define") != "define":
        raise PddlSyntaxError("expected (define (domain ...) ...)", root.line, root.col)
    head = as_list(root[1], "(domain name)")
    if len(head) != 2 or _sym(head[0], "domain") != "domain":
        raise PddlSyntaxError("expected (domain name)", head.line, head.col)

    b = _DomainBuilder()
    b.name = _sym(head[1], "domain name")

    for section in root[2:]:
        sec = as_list(section, "domain section")
        if not sec:
            raise PddlSyntaxError("empty domain section", sec.line, sec.col)
        key_sym = as_symbol(sec[0], "section keyword")
        key = key_sym.text.lower()
        if key in _REJECTED_SECTIONS:
            raise UnsupportedConstructError(_REJECTED_SECTIONS[key], key_sym.line, key_sym.col)
        if key == ":requirements":
            for flag_node in sec[1:]:
                flag = _sym(flag_node, "requirement flag")
                if flag not in SUPPORTED_REQUIREMENTS:
                    sym = as_symbol(flag_node, "requirement flag")
                    raise UnsupportedConstructError(f"requirement {flag}", sym.line, sym.col)
        elif key == ":types":
            _parse_types(sec, b)
        elif key == ":predicates":
            _parse_predicates(sec, b)
        elif key == ":action":
            _parse_action(sec, b)
        else:
            raise UnsupportedConstructError(f"domain section {key}", key_sym.line, key_sym.col)

    return Domain(name=b.name, types=b.types, predicates=b.predicates, actions=b.actions)


def _parse_types(sec: SList, b: _DomainBuilder) -> None:
    entries = parse_typed_list(list(sec[1:]), ":types")
    parent = dict(b.types.parent)
    for name, par in entries:
        if name == OBJECT:
            raise ValidationError("cannot redeclare type 'object'")
        if name in parent:
            raise ValidationError(f"type {name!r} declared twice")
        parent[name] = par
    declared = set(parent) | {OBJECT}
    for name, par in parent.items():
        if par not in declared:
            raise ValidationError(f"type {name!r} has undeclared parent {par!r}")
    hierarchy = TypeHierarchy(parent)
    hierarchy.validate()
    b.types = hierarchy


def _parse_predicates(sec: SList, b: _DomainBuilder) -> None:
    for node in sec[1:]:
        lst = as_list(node, "predicate declaration")
        if not lst:
            raise PddlSyntaxError("empty predicate declaration", lst.line, lst.col)
        name = _sym(lst[0], "predicate name")
        if name in b.predicates:
            raise ValidationError(f"predicate {name!r} declared twice")
        params = parse_typed_list(list(lst[1:]), f"parameters of {name}")
        for var, typ in params:
            if not is_variable(var):
                raise PddlSyntaxError(
                    f"predicate parameter {var!r} must be a ?variable", lst.line, lst.col
                )
            b.check_type(typ, lst)
        b.predicates[name] = Predicate(name, tuple(t for _, t in params))


def _parse_action(sec: SList, b: _DomainBuilder) -> None:
    if len(sec) < 2:
        raise PddlSyntaxError("(:action ...) missing name", sec.line, sec.col)
    name = _sym(sec[1], "action name")
    if name in b.actions:
        raise ValidationError(f"action {name!r} declared twice")

    params: list[tuple[str, str]] = []
    pre: list[tuple[bool, Atom]] = []
    eff: list[tuple[bool, Atom]] = []
    i = 2
    while i < len(sec):
        key_sym = as_symbol(sec[i], "action keyword")
        key = key_sym.text.lower()
        if i + 1 >= len(sec):
            raise PddlSyntaxError(f"missing value after {key}", key_sym.line, key_sym.col)
        value = sec[i + 1]
        if key == ":parameters":
            params = parse_typed_list(list(as_list(value, ":parameters")), ":parameters")
        elif key == ":precondition":
            pre = _parse_condition(value, f"precondition of {name}")
        elif key == ":effect":
            eff = _parse_condition(value, f"effect of {name}")
        else:
            raise UnsupportedConstructError(f"action keyword {key}", key_sym.line, key_sym.col)
        i += 2

    seen_vars = set()
    for var, typ in params:
        if not is_variable(var):
            raise PddlSyntaxError(f"action parameter {var!r} must be a ?variable")
        if var in seen_vars:
            raise ValidationError(f"action {name!r} repeats parameter {var!r}")
        seen_vars.add(var)
        b.check_type(typ, sec)

    param_types = dict(params)

    def check_lifted(atom: Atom, where: str) -> None:
        pred = b.predicates.get(atom.pred)
        if pred is None:
            raise ValidationError(f"unknown predicate {atom.pred!r} in {where}")
        if len(atom.args) != pred.arity:
            raise ValidationError(
                f"predicate {atom.pred!r} expects {pred.arity} arguments in {where}"
            )
        for arg, typ in zip(atom.args, pred.param_types):
            if not is_variable(arg):
                raise UnsupportedConstructError(f"constant term {arg!r} in {where}")
            if arg not in param_types:
                raise ValidationError(f"variable {arg} in {where} is not a parameter")
            if not b.types.is_subtype(param_types[arg], typ):
                raise ValidationError(
                    f"variable {arg} has type {param_types[arg]!r} in {where}, expected {typ!r}"
                )

    pre_pos = {a for positive, a in pre if positive}
    pre_neg = {a for positive, a in pre if not positive}
    eff_add = {a for positive, a in eff if positive}
    eff_del = {a for positive, a in eff if not positive}
    for group, where in (
        (pre_pos, f"precondition of {name}"),
        (pre_neg, f"precondition of {name}"),
        (eff_add, f"effect of {name}"),
        (eff_del, f"effect of {name}"),
    ):
        for atom in group:
            check_lifted(atom, where)
    overlap = eff_add & eff_del
    if overlap:
        raise ValidationError(
            f"action {name!r} both adds and deletes {sorted(str(a) for a in overlap)}"
        )

    b.actions[name] = ActionSchema(
        name=name,
        params=tuple(params),
        pre_pos=frozenset(pre_pos),
        pre_neg=frozenset(pre_neg),
        eff_add=frozenset(eff_add),
        eff_del=frozenset(eff_del),
    )


def parse_problem(text: str, domain: Domain) -> Problem:
    """Parse a PDDL problem and validate it against `domain`.

    The initial state is closed-world: atoms absent from :init are false.
    Goals are parsed and kept but nothing in the learner uses them.
    """
    nodes = parse_sexprs(text)
    if len(nodes) != 1:
        raise PddlSyntaxError(f"expected one (define ...) form, found {len(nodes)}")
    root = as_list(nodes[0], "(define ...)")
    if len(root) < 2 or _sym(root[0], "define") != "define":
        raise PddlSyntaxError("expected (define (problem ...) ...)", root.line, root.col)
    head = as_list(root[1], "(problem name)")
    if len(head) != 2 or _sym(head[0], "problem") != "problem":
        raise PddlSyntaxError("expected (problem name)", head.line, head.col)

    name = _sym(head[1], "problem name")
    domain_name = domain.name
    objects: dict[str, str] = {}
    init: set[Atom] = set()
    goal_pos: set[Atom] = set()
    goal_neg: set[Atom] = set()

    for section in root[2:]:
        sec = as_list(section, "problem section")
        if not sec:
            raise PddlSyntaxError("empty problem section", sec.line, sec.col)
        key_sym = as_symbol(sec[0], "section keyword")
        key = key_sym.text.lower()
        if key == ":domain":
            domain_name = _sym(sec[1], "domain name")
            if domain_name != domain.name:
                raise ValidationError(
                    f"problem is for domain {domain_name!r}, expected {domain.name!r}"
                )
        elif key == ":objects":
            for obj, typ in parse_typed_list(list(sec[1:]), ":objects"):
                if is_variable(obj):
                    raise PddlSyntaxError(f"object name {obj!r} cannot be a variable")
                if obj in objects:
                    raise ValidationError(f"object {obj!r} declared twice")
                if typ not in domain.types:
                    raise ValidationError(f"unknown object type {typ!r} for {obj!r}")
                objects[obj] = typ
        elif key == ":init":
            for node in sec[1:]:
                positive, atom = _parse_literal(node, False, ":init")
                init.add(atom)
        elif key == ":goal":
            if len(sec) != 2:
                raise PddlSyntaxError("(:goal ...) takes one condition", sec.line, sec.col)
            for positive, atom in _parse_condition(sec[1], ":goal"):
                (goal_pos if positive else goal_neg).add(atom)
        elif key == ":requirements":
            for flag_node in sec[1:]:
                flag = _sym(flag_node, "requirement flag")
                if flag not in SUPPORTED_REQUIREMENTS:
                    sym = as_symbol(flag_node, "requirement flag")
                    raise UnsupportedConstructError(f"requirement {flag}", sym.line, sym.col)
        elif key in (":metric",):
            raise UnsupportedConstructError("metric section (:metric)", key_sym.line, key_sym.col)
        else:
            raise UnsupportedConstructError(f"problem section {key}", key_sym.line, key_sym.col)

    for atom in init:
        check_atom(atom, domain, objects, ":init")
    for atom in goal_pos | goal_neg:
        check_atom(atom, domain, objects, ":goal")

    return Problem(
        name=name,
        domain_name=domain_name,
        objects=objects,
        init=frozenset(init),
        goal_pos=frozenset(goal_pos),
        goal_neg=frozenset(goal_neg),
    )
