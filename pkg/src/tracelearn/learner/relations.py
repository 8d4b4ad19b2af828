"""The sixteen binary presence relations between two predicate positions.

A relation constrains which of the four presence/absence combinations of
two predicates may attach to one object: TT (both attached), TF (first
only), FT (second only), FF (neither). Every subset of {TT, TF, FT, FF}
names exactly one relation, so classification is a total bijection.
"""

from __future__ import annotations

from enum import Enum, Flag, auto


class Combo(Flag):
    TT = auto()
    TF = auto()
    FT = auto()
    FF = auto()


ALL_COMBOS = Combo.TT | Combo.TF | Combo.FT | Combo.FF
NO_COMBOS = Combo(0)


class Relation(Enum):
    NEVER = "never"                          # nothing allowed; contradiction
    BOTH = "both"                            # always both attached
    FIRST_ONLY = "first-only"                # first always attached, second never
    FIRST = "first"                          # first always attached
    SECOND_ONLY = "second-only"              # second always attached, first never
    SECOND = "second"                        # second always attached
    EXACTLY_ONE = "exactly-one"              # mutual exclusion (xor)
    AT_LEAST_ONE = "at-least-one"            # inclusive or
    NEITHER = "neither"                      # neither ever attached (nor)
    SAME = "same"                            # equivalent (xnor)
    NOT_SECOND = "not-second"                # second never attached
    IF_SECOND_THEN_FIRST = "if-second-then-first"
    NOT_FIRST = "not-first"                  # first never attached
    IF_FIRST_THEN_SECOND = "if-first-then-second"
    AT_MOST_ONE = "at-most-one"              # nand
    ANY = "any"                              # independent


_ALLOWED: dict[Relation, Combo] = {
    Relation.NEVER: NO_COMBOS,
    Relation.BOTH: Combo.TT,
    Relation.FIRST_ONLY: Combo.TF,
    Relation.FIRST: Combo.TT | Combo.TF,
    Relation.SECOND_ONLY: Combo.FT,
    Relation.SECOND: Combo.TT | Combo.FT,
    Relation.EXACTLY_ONE: Combo.TF | Combo.FT,
    Relation.AT_LEAST_ONE: Combo.TT | Combo.TF | Combo.FT,
    Relation.NEITHER: Combo.FF,
    Relation.SAME: Combo.TT | Combo.FF,
    Relation.NOT_SECOND: Combo.TF | Combo.FF,
    Relation.IF_SECOND_THEN_FIRST: Combo.TT | Combo.TF | Combo.FF,
    Relation.NOT_FIRST: Combo.FT | Combo.FF,
    Relation.IF_FIRST_THEN_SECOND: Combo.TT | Combo.FT | Combo.FF,
    Relation.AT_MOST_ONE: Combo.TF | Combo.FT | Combo.FF,
    Relation.ANY: ALL_COMBOS,
}

_BY_COMBOS = {combos: rel for rel, combos in _ALLOWED.items()}
assert len(_BY_COMBOS) == 16


def allowed_combos(relation: Relation) -> Combo:
    return _ALLOWED[relation]


def classify(combos: Combo) -> Relation:
    return _BY_COMBOS[combos]


def transpose(combos: Combo) -> Combo:
    """Swap the roles of the two predicates (TF <-> FT)."""
    out = combos & (Combo.TT | Combo.FF)
    if Combo.TF in combos:
        out |= Combo.FT
    if Combo.FT in combos:
        out |= Combo.TF
    return out


class Resolution(Enum):
    """What an invariant match does to an ambiguous failure record."""

    ERROR = "error"
    CONFIRM_FIRST = "confirm-first"
    CONFIRM_SECOND = "confirm-second"
    CONFIRM_BOTH = "confirm-both"
    NO_ACTION = "no-action"


RESOLUTION: dict[Relation, Resolution] = {
    Relation.NEVER: Resolution.ERROR,
    Relation.BOTH: Resolution.ERROR,
    Relation.FIRST_ONLY: Resolution.ERROR,
    Relation.SECOND_ONLY: Resolution.ERROR,
    Relation.NEITHER: Resolution.ERROR,
    Relation.FIRST: Resolution.CONFIRM_SECOND,
    Relation.NOT_FIRST: Resolution.CONFIRM_SECOND,
    Relation.SECOND: Resolution.CONFIRM_FIRST,
    Relation.NOT_SECOND: Resolution.CONFIRM_FIRST,
    Relation.AT_LEAST_ONE: Resolution.NO_ACTION,
    Relation.IF_FIRST_THEN_SECOND: Resolution.NO_ACTION,
    Relation.IF_SECOND_THEN_FIRST: Resolution.NO_ACTION,
    Relation.AT_MOST_ONE: Resolution.NO_ACTION,
    Relation.ANY: Resolution.NO_ACTION,
    Relation.EXACTLY_ONE: Resolution.CONFIRM_BOTH,
    Relation.SAME: Resolution.CONFIRM_BOTH,
}
