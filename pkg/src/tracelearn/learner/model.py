"""Learned-model working state.

The candidate model tracks, per action, which lifted literals are still in
play as preconditions (with a confirmed mark) and the effect literals
accumulated from delta states. It converts to a plain Domain for printing
and scoring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValidationError
from ..pddl.model import ActionSchema, Atom, Domain, GroundAction


@dataclass
class ActionKnowledge:
    name: str
    params: tuple[tuple[str, str], ...]
    pre_pos: dict[Atom, bool] = field(default_factory=dict)
    pre_neg: dict[Atom, bool] = field(default_factory=dict)
    eff_add: set[Atom] = field(default_factory=set)
    eff_del: set[Atom] = field(default_factory=set)
    success_count: int = 0
    failure_count: int = 0
    # step-1 candidates frozen before any pruning; confirmations may only
    # reinstate literals that were candidates in the first place
    step1_pre_pos: frozenset = frozenset()
    step1_pre_neg: frozenset = frozenset()

    def copy(self) -> "ActionKnowledge":
        return ActionKnowledge(
            name=self.name,
            params=self.params,
            pre_pos=dict(self.pre_pos),
            pre_neg=dict(self.pre_neg),
            eff_add=set(self.eff_add),
            eff_del=set(self.eff_del),
            success_count=self.success_count,
            failure_count=self.failure_count,
            step1_pre_pos=self.step1_pre_pos,
            step1_pre_neg=self.step1_pre_neg,
        )

    def check_effect_consistency(self) -> None:
        conflict = self.eff_add & self.eff_del
        if conflict:
            raise ValidationError(
                f"action {self.name!r} observed both adding and deleting "
                f"{sorted(str(a) for a in conflict)}; the trace is not deterministic"
            )

    def schema(self) -> ActionSchema:
        return ActionSchema(
            name=self.name,
            params=self.params,
            pre_pos=frozenset(self.pre_pos),
            pre_neg=frozenset(self.pre_neg),
            eff_add=frozenset(self.eff_add),
            eff_del=frozenset(self.eff_del),
        )


@dataclass
class CandidateModel:
    actions: dict[str, ActionKnowledge] = field(default_factory=dict)

    def copy(self) -> "CandidateModel":
        return CandidateModel({name: k.copy() for name, k in self.actions.items()})

    def observed(self, name: str) -> bool:
        return name in self.actions

    def to_domain(self, reference: Domain) -> Domain:
        """Printable domain: reference signature, learned actions only."""
        return Domain(
            name=f"{reference.name}-learned",
            types=reference.types,
            predicates=dict(reference.predicates),
            actions={name: k.schema() for name, k in sorted(self.actions.items())},
        )


@dataclass(frozen=True)
class ViolationRecord:
    """Lifted literals that a failed action found unsatisfied."""

    action: GroundAction
    r_pos: frozenset  # candidate positive preconditions absent from the state
    r_neg: frozenset  # candidate negative preconditions present in the state

    @property
    def confirming(self) -> bool:
        return (len(self.r_pos) == 1 and not self.r_neg) or (
            not self.r_pos and len(self.r_neg) == 1
        )

    @property
    def status(self) -> str:
        return "confirming" if self.confirming else "ambiguous"
