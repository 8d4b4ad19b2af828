"""Invariant extraction and ambiguity resolution.

Effect lists yield primitive rules: ordered pairs of effect literals that
share a variable, tagged with added/deleted polarity. Rules disproved by
some action touching one predicate without the other are filtered out;
groups covering all four add/remove cases become invariants (mutual
exclusion when polarities always oppose, equivalence when they always
agree). Initial states contribute their own invariants per
predicate-position pair, classified from the combinations actually
observed. Both sources merge by unioning allowed combinations, and the
result is used to settle failures that step 2 left ambiguous.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..pddl.model import Atom, Domain, is_variable
from ..trace import Trajectory
from .model import ActionKnowledge, CandidateModel, ViolationRecord
from .relations import Combo, NO_COMBOS, Relation, Resolution, RESOLUTION, classify, transpose

log = logging.getLogger(__name__)

PredPos = tuple[str, int]
InvariantKey = tuple[PredPos, PredPos]


@dataclass(frozen=True)
class PrimitiveRule:
    """Two effect literals sharing a variable, with their list polarities.

    Identity ignores the witnessing variable: the same co-occurrence shape
    found in two actions is one rule.
    """

    p: PredPos
    q: PredPos
    p_added: bool
    q_added: bool
    var: str = field(compare=False, default="?")

    @property
    def opposite_polarity(self) -> bool:
        return self.p_added != self.q_added


@dataclass(frozen=True)
class InvariantRelation:
    first: PredPos
    second: PredPos
    allowed: Combo

    @property
    def key(self) -> InvariantKey:
        return (self.first, self.second)

    @property
    def relation(self) -> Relation:
        return classify(self.allowed)


def _positions(atom: Atom, var: str) -> list[int]:
    return [i for i, a in enumerate(atom.args) if a == var]


def extract_effect_rules(model: CandidateModel) -> set[PrimitiveRule]:
    """Primitive rules from every action's effect lists."""
    rules: set[PrimitiveRule] = set()
    for knowledge in model.actions.values():
        effects = [(a, True) for a in knowledge.eff_add] + [(a, False) for a in knowledge.eff_del]
        for a1, pol1 in effects:
            for a2, pol2 in effects:
                if a1 == a2 and pol1 == pol2:
                    continue
                shared = {v for v in a1.args if is_variable(v)} & set(a2.args)
                for var in shared:
                    for i in _positions(a1, var):
                        for j in _positions(a2, var):
                            p, q = (a1.pred, i), (a2.pred, j)
                            if p == q:
                                continue
                            rules.add(PrimitiveRule(p=p, q=q, p_added=pol1, q_added=pol2, var=var))
    return rules


def filter_rules(rules: set[PrimitiveRule], model: CandidateModel) -> set[PrimitiveRule]:
    """Drop rules disproved by an action whose effects touch q but not p."""
    touched: list[set[str]] = [
        {a.pred for a in k.eff_add} | {a.pred for a in k.eff_del}
        for k in model.actions.values()
    ]
    out = set()
    for rule in rules:
        p_pred, q_pred = rule.p[0], rule.q[0]
        if any(q_pred in preds and p_pred not in preds for preds in touched):
            continue
        out.add(rule)
    return out


def merge_rules(rules: set[PrimitiveRule]) -> dict[InvariantKey, InvariantRelation]:
    """Turn four-rule groups over one predicate-position pair into invariants."""
    groups: dict[InvariantKey, set[PrimitiveRule]] = {}
    for rule in rules:
        key = tuple(sorted((rule.p, rule.q)))
        groups.setdefault(key, set()).add(rule)
    out: dict[InvariantKey, InvariantRelation] = {}
    for key, members in groups.items():
        if len(members) != 4:
            continue
        if all(r.opposite_polarity for r in members):
            allowed = Combo.TF | Combo.FT
        elif all(not r.opposite_polarity for r in members):
            allowed = Combo.TT | Combo.FF
        else:
            continue  # inconsistent polarities name no single relation
        out[key] = InvariantRelation(first=key[0], second=key[1], allowed=allowed)
    return out


def init_invariants(
    trajectories: list[Trajectory], domain: Domain
) -> dict[InvariantKey, InvariantRelation]:
    """Invariants read off the initial state of every trajectory.

    For each pair of distinct predicates and each type-compatible pair of
    argument positions, the allowed set is exactly the presence
    combinations that some compatible object exhibits in an initial state.
    """
    combos_by_key: dict[InvariantKey, Combo] = {}
    for trajectory in trajectories:
        attached: dict[PredPos, set[str]] = {}
        for atom in trajectory.init:
            for i, obj in enumerate(atom.args):
                attached.setdefault((atom.pred, i), set()).add(obj)

        positions: list[tuple[str, int, str]] = []  # (pred, pos, slot type)
        for pred in domain.predicates.values():
            for i, typ in enumerate(pred.param_types):
                positions.append((pred.name, i, typ))

        objects_by_type: dict[str, list[str]] = {}

        def compatible(typ: str) -> list[str]:
            cached = objects_by_type.get(typ)
            if cached is None:
                cached = [
                    o for o, t in trajectory.objects.items() if domain.types.is_subtype(t, typ)
                ]
                objects_by_type[typ] = cached
            return cached

        for p_name, i, p_type in positions:
            for q_name, j, q_type in positions:
                if p_name == q_name:
                    continue
                first, second = (p_name, i), (q_name, j)
                if first > second:
                    continue  # handled from the other direction
                objs = [o for o in compatible(p_type) if o in set(compatible(q_type))]
                if not objs:
                    continue
                a_set = attached.get(first, set())
                b_set = attached.get(second, set())
                combos = NO_COMBOS
                for o in objs:
                    in_a, in_b = o in a_set, o in b_set
                    if in_a and in_b:
                        combos |= Combo.TT
                    elif in_a:
                        combos |= Combo.TF
                    elif in_b:
                        combos |= Combo.FT
                    else:
                        combos |= Combo.FF
                key = (first, second)
                combos_by_key[key] = combos_by_key.get(key, NO_COMBOS) | combos
    return {
        key: InvariantRelation(first=key[0], second=key[1], allowed=combos)
        for key, combos in combos_by_key.items()
    }


def merge_invariants(
    effect_invariants: dict[InvariantKey, InvariantRelation],
    init_state_invariants: dict[InvariantKey, InvariantRelation],
) -> dict[InvariantKey, InvariantRelation]:
    """Union the allowed sets; keys present on one side only carry over."""
    out: dict[InvariantKey, InvariantRelation] = {}
    for key in set(effect_invariants) | set(init_state_invariants):
        allowed = NO_COMBOS
        if key in effect_invariants:
            allowed |= effect_invariants[key].allowed
        if key in init_state_invariants:
            allowed |= init_state_invariants[key].allowed
        out[key] = InvariantRelation(first=key[0], second=key[1], allowed=allowed)
    return out


def _confirm(knowledge: ActionKnowledge, literal: Atom, positive: bool) -> None:
    if positive:
        if literal in knowledge.step1_pre_pos:
            knowledge.pre_pos[literal] = True
    else:
        if literal in knowledge.step1_pre_neg:
            knowledge.pre_neg[literal] = True


def resolve_ambiguities(
    records: list[ViolationRecord],
    invariants: dict[InvariantKey, InvariantRelation],
    model: CandidateModel,
) -> list[str]:
    """Apply the per-relation resolution policy to ambiguous records.

    Confirmed literals are reinstated into the (possibly pruned)
    precondition sets of the failing action. Relations that flatly
    contradict an observed failure produce diagnostics, never aborts.
    Returns the diagnostics.
    """
    diagnostics: list[str] = []
    for record in records:
        if record.confirming:
            continue
        knowledge = model.actions.get(record.action.name)
        if knowledge is None:
            continue
        literals = [(a, True) for a in sorted(record.r_pos)] + [
            (a, False) for a in sorted(record.r_neg)
        ]
        for key in sorted(invariants):
            inv = invariants[key]
            (p_pred, p_pos), (q_pred, q_pos) = inv.first, inv.second
            for l1, sign1 in literals:
                if l1.pred != p_pred or p_pos >= len(l1.args):
                    continue
                for l2, sign2 in literals:
                    if l2.pred != q_pred or q_pos >= len(l2.args):
                        continue
                    if (l1, sign1) == (l2, sign2) or l1.args[p_pos] != l2.args[q_pos]:
                        continue
                    action = RESOLUTION[inv.relation]
                    if action is Resolution.ERROR:
                        diagnostics.append(
                            f"invariant {inv.relation.value} on {p_pred}@{p_pos}/"
                            f"{q_pred}@{q_pos} is inconsistent with the failure of "
                            f"{record.action}"
                        )
                    elif action is Resolution.CONFIRM_FIRST:
                        _confirm(knowledge, l1, sign1)
                    elif action is Resolution.CONFIRM_SECOND:
                        _confirm(knowledge, l2, sign2)
                    elif action is Resolution.CONFIRM_BOTH:
                        _confirm(knowledge, l1, sign1)
                        _confirm(knowledge, l2, sign2)
    return diagnostics


def compute_invariants(
    trajectories: list[Trajectory], domain: Domain, model: CandidateModel
) -> dict[InvariantKey, InvariantRelation]:
    """The merged invariant set steps 3(a)-(e) produce."""
    rules = filter_rules(extract_effect_rules(model), model)
    effect_inv = merge_rules(rules)
    init_inv = init_invariants(trajectories, domain)
    return merge_invariants(effect_inv, init_inv)


def step3_invariants(
    trajectories: list[Trajectory],
    domain: Domain,
    model: CandidateModel,
    records: list[ViolationRecord],
) -> CandidateModel:
    """Full invariant stage; diagnostics go to the module logger."""
    model = model.copy()
    invariants = compute_invariants(trajectories, domain, model)
    for message in resolve_ambiguities(records, invariants, model):
        log.warning(message)
    return model
