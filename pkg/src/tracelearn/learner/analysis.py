"""Trace analysis: successful actions first, then failed ones.

Successful transitions yield effects (delta states, generalized) and
precondition candidates (every well-typed grounding over the action's own
objects, split by truth in the pre-state, generalized). Candidates are
intersected across occurrences of the same action; effects are unioned.

Failed transitions test the candidates: a failure violating exactly one
candidate confirms it, anything else is recorded as ambiguous for the
invariant stage. Actions that failed at least once then have their
unconfirmed candidates pruned; actions that never failed keep their full
candidate sets, because no failure ever disambiguated them.
"""

from __future__ import annotations

from ..errors import ValidationError
from ..pddl.model import Domain, generalize, ground_atoms, typed_groundings
from ..trace import Trajectory
from .model import ActionKnowledge, CandidateModel, ViolationRecord


def _action_objects(args: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(args))


def _restrict(state: frozenset, objs: frozenset) -> frozenset:
    """Drop atoms mentioning any object outside `objs`; zero-arity atoms stay."""
    return frozenset(a for a in state if all(arg in objs for arg in a.args))


def step1_successful(trajectories: list[Trajectory], domain: Domain) -> CandidateModel:
    """Build the initial model from ok transitions."""
    model = CandidateModel()
    for trajectory in trajectories:
        for tr in trajectory.transitions:
            if not tr.ok:
                continue
            schema = domain.actions.get(tr.action.name)
            if schema is None:
                raise ValidationError(f"unknown action schema {tr.action.name!r}")
            for obj in tr.action.args:
                if obj not in trajectory.objects:
                    raise ValidationError(
                        f"object {obj!r} of {tr.action} is not in the trajectory's object list"
                    )
            objs = _action_objects(tr.action.args)
            obj_set = frozenset(objs)
            restricted_pre = _restrict(tr.pre_state, obj_set)
            restricted_post = _restrict(tr.post_state, obj_set)
            fluents = typed_groundings(
                domain.predicates.values(), objs, trajectory.objects, domain.types
            )
            pre_pos = generalize(fluents & restricted_pre, schema, tr.action.args)
            pre_neg = generalize(fluents - restricted_pre, schema, tr.action.args)
            eff_add = generalize(restricted_post - restricted_pre, schema, tr.action.args)
            eff_del = generalize(restricted_pre - restricted_post, schema, tr.action.args)

            knowledge = model.actions.get(tr.action.name)
            if knowledge is None:
                knowledge = ActionKnowledge(name=tr.action.name, params=schema.params)
                knowledge.pre_pos = {a: False for a in pre_pos}
                knowledge.pre_neg = {a: False for a in pre_neg}
                model.actions[tr.action.name] = knowledge
            else:
                knowledge.pre_pos = {a: f for a, f in knowledge.pre_pos.items() if a in pre_pos}
                knowledge.pre_neg = {a: f for a, f in knowledge.pre_neg.items() if a in pre_neg}
            knowledge.eff_add |= eff_add
            knowledge.eff_del |= eff_del
            knowledge.success_count += 1
            knowledge.check_effect_consistency()

    for knowledge in model.actions.values():
        knowledge.step1_pre_pos = frozenset(knowledge.pre_pos)
        knowledge.step1_pre_neg = frozenset(knowledge.pre_neg)
    return model


def step2_failed(
    trajectories: list[Trajectory], domain: Domain, model: CandidateModel
) -> tuple[CandidateModel, list[ViolationRecord]]:
    """Confirm or question precondition candidates using failures.

    Returns a new model plus every violation record, confirming ones
    included; the invariant stage only consumes the ambiguous ones.
    """
    model = model.copy()
    records: list[ViolationRecord] = []
    for trajectory in trajectories:
        for tr in trajectory.transitions:
            if tr.ok:
                continue
            schema = domain.actions.get(tr.action.name)
            if schema is None:
                raise ValidationError(f"unknown action schema {tr.action.name!r}")
            knowledge = model.actions.get(tr.action.name)
            if knowledge is None:
                # attempted but never succeeded: known to exist, nothing else
                knowledge = ActionKnowledge(name=tr.action.name, params=schema.params)
                model.actions[tr.action.name] = knowledge
            knowledge.failure_count += 1

            missing = {
                g
                for g in ground_atoms(knowledge.pre_pos, schema, tr.action.args)
                if g not in tr.pre_state
            }
            present = {
                g
                for g in ground_atoms(knowledge.pre_neg, schema, tr.action.args)
                if g in tr.pre_state
            }
            r_pos = generalize(missing, schema, tr.action.args)
            r_neg = generalize(present, schema, tr.action.args)
            record = ViolationRecord(action=tr.action, r_pos=r_pos, r_neg=r_neg)
            records.append(record)
            if record.confirming:
                if r_pos:
                    (literal,) = r_pos
                    if literal in knowledge.pre_pos:
                        knowledge.pre_pos[literal] = True
                else:
                    (literal,) = r_neg
                    if literal in knowledge.pre_neg:
                        knowledge.pre_neg[literal] = True

    for knowledge in model.actions.values():
        if knowledge.failure_count > 0:
            knowledge.pre_pos = {a: True for a, f in knowledge.pre_pos.items() if f}
            knowledge.pre_neg = {a: True for a, f in knowledge.pre_neg.items() if f}
    return model, records
