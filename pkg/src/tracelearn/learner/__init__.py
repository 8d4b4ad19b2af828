"""Action-model learning from play traces.

Three stages: delta-state analysis of successful actions, candidate
confirmation from failed actions, and invariant-based resolution of the
ambiguous failures. Each stage is a pure function; `learn` chains them and
can stop early so any stage's output is inspectable.
"""

from __future__ import annotations

from ..pddl.model import Domain
from ..trace import Trajectory
from .analysis import step1_successful, step2_failed
from .invariants import (
    InvariantRelation,
    PrimitiveRule,
    compute_invariants,
    extract_effect_rules,
    filter_rules,
    init_invariants,
    merge_invariants,
    merge_rules,
    resolve_ambiguities,
    step3_invariants,
)
from .model import ActionKnowledge, CandidateModel, ViolationRecord
from .relations import Combo, Relation, Resolution, RESOLUTION, allowed_combos, classify

STAGES = (1, 2, 3)


def learn(trajectories: list[Trajectory], domain: Domain, stage: int = 3) -> CandidateModel:
    """Learn an action model, running the pipeline up to `stage`."""
    if stage not in STAGES:
        raise ValueError(f"stage must be one of {STAGES}, got {stage}")
    model = step1_successful(trajectories, domain)
    if stage == 1:
        return model
    model, records = step2_failed(trajectories, domain, model)
    if stage == 2:
        return model
    return step3_invariants(trajectories, domain, model, records)


__all__ = [
    "ActionKnowledge",
    "CandidateModel",
    "Combo",
    "InvariantRelation",
    "PrimitiveRule",
    "RESOLUTION",
    "Relation",
    "Resolution",
    "STAGES",
    "ViolationRecord",
    "allowed_combos",
    "classify",
    "compute_invariants",
    "extract_effect_rules",
    "filter_rules",
    "init_invariants",
    "learn",
    "merge_invariants",
    "merge_rules",
    "resolve_ambiguities",
    "step1_successful",
    "step2_failed",
    "step3_invariants",
]
