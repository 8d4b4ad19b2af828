"""Scoring a learned model against ground truth.

Literals are matched exactly after renaming both schemas' variables by
parameter position, bucket by bucket (positive/negative preconditions,
add/delete effects); a literal never earns credit in the wrong bucket.
The F1 of the per-action confusion counts is the proficiency score for
that mechanic. Actions the learner never saw are flagged unobserved
rather than scored zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import ValidationError
from .learner.model import CandidateModel
from .pddl.model import ActionSchema, Atom, Domain


class ConfusionCounts(NamedTuple):
    tp: int
    fp: int
    fn: int


def _canonical(schema: ActionSchema) -> tuple[frozenset, frozenset, frozenset, frozenset]:
    rename = {var: f"?x{i}" for i, (var, _) in enumerate(schema.params)}
    return tuple(
        frozenset(Atom(a.pred, tuple(rename.get(t, t) for t in a.args)) for a in bucket)
        for bucket in (schema.pre_pos, schema.pre_neg, schema.eff_add, schema.eff_del)
    )


def compare_action(learned: ActionSchema, truth: ActionSchema) -> ConfusionCounts:
    """Confusion counts over the four literal buckets."""
    if len(learned.params) != len(truth.params):
        raise ValidationError(
            f"action {truth.name!r}: learned arity {len(learned.params)} "
            f"differs from ground truth {len(truth.params)}"
        )
    tp = fp = fn = 0
    for l_bucket, t_bucket in zip(_canonical(learned), _canonical(truth)):
        tp += len(l_bucket & t_bucket)
        fp += len(l_bucket - t_bucket)
        fn += len(t_bucket - l_bucket)
    return ConfusionCounts(tp, fp, fn)


def f1(counts: ConfusionCounts) -> float:
    """Harmonic mean of precision and recall; zero when both vanish."""
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class ActionScore:
    name: str
    unobserved: bool
    counts: ConfusionCounts | None = None
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0
    precision_undefined: bool = False

    def to_record(self) -> dict:
        if self.unobserved:
            return {"action": self.name, "unobserved": True}
        return {
            "action": self.name,
            "unobserved": False,
            "tp": self.counts.tp,
            "fp": self.counts.fp,
            "fn": self.counts.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "precision_undefined": self.precision_undefined,
        }


@dataclass(frozen=True)
class ProficiencyReport:
    rows: tuple[ActionScore, ...]

    def row(self, name: str) -> ActionScore:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_records(self) -> list[dict]:
        return [r.to_record() for r in self.rows]

    def to_text(self) -> str:
        width = max([len(r.name) for r in self.rows] + [len("action")])
        lines = [f"{'action':<{width}}  {'tp':>4} {'fp':>4} {'fn':>4}  {'prec':>6} {'rec':>6} {'f1':>6}"]
        for r in self.rows:
            if r.unobserved:
                lines.append(f"{r.name:<{width}}  unobserved")
            else:
                lines.append(
                    f"{r.name:<{width}}  {r.counts.tp:>4} {r.counts.fp:>4} {r.counts.fn:>4}  "
                    f"{r.precision:>6.3f} {r.recall:>6.3f} {r.f1:>6.3f}"
                )
        return "\n".join(lines) + "\n"


def score_action(learned: ActionSchema, truth: ActionSchema) -> ActionScore:
    counts = compare_action(learned, truth)
    undefined = counts.tp + counts.fp == 0
    precision = counts.tp / (counts.tp + counts.fp) if not undefined else 0.0
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
    return ActionScore(
        name=truth.name,
        unobserved=False,
        counts=counts,
        precision=precision,
        recall=recall,
        f1=f1(counts),
        precision_undefined=undefined,
    )


def report(learned: Union[Domain, CandidateModel], truth: Domain) -> ProficiencyReport:
    """One row per ground-truth action, in name order."""
    if isinstance(learned, CandidateModel):
        learned = learned.to_domain(truth)
    unknown = set(learned.actions) - set(truth.actions)
    if unknown:
        raise ValidationError(
            f"learned model contains actions absent from ground truth: {sorted(unknown)}"
        )
    rows = []
    for name in sorted(truth.actions):
        schema = learned.actions.get(name)
        if schema is None:
            rows.append(ActionScore(name=name, unobserved=True))
        else:
            rows.append(score_action(schema, truth.actions[name]))
    return ProficiencyReport(rows=tuple(rows))
