"""Characteristic rules: one weighted disjunct per final generalized tuple."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .errors import PipelineError, ValidationError
from .hierarchy import ConceptTree
from .relation import GeneralizedRelation, format_value_set, is_any


@dataclass(frozen=True)
class Disjunct:
    conjuncts: tuple[tuple[str, tuple[str, ...]], ...]
    weight_permyriad: int
    vote: int

    @property
    def weight(self) -> str:
        return format_weight(self.weight_permyriad)


@dataclass(frozen=True)
class Rule:
    disjuncts: tuple[Disjunct, ...]
    total_vote: int


def format_weight(permyriad: int) -> str:
    return f"{permyriad // 100}.{permyriad % 100:02d}%"


def _covers_everything(values: tuple[str, ...], tree: ConceptTree) -> bool:
    covered: set[str] = set()
    for v in values:
        covered |= tree.leaves_under(v)
    return len(covered) == tree.level_width(1)


def build_rule(
    rel: GeneralizedRelation, trees: Mapping[str, ConceptTree] | None = None
) -> Rule:
    """Turn each tuple into a conjunction weighted by its share of the votes.

    Attributes valued ``ANY`` impose no condition and are left out. With
    ``trees``, a unioned value set that together covers the whole hierarchy
    (e.g. ``{Art, Science}`` when those are the only majors) is left out too.
    Weights are truncated to hundredths of a percent.
    """
    total = rel.total_vote
    if not rel.tuples or total <= 0:
        raise PipelineError("cannot build a rule from an empty relation")
    trees = trees or {}
    disjuncts = []
    for t in rel.tuples:
        conjuncts = []
        for attr, values in zip(rel.schema, t.values):
            if is_any(values):
                continue
            tree = trees.get(attr)
            if tree is not None and len(values) > 1 and _covers_everything(values, tree):
                continue
            conjuncts.append((attr, values))
        disjuncts.append(
            Disjunct(tuple(conjuncts), t.vote * 10000 // total, t.vote)
        )
    return Rule(tuple(disjuncts), total)


def render_rule(rule: Rule, ascii: bool = False) -> str:
    member, conj, disj = ("in", "^", "V") if ascii else ("∈", "∧", "∨")
    parts = []
    for d in rule.disjuncts:
        if d.conjuncts:
            body = f" {conj} ".join(
                f"{attr}(x) {member} {format_value_set(values)}"
                for attr, values in d.conjuncts
            )
        else:
            body = "true"
        parts.append(f"{body} [{d.weight}]")
    return f" {disj} ".join(parts)


def rule_to_dict(rule: Rule) -> dict:
    return {
        "total_vote": rule.total_vote,
        "disjuncts": [
            {
                "conjuncts": [
                    {"attribute": attr, "values": list(values)}
                    for attr, values in d.conjuncts
                ],
                "vote": d.vote,
                "weight_permyriad": d.weight_permyriad,
                "weight": d.weight,
            }
            for d in rule.disjuncts
        ],
    }


def rule_to_json(rule: Rule) -> str:
    return json.dumps(rule_to_dict(rule), sort_keys=True, ensure_ascii=False)


def rule_from_dict(doc: dict) -> Rule:
    try:
        disjuncts = tuple(
            Disjunct(
                tuple(
                    (c["attribute"], tuple(c["values"])) for c in d["conjuncts"]
                ),
                int(d["weight_permyriad"]),
                int(d["vote"]),
            )
            for d in doc["disjuncts"]
        )
        return Rule(disjuncts, int(doc["total_vote"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed rule document: {exc}") from None


def rule_from_json(text: str) -> Rule:
    return rule_from_dict(json.loads(text))
