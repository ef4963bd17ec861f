"""Attribute-oriented induction of characteristic rules.

The pipeline run by :func:`mine`:

1. select the task-relevant tuples and drop the class attribute;
2. remove attributes that have no hierarchy and too many distinct values;
3. ascend every attribute one level at a time until it has at most
   ``attribute_threshold`` distinct values, merging identical tuples and
   recording the distinct count at every level the column occupies;
4. rank the attributes by interestingness;
5. while the relation is above ``relation_threshold``, ascend the top-ranked
   attribute;
6. if still above the threshold, union the middle-ranked attributes within
   groups of the anchor attribute;
7. read off the rule.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .errors import PipelineError
from .hierarchy import ConceptTree
from .interest import Role, ScoreReport, rank_attributes, score_attribute
from .relation import (
    GeneralizedRelation,
    GeneralizedTuple,
    LearningTask,
    Relation,
    merge_identical,
    remove_attribute,
    select_task_relevant,
)
from .rules import Rule, build_rule

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelProfile:
    attribute: str
    cr: tuple[int, ...]
    current_level: int


@dataclass(frozen=True)
class AscendStep:
    attribute: str
    from_level: int
    to_level: int
    tuples: int

    def __str__(self) -> str:
        return f"ASCEND {self.attribute} L{self.from_level}->{self.to_level} tuples={self.tuples}"


@dataclass
class GeneralizationTrace:
    profiles: list[LevelProfile] = field(default_factory=list)
    removed: list[str] = field(default_factory=list)
    steps: list[AscendStep] = field(default_factory=list)
    # relation snapshots after each stage, keyed by stage name
    stages: dict[str, GeneralizedRelation] = field(default_factory=dict)

    def profile(self, attribute: str) -> LevelProfile:
        for p in self.profiles:
            if p.attribute == attribute:
                return p
        raise KeyError(attribute)

    def render_steps(self) -> str:
        return "\n".join(str(s) for s in self.steps)


def column_level(rel: GeneralizedRelation, attr: str, tree: ConceptTree) -> int:
    """Common level of a column of singleton values."""
    j = rel.index(attr)
    levels = set()
    for t in rel.tuples:
        values = t.values[j]
        if len(values) != 1:
            raise PipelineError(f"column {attr!r} holds unioned value sets")
        levels.add(tree.level_of(values[0]))
    if len(levels) > 1:
        raise PipelineError(f"column {attr!r} mixes levels {sorted(levels)}")
    return levels.pop() if levels else 1


def ascend_column(
    rel: GeneralizedRelation, attr: str, tree: ConceptTree
) -> GeneralizedRelation:
    """Replace every value of ``attr`` by its parent concept and re-merge."""
    level = column_level(rel, attr, tree)
    if level >= tree.depth:
        raise PipelineError(f"column {attr!r} is already at ANY")
    j = rel.index(attr)
    parent: dict[str, str] = {}
    tuples = []
    for t in rel.tuples:
        v = t.values[j][0]
        up = parent.get(v)
        if up is None:
            up = parent[v] = tree.ancestor_at_level(v, level + 1)
        values = t.values[:j] + ((up,),) + t.values[j + 1:]
        tuples.append(GeneralizedTuple(values, t.vote))
    return merge_identical(GeneralizedRelation(rel.schema, tuple(tuples)))


def apply_attribute_removal(
    rel: GeneralizedRelation,
    trees: Mapping[str, ConceptTree],
    task: LearningTask,
) -> tuple[GeneralizedRelation, list[str]]:
    """Drop attributes with no hierarchy and more than the attribute threshold of values."""
    removed = []
    for attr in rel.schema:
        if attr in trees:
            continue
        if len(rel.distinct(attr)) > task.attribute_threshold:
            removed.append(attr)
    for attr in removed:
        rel = remove_attribute(rel, attr)
    return rel, removed


def enforce_attribute_thresholds(
    rel: GeneralizedRelation,
    trees: Mapping[str, ConceptTree],
    task: LearningTask,
    trace: GeneralizationTrace | None = None,
) -> tuple[GeneralizedRelation, GeneralizationTrace]:
    if trace is None:
        trace = GeneralizationTrace()
    rel = merge_identical(rel)
    for attr in rel.schema:
        tree = trees.get(attr)
        if tree is None:
            continue
        level = column_level(rel, attr, tree)
        cr = [0] * tree.depth
        cr[level - 1] = len(rel.distinct(attr))
        while cr[level - 1] > task.attribute_threshold and level < tree.depth:
            rel = ascend_column(rel, attr, tree)
            level += 1
            cr[level - 1] = len(rel.distinct(attr))
            trace.steps.append(AscendStep(attr, level - 1, level, len(rel)))
        trace.profiles.append(LevelProfile(attr, tuple(cr), level))
    return rel, trace


def assign_roles(
    profiles: Sequence[LevelProfile],
    trees: Mapping[str, ConceptTree],
    schema: Sequence[str],
) -> ScoreReport:
    if len(profiles) < 2:
        raise PipelineError(
            f"need at least 2 generalizable attributes to assign roles, got {len(profiles)}"
        )
    scores = [
        score_attribute(p.attribute, p.cr, trees[p.attribute].widths, list(schema).index(p.attribute))
        for p in profiles
    ]
    return rank_attributes(scores)


def _further(roles: Mapping[str, Role]) -> str:
    return next(a for a, r in roles.items() if r is Role.FURTHER_GENERALIZATION)


def reduce_relation(
    rel: GeneralizedRelation,
    roles: Mapping[str, Role],
    trees: Mapping[str, ConceptTree],
    task: LearningTask,
    trace: GeneralizationTrace | None = None,
) -> GeneralizedRelation:
    """Ascend the further-generalization attribute until the relation fits."""
    attr = _further(roles)
    tree = trees[attr]
    level = column_level(rel, attr, tree)
    while len(rel) > task.relation_threshold and level < tree.depth:
        rel = ascend_column(rel, attr, tree)
        level += 1
        if trace is not None:
            trace.steps.append(AscendStep(attr, level - 1, level, len(rel)))
    return rel


def union_simplify(
    rel: GeneralizedRelation, roles: Mapping[str, Role]
) -> GeneralizedRelation:
    """Group tuples on every non-union column and collect union values into sets."""
    union_cols = [j for j, a in enumerate(rel.schema) if roles.get(a) is Role.UNION]
    key_cols = [j for j in range(len(rel.schema)) if j not in union_cols]
    groups: dict[tuple, list] = {}
    for t in rel.tuples:
        k = tuple(frozenset(t.values[j]) for j in key_cols)
        g = groups.get(k)
        if g is None:
            groups[k] = [list(map(list, t.values)), t.vote]
            continue
        for j in union_cols:
            acc = g[0][j]
            for v in t.values[j]:
                if v not in acc:
                    acc.append(v)
        g[1] += t.vote
    tuples = tuple(
        GeneralizedTuple(tuple(tuple(v) for v in values), vote)
        for values, vote in groups.values()
    )
    return GeneralizedRelation(rel.schema, tuples)


def replay(
    initial: GeneralizedRelation,
    steps: Sequence[AscendStep],
    trees: Mapping[str, ConceptTree],
) -> GeneralizedRelation:
    rel = merge_identical(initial)
    for s in steps:
        rel = ascend_column(rel, s.attribute, trees[s.attribute])
    return rel


class MiningResult(NamedTuple):
    relation: GeneralizedRelation
    trace: GeneralizationTrace
    report: ScoreReport
    rule: Rule


def mine(
    rel: Relation,
    task: LearningTask,
    trees: Mapping[str, ConceptTree],
    roles: Mapping[str, Role] | None = None,
) -> MiningResult:
    """Run the whole induction pipeline.

    ``roles`` overrides the ranked roles for the reduction and union stages;
    the score report is computed either way.
    """
    trace = GeneralizationTrace()
    current = select_task_relevant(rel, task, trees)
    if not current.tuples:
        raise PipelineError(
            f"no tuples covered by {task.class_attribute}={task.target_concept}"
        )
    trace.stages["selected"] = current
    current, trace.removed = apply_attribute_removal(current, trees, task)
    trace.stages["removed"] = current
    current, _ = enforce_attribute_thresholds(current, trees, task, trace)
    trace.stages["attribute_thresholds"] = current

    report = assign_roles(trace.profiles, trees, current.schema)
    if roles is None:
        roles = report.roles
    elif list(roles.values()).count(Role.FURTHER_GENERALIZATION) != 1:
        raise PipelineError("forced roles need exactly one FurtherGeneralization")

    if len(current) > task.relation_threshold:
        current = reduce_relation(current, roles, trees, task, trace)
        trace.stages["reduced"] = current
        if len(current) > task.relation_threshold:
            current = union_simplify(current, roles)
            trace.stages["unioned"] = current
            if len(current) > task.relation_threshold:
                log.warning(
                    "final relation has %d tuples, above the threshold %d",
                    len(current),
                    task.relation_threshold,
                )
    trace.stages["final"] = current
    return MiningResult(current, trace, report, build_rule(current, trees))
