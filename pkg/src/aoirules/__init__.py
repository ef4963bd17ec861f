"""Attribute-oriented induction of characteristic rules over concept hierarchies."""

from .engine import MiningResult, mine
from .errors import AOIError, DataError, HierarchyError, PipelineError, ProfileError, ValidationError
from .hierarchy import ConceptTree, parse_tree, tree_stats
from .interest import Role, ScoreReport, coverage_score, nonzero_product, rank_attributes
from .relation import GeneralizedRelation, LearningTask, Relation, load_table
from .rules import Rule, build_rule, render_rule

__all__ = [
    "AOIError",
    "ConceptTree",
    "DataError",
    "GeneralizedRelation",
    "HierarchyError",
    "LearningTask",
    "MiningResult",
    "PipelineError",
    "ProfileError",
    "Relation",
    "Role",
    "Rule",
    "ScoreReport",
    "ValidationError",
    "build_rule",
    "coverage_score",
    "load_table",
    "mine",
    "nonzero_product",
    "parse_tree",
    "rank_attributes",
    "render_rule",
    "tree_stats",
]
