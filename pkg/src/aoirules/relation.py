"""Base relations, generalized relations and vote-propagating merges."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DataError, HierarchyError
from .hierarchy import ROOT, ConceptTree


@dataclass(frozen=True)
class Relation:
    schema: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    source: str = ""

    def __post_init__(self):
        width = len(self.schema)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise DataError(f"row {i} has {len(row)} values, schema has {width}")

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, attr: str) -> list[str]:
        j = self.schema.index(attr)
        return [row[j] for row in self.rows]


@dataclass(frozen=True)
class GeneralizedTuple:
    values: tuple[tuple[str, ...], ...]
    vote: int

    def __post_init__(self):
        if self.vote < 1:
            raise DataError(f"vote must be >= 1, got {self.vote}")
        if any(not v for v in self.values):
            raise DataError("empty value set in generalized tuple")

    def key(self) -> tuple[frozenset[str], ...]:
        return tuple(frozenset(v) for v in self.values)


@dataclass(frozen=True)
class GeneralizedRelation:
    schema: tuple[str, ...]
    tuples: tuple[GeneralizedTuple, ...]

    def __len__(self) -> int:
        return len(self.tuples)

    @property
    def total_vote(self) -> int:
        return sum(t.vote for t in self.tuples)

    def index(self, attr: str) -> int:
        try:
            return self.schema.index(attr)
        except ValueError:
            raise DataError(f"unknown attribute {attr!r}") from None

    def distinct(self, attr: str) -> set[frozenset[str]]:
        j = self.index(attr)
        return {frozenset(t.values[j]) for t in self.tuples}

    def as_rows(self) -> list[tuple]:
        """Plain ``(value, ..., vote)`` rows; singleton sets collapse to strings."""
        return [
            (*(v[0] if len(v) == 1 else v for v in t.values), t.vote)
            for t in self.tuples
        ]

    def render(self) -> str:
        lines = ["\t".join([*self.schema, "Vote"])]
        for t in self.tuples:
            cells = [format_value_set(v) for v in t.values]
            lines.append("\t".join([*cells, str(t.vote)]))
        return "\n".join(lines)


def format_value_set(values: Sequence[str]) -> str:
    if len(values) == 1:
        return values[0]
    return "{" + ", ".join(values) + "}"


@dataclass(frozen=True)
class LearningTask:
    class_attribute: str
    target_concept: str
    attribute_threshold: int
    relation_threshold: int

    def __post_init__(self):
        if self.attribute_threshold < 1 or self.relation_threshold < 1:
            raise DataError("thresholds must be >= 1")


def load_table(
    text: str, schema: Sequence[str] | None = None, delimiter: str = ","
) -> Relation:
    """Read delimiter-separated text whose first line is the header."""
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DataError("empty file: missing header") from None
    if not any(header):
        raise DataError("missing header")
    if schema is not None and list(schema) != header:
        raise DataError(f"header {header} does not match schema {list(schema)}")
    if len(set(header)) != len(header):
        raise DataError(f"duplicate column in header {header}")

    rows = []
    for row in reader:
        if not row:
            continue
        lineno = reader.line_num
        if len(row) != len(header):
            raise DataError(
                f"line {lineno}: expected {len(header)} fields, got {len(row)}"
            )
        row = tuple(v.strip() for v in row)
        if not all(row):
            raise DataError(f"line {lineno}: empty field")
        rows.append(row)
    if not rows:
        raise DataError("empty relation")
    return Relation(tuple(header), tuple(rows))


def select_task_relevant(
    rel: Relation, task: LearningTask, trees: Mapping[str, ConceptTree]
) -> GeneralizedRelation:
    """Keep rows of the target class and drop the class column.

    Every attribute that has a tree must hold leaf concepts; the class value of
    each row must be known to the class hierarchy.
    """
    cls = task.class_attribute
    if cls not in rel.schema:
        raise DataError(f"class attribute {cls!r} not in schema")
    if cls not in trees:
        raise DataError(f"no hierarchy for class attribute {cls!r}")
    ctree = trees[cls]
    if task.target_concept not in ctree:
        raise HierarchyError(
            f"target concept {task.target_concept!r} not in hierarchy {cls!r}"
        )

    for j, attr in enumerate(rel.schema):
        tree = trees.get(attr)
        if tree is None:
            continue
        bad = sorted({row[j] for row in rel.rows if not tree.is_leaf(row[j])})
        if bad:
            kind = "unknown class value(s)" if attr == cls else "non-leaf or unknown value(s)"
            raise DataError(f"{kind} for {attr!r}: {', '.join(bad)}")

    cj = rel.schema.index(cls)
    keep = [j for j in range(len(rel.schema)) if j != cj]
    schema = tuple(rel.schema[j] for j in keep)
    if not schema:
        raise DataError("empty schema after dropping the class attribute")
    covered = {
        leaf: ctree.covers(task.target_concept, leaf) for leaf in ctree.leaves()
    }
    tuples = tuple(
        GeneralizedTuple(tuple((row[j],) for j in keep), 1)
        for row in rel.rows
        if covered[row[cj]]
    )
    return GeneralizedRelation(schema, tuples)


def remove_attribute(rel: GeneralizedRelation, attr: str) -> GeneralizedRelation:
    j = rel.index(attr)
    if len(rel.schema) == 1:
        raise DataError("empty schema")
    schema = rel.schema[:j] + rel.schema[j + 1:]
    tuples = tuple(
        GeneralizedTuple(t.values[:j] + t.values[j + 1:], t.vote) for t in rel.tuples
    )
    return GeneralizedRelation(schema, tuples)


def merge_identical(rel: GeneralizedRelation) -> GeneralizedRelation:
    """Coalesce tuples with equal value sets, summing votes.

    Output keeps the first appearance order of each distinct tuple, and the
    member order of its value sets.
    """
    first: dict[tuple, int] = {}
    values: list[tuple[tuple[str, ...], ...]] = []
    votes: list[int] = []
    for t in rel.tuples:
        k = t.key()
        i = first.get(k)
        if i is None:
            first[k] = len(values)
            values.append(t.values)
            votes.append(t.vote)
        else:
            votes[i] += t.vote
    return GeneralizedRelation(
        rel.schema, tuple(GeneralizedTuple(v, n) for v, n in zip(values, votes))
    )


def is_any(values: Sequence[str]) -> bool:
    return len(values) == 1 and values[0] == ROOT
