"""Deterministic fixture relations built from cell profiles.

A profile lists cells; each cell fixes, per attribute, the leaf values its rows
cycle through and how many rows it contributes::

    {
      "name": "tiny",
      "seed": 7,
      "schema": ["Name", "category", "GPA"],
      "id_column": "Name",
      "cells": [{"values": {"category": ["MS"], "GPA": ["3.6", "3.8"]}, "count": 4}],
      "diversity": [{"class": "category=Graduate", "distinct": {"GPA": 2}}]
    }

The first row of every cell is emitted in cell order, so the first-appearance
order of generalized tuples follows the profile; the remaining rows are
shuffled with ``seed``.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from typing import Mapping

from .errors import ProfileError
from .hierarchy import ConceptTree
from .relation import Relation


@dataclass(frozen=True)
class Cell:
    values: Mapping[str, tuple[str, ...]]
    count: int


@dataclass(frozen=True)
class DiversityConstraint:
    class_attribute: str | None
    target: str | None
    distinct: Mapping[str, int]


@dataclass(frozen=True)
class FixtureProfile:
    name: str
    schema: tuple[str, ...]
    cells: tuple[Cell, ...]
    seed: int = 0
    id_column: str | None = None
    diversity: tuple[DiversityConstraint, ...] = field(default=())

    @classmethod
    def from_dict(cls, doc: dict) -> FixtureProfile:
        try:
            schema = tuple(doc["schema"])
            cells = tuple(
                Cell({a: tuple(v) for a, v in c["values"].items()}, c["count"])
                for c in doc["cells"]
            )
            diversity = []
            for d in doc.get("diversity", ()):
                cls_attr = target = None
                if "class" in d:
                    cls_attr, _, target = d["class"].partition("=")
                diversity.append(DiversityConstraint(cls_attr, target, dict(d["distinct"])))
            return cls(
                name=doc.get("name", ""),
                schema=schema,
                cells=cells,
                seed=int(doc.get("seed", 0)),
                id_column=doc.get("id_column"),
                diversity=tuple(diversity),
            )
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise ProfileError(f"malformed profile: {exc!r}") from None

    @classmethod
    def from_json(cls, text: str) -> FixtureProfile:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProfileError(f"profile is not valid JSON: {exc}") from None
        return cls.from_dict(doc)

    @property
    def value_columns(self) -> tuple[str, ...]:
        return tuple(a for a in self.schema if a != self.id_column)


def validate(profile: FixtureProfile, trees: Mapping[str, ConceptTree]) -> None:
    if not profile.cells:
        raise ProfileError("profile has no cells")
    if profile.id_column is not None and profile.id_column not in profile.schema:
        raise ProfileError(f"id column {profile.id_column!r} not in schema")
    columns = set(profile.value_columns)
    for i, cell in enumerate(profile.cells):
        if not isinstance(cell.count, int) or isinstance(cell.count, bool) or cell.count < 1:
            raise ProfileError(f"cell {i}: count must be a positive integer, got {cell.count!r}")
        if set(cell.values) != columns:
            raise ProfileError(
                f"cell {i}: values for {sorted(cell.values)}, expected {sorted(columns)}"
            )
        for attr, leaves in cell.values.items():
            if not leaves:
                raise ProfileError(f"cell {i}: no values for {attr!r}")
            if len(leaves) > cell.count:
                raise ProfileError(
                    f"cell {i}: {len(leaves)} {attr} values cannot all appear in {cell.count} rows"
                )
            tree = trees.get(attr)
            if tree is not None:
                bad = [v for v in leaves if not tree.is_leaf(v)]
                if bad:
                    raise ProfileError(f"cell {i}: not leaves of {attr!r}: {', '.join(bad)}")

    for d in profile.diversity:
        chosen = list(profile.cells)
        if d.class_attribute is not None:
            tree = trees.get(d.class_attribute)
            if tree is None or d.target not in tree:
                raise ProfileError(f"diversity class {d.class_attribute}={d.target} unknown")
            chosen = [
                c for c in chosen
                if all(tree.covers(d.target, v) for v in c.values[d.class_attribute])
            ]
        for attr, want in d.distinct.items():
            if attr not in columns:
                raise ProfileError(f"diversity names unknown attribute {attr!r}")
            have = {v for c in chosen for v in c.values[attr]}
            if len(have) != want:
                raise ProfileError(
                    f"unsatisfiable diversity: {want} distinct {attr} values demanded,"
                    f" cells provide {len(have)}"
                )


def generate(profile: FixtureProfile, trees: Mapping[str, ConceptTree]) -> Relation:
    validate(profile, trees)
    cols = profile.value_columns
    lead, rest = [], []
    for cell in profile.cells:
        for j in range(cell.count):
            row = {a: cell.values[a][j % len(cell.values[a])] for a in cols}
            (rest if j else lead).append(row)
    random.Random(profile.seed).shuffle(rest)
    rows = []
    for i, row in enumerate(lead + rest, start=1):
        if profile.id_column is not None:
            row[profile.id_column] = f"S{i:06d}"
        rows.append(tuple(row[a] for a in profile.schema))
    return Relation(profile.schema, tuple(rows), source=f"profile:{profile.name}")


def dump_table(rel: Relation, delimiter: str = ",") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(rel.schema)
    writer.writerows(rel.rows)
    return buf.getvalue()
