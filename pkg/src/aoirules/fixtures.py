"""Paths to the hierarchies and profile shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .datagen import FixtureProfile, generate
from .hierarchy import ConceptTree, parse_tree
from .relation import Relation

HIERARCHY_FILES = ("category.txt", "major.txt", "birthplace.txt", "gpa.txt")
PROFILE_FILE = "graduate-students.json"


def data_path(name: str) -> Path:
    return Path(str(resources.files("aoirules") / "data" / name))


def hierarchy_paths() -> list[Path]:
    return [data_path(n) for n in HIERARCHY_FILES]


def load_trees() -> dict[str, ConceptTree]:
    trees = {}
    for path in hierarchy_paths():
        tree = parse_tree(path.read_text(encoding="utf-8"))
        trees[tree.attribute] = tree
    return trees


def shipped_profile() -> FixtureProfile:
    return FixtureProfile.from_json(data_path(PROFILE_FILE).read_text(encoding="utf-8"))


def student_relation() -> Relation:
    """The 50000-row student relation generated from the shipped profile."""
    return generate(shipped_profile(), load_trees())
