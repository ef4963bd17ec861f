import random

import pytest

from aoirules.errors import DataError, HierarchyError
from aoirules.relation import (
    GeneralizedRelation,
    GeneralizedTuple,
    LearningTask,
    Relation,
    load_table,
    merge_identical,
    remove_attribute,
    select_task_relevant,
)

from conftest import GENERALIZED_ROWS, SCHEMA, relation_from_rows
from oracles import group_by_brute_force

HEADER = "Name,category,major,birthplace,GPA\n"


def test_load_table_fixture(students):
    assert len(students) == 50000
    assert students.schema == ("Name", "category", "major", "birthplace", "GPA")


def test_load_table_roundtrip(students_csv, students):
    rel = load_table(students_csv.read_text(encoding="utf-8"))
    assert rel.rows == students.rows


def test_load_table_errors():
    with pytest.raises(DataError, match="empty relation"):
        load_table(HEADER)
    with pytest.raises(DataError, match="missing header"):
        load_table("")
    with pytest.raises(DataError, match="line 3"):
        load_table(HEADER + "S1,MS,Physics,Vancouver,3.6\nS2,MS,Physics,3.6\n")
    with pytest.raises(DataError, match="line 2: empty field"):
        load_table(HEADER + "S1,MS,,Vancouver,3.6\n")
    with pytest.raises(DataError, match="does not match"):
        load_table(HEADER + "S1,MS,Physics,Vancouver,3.6\n", schema=["a", "b"])


def test_load_table_delimiter_and_schema():
    text = "major;GPA\nPhysics;3.6\nMusic;2.0\n"
    rel = load_table(text, schema=["major", "GPA"], delimiter=";")
    assert rel.rows == (("Physics", "3.6"), ("Music", "2.0"))
    assert rel.column("GPA") == ["3.6", "2.0"]


def test_select_graduates(students, trees, graduate_task):
    rel = select_task_relevant(students, graduate_task, trees)
    assert rel.schema == ("Name", "major", "birthplace", "GPA")
    assert len(rel) == 32399
    assert rel.total_vote == 32399
    assert all(t.vote == 1 and all(len(v) == 1 for v in t.values) for t in rel.tuples)


def test_select_any_and_leaf(students, trees):
    rel = select_task_relevant(students, LearningTask("category", "ANY", 2, 2), trees)
    assert len(rel) == 50000
    ms = select_task_relevant(students, LearningTask("category", "MS", 2, 2), trees)
    expected = sum(1 for row in students.rows if row[1] == "MS")
    assert 0 < len(ms) == expected


def test_select_rejects_unknown_values(trees):
    rel = load_table(HEADER + "S1,Postdoc,Physics,Vancouver,3.6\nS2,Alumni,Physics,Vancouver,3.6\n")
    with pytest.raises(DataError, match="Alumni, Postdoc"):
        select_task_relevant(rel, LearningTask("category", "Graduate", 2, 2), trees)
    rel = load_table(HEADER + "S1,MS,Science,Vancouver,3.6\n")
    with pytest.raises(DataError, match="Science"):
        select_task_relevant(rel, LearningTask("category", "Graduate", 2, 2), trees)
    rel = load_table(HEADER + "S1,MS,Physics,Vancouver,3.6\n")
    with pytest.raises(HierarchyError):
        select_task_relevant(rel, LearningTask("category", "Faculty", 2, 2), trees)
    with pytest.raises(DataError):
        select_task_relevant(rel, LearningTask("dept", "Graduate", 2, 2), trees)


def test_learning_task_thresholds():
    with pytest.raises(DataError):
        LearningTask("category", "Graduate", 0, 2)


def test_remove_attribute(students, trees, graduate_task):
    rel = select_task_relevant(students, graduate_task, trees)
    dropped = remove_attribute(rel, "Name")
    assert dropped.schema == SCHEMA
    assert len(dropped) == len(rel)
    assert len(merge_identical(dropped)) <= len(rel)
    with pytest.raises(DataError):
        remove_attribute(rel, "Nope")
    single = relation_from_rows([("Art", 3)], schema=("major",))
    with pytest.raises(DataError, match="empty schema"):
        remove_attribute(single, "major")


def test_merge_identical_examples(generalized):
    assert merge_identical(generalized) == generalized
    rel = relation_from_rows([("Science", "Canada", "Good", 3), ("Science", "Canada", "Good", 4)])
    assert merge_identical(rel).as_rows() == [("Science", "Canada", "Good", 7)]


def test_merge_treats_value_sets_as_sets():
    rel = relation_from_rows(
        [(("Art", "Science"), "ANY", "Good", 2), (("Science", "Art"), "ANY", "Good", 5)]
    )
    merged = merge_identical(rel)
    assert merged.as_rows() == [(("Art", "Science"), "ANY", "Good", 7)]


def random_relation(rng, trees, n):
    pools = [trees[a].leaves()[:4] for a in SCHEMA]
    rows = [(*(rng.choice(p) for p in pools), rng.randint(1, 9)) for _ in range(n)]
    return relation_from_rows(rows)


def test_merge_matches_brute_force_200(trees):
    rng = random.Random(200)
    rel = random_relation(rng, trees, 200)
    merged = merge_identical(rel)
    assert [(t.values, t.vote) for t in merged.tuples] == group_by_brute_force(rel)
    assert merged.total_vote == rel.total_vote
    assert merge_identical(merged) == merged
    keys = [t.key() for t in merged.tuples]
    assert len(keys) == len(set(keys))


def test_generalized_tuple_invariants():
    with pytest.raises(DataError):
        GeneralizedTuple((("a",),), 0)
    with pytest.raises(DataError):
        GeneralizedTuple(((),), 1)
    with pytest.raises(DataError):
        Relation(("a", "b"), (("x",),))


def test_render(generalized):
    lines = generalized.render().splitlines()
    assert lines[0] == "major\tbirthplace\tGPA\tVote"
    assert lines[1] == "Art\tCanada\tExcellent\t7200"
    assert generalized.total_vote == sum(r[-1] for r in GENERALIZED_ROWS) == 32399
    assert isinstance(generalized, GeneralizedRelation)
