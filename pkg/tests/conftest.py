import pytest

from aoirules import fixtures
from aoirules.relation import GeneralizedRelation, GeneralizedTuple, LearningTask

GENERALIZED_ROWS = [
    ("Art", "Canada", "Excellent", 7200),
    ("Science", "Canada", "Excellent", 10799),
    ("Science", "Foreign", "Good", 10800),
    ("Science", "Canada", "Good", 3600),
]
SCHEMA = ("major", "birthplace", "GPA")


def relation_from_rows(rows, schema=SCHEMA):
    """Rows are ``(value-or-tuple, ..., vote)``; bare strings become singletons."""
    tuples = []
    for *values, vote in rows:
        sets = tuple((v,) if isinstance(v, str) else tuple(v) for v in values)
        tuples.append(GeneralizedTuple(sets, vote))
    return GeneralizedRelation(tuple(schema), tuple(tuples))


@pytest.fixture(scope="session")
def trees():
    return fixtures.load_trees()


@pytest.fixture(scope="session")
def students():
    return fixtures.student_relation()


@pytest.fixture(scope="session")
def students_csv(tmp_path_factory, students):
    from aoirules.datagen import dump_table

    path = tmp_path_factory.mktemp("data") / "students.csv"
    path.write_text(dump_table(students), encoding="utf-8")
    return path


@pytest.fixture
def graduate_task():
    return LearningTask("category", "Graduate", 2, 2)


@pytest.fixture
def generalized():
    return relation_from_rows(GENERALIZED_ROWS)


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _criteria[number] = (title, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")
