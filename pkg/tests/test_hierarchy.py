import pytest

from aoirules import fixtures
from aoirules.errors import HierarchyError
from aoirules.hierarchy import depth, level_width, parse_tree, tree_stats

from oracles import walk_up

MINIMAL = "attribute: flag\nANY: yes\n"


def fixture_text(name):
    return fixtures.data_path(name).read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "name, attribute, widths",
    [
        ("category.txt", "category", (7, 2, 1)),
        ("major.txt", "major", (11, 2, 1)),
        ("birthplace.txt", "birthplace", (11, 5, 2, 1)),
        ("gpa.txt", "GPA", (40, 4, 1)),
    ],
)
def test_fixture_widths_match_tree_metrics(name, attribute, widths):
    tree = parse_tree(fixture_text(name))
    assert tree.attribute == attribute
    assert tree.widths == widths
    assert depth(tree) == len(widths)


def test_depths(trees):
    assert depth(trees["birthplace"]) == 4
    assert depth(trees["major"]) == 3
    assert depth(parse_tree(MINIMAL)) == 2


def test_level_width(trees):
    assert level_width(trees["category"], 1) == 7
    assert trees["category"].concepts_at(1) == (
        "Freshman", "Sophomore", "Junior", "Senior", "MA", "MS", "PhD"
    )
    assert level_width(trees["birthplace"], 2) == 5
    for tree in trees.values():
        assert level_width(tree, tree.depth) == 1
    with pytest.raises(HierarchyError):
        level_width(trees["major"], 4)
    with pytest.raises(HierarchyError):
        level_width(trees["major"], 0)


def test_ancestor_at_level(trees):
    cat = trees["category"]
    assert cat.ancestor_at_level("MS", 2) == "Graduate"
    assert cat.ancestor_at_level("MS", 1) == "MS"
    assert cat.ancestor_at_level("MS", 3) == "ANY"
    # oracle: two parent hops in the raw birthplace file
    expected = walk_up(fixture_text("birthplace.txt"), "Vancouver", 2)
    assert expected == "Canada"
    assert trees["birthplace"].ancestor_at_level("Vancouver", 3) == expected
    with pytest.raises(HierarchyError):
        cat.ancestor_at_level("Graduate", 1)
    with pytest.raises(HierarchyError):
        cat.ancestor_at_level("Postdoc", 2)


def test_covers(trees):
    cat = trees["category"]
    assert cat.covers("Graduate", "PhD")
    assert not cat.covers("Graduate", "Junior")
    assert cat.covers("MS", "MS")
    assert not cat.covers("MS", "Graduate")
    with pytest.raises(HierarchyError):
        cat.covers("Graduate", "Postdoc")


def test_tree_invariants(trees):
    for tree in trees.values():
        assert all(w >= 1 for w in tree.widths)
        assert sum(tree.widths) == len(tree.nodes)
        roots = [n for n in tree.nodes.values() if n.parent is None]
        assert [r.name for r in roots] == ["ANY"]
        assert roots[0].level == tree.depth
        for node in tree.nodes.values():
            if node.parent is not None:
                assert tree.nodes[node.parent].level == node.level + 1
            assert tree.ancestor_at_level(node.name, node.level) == node.name
            assert tree.covers("ANY", node.name)
            for g in tree.nodes.values():
                consistent = (
                    g.level >= node.level
                    and tree.ancestor_at_level(node.name, g.level) == g.name
                )
                assert tree.covers(g.name, node.name) == consistent
        leaves = {n.name for n in tree.nodes.values() if not tree.children[n.name]}
        assert leaves == set(tree.leaves())


def test_tree_stats_fixture_totals(trees):
    stats = tree_stats(trees[a] for a in ("category", "major", "birthplace", "GPA"))
    assert stats.totals == (10, 14, 19, 45)
    assert stats.grand_total == 88
    assert stats.level_totals() == (69, 13, 5, 1)
    assert stats.cell("birthplace", 4) == 1
    assert stats.cell("major", 4) is None
    assert tree_stats([parse_tree(MINIMAL)]).totals == (2,)
    two = tree_stats([trees["category"], trees["major"]])
    assert two.totals == (10, 14)


def test_tree_stats_empty():
    with pytest.raises(HierarchyError):
        tree_stats([])


def test_comments_whitespace_and_case():
    text = """
    # header comment
    attribute:  colour   # trailing comment

    ANY :  Warm ,Cool
    Warm: red, Orange
    Cool: blue, Blue
    """
    tree = parse_tree(text)
    assert tree.attribute == "colour"
    assert tree.widths == (4, 2, 1)
    assert tree.ancestor_at_level("Blue", 2) == "Cool"
    assert "Red" not in tree


def test_attribute_argument():
    assert parse_tree("ANY: a, b", attribute="x").attribute == "x"
    with pytest.raises(HierarchyError, match="header"):
        parse_tree(MINIMAL, attribute="other")
    with pytest.raises(HierarchyError, match="attribute"):
        parse_tree("ANY: a")


@pytest.mark.parametrize(
    "body, message",
    [
        ("ANY: a\nROOT2: b", "multiple roots"),
        ("ANY: a, b\nb: c\nb: d", "duplicate"),
        ("ANY: a, a", "duplicate"),
        ("ANY: a, b\na: x\nb: x", "multiple parents"),
        ("TOP: a, b", "missing ANY"),
        ("ANY: a, b\na: c\nc: a", "multiple parents"),
        ("ANY: a\nx: y\ny: x", "cycle"),
        ("ANY: a, b\na: c", "unbalanced"),
        ("ANY: a, b\na: c\nb: d\nc: e", "unbalanced"),
        ("ANY: a, , b", "empty"),
        ("ANY a b", "expected"),
        ("# nothing", "no concepts"),
    ],
)
def test_invalid_trees(body, message):
    with pytest.raises(HierarchyError, match=message):
        parse_tree("attribute: t\n" + body)
