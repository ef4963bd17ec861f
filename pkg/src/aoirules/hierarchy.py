"""Concept trees: parsing, validation and level queries.

A hierarchy file describes one balanced tree per attribute::

    attribute: category
    ANY: Undergraduate, Graduate
    Undergraduate: Freshman, Sophomore, Junior, Senior
    Graduate: MA, MS, PhD

Leaves sit at level 1 and the ``ANY`` root at level ``n`` (the tree depth).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import HierarchyError

ROOT = "ANY"


@dataclass(frozen=True)
class ConceptNode:
    name: str
    level: int
    parent: str | None


@dataclass(frozen=True)
class ConceptTree:
    attribute: str
    nodes: Mapping[str, ConceptNode]
    children: Mapping[str, tuple[str, ...]]
    depth: int
    widths: tuple[int, ...]
    _chains: Mapping[str, tuple[str, ...]] = field(repr=False, compare=False)

    def __contains__(self, concept: str) -> bool:
        return concept in self.nodes

    def node(self, concept: str) -> ConceptNode:
        try:
            return self.nodes[concept]
        except KeyError:
            raise HierarchyError(
                f"unknown concept {concept!r} in hierarchy {self.attribute!r}"
            ) from None

    def level_of(self, concept: str) -> int:
        return self.node(concept).level

    def level_width(self, level: int) -> int:
        if not 1 <= level <= self.depth:
            raise HierarchyError(
                f"level {level} out of range 1..{self.depth} for {self.attribute!r}"
            )
        return self.widths[level - 1]

    def concepts_at(self, level: int) -> tuple[str, ...]:
        """Concepts on ``level`` in file (breadth-first) order."""
        self.level_width(level)
        return tuple(n for n, node in self.nodes.items() if node.level == level)

    def leaves(self) -> tuple[str, ...]:
        return self.concepts_at(1)

    def is_leaf(self, concept: str) -> bool:
        node = self.nodes.get(concept)
        return node is not None and node.level == 1

    def ancestor_at_level(self, concept: str, level: int) -> str:
        own = self.level_of(concept)
        if level < own:
            raise HierarchyError(
                f"level {level} is below the level {own} of {concept!r}"
            )
        if level > self.depth:
            raise HierarchyError(
                f"level {level} out of range 1..{self.depth} for {self.attribute!r}"
            )
        return self._chains[concept][level - own]

    def covers(self, general: str, specific: str) -> bool:
        """True iff ``general`` is ``specific`` or one of its ancestors."""
        g_level = self.level_of(general)
        s_level = self.level_of(specific)
        if g_level < s_level:
            return False
        return self._chains[specific][g_level - s_level] == general

    def leaves_under(self, concept: str) -> frozenset[str]:
        level = self.level_of(concept)
        return frozenset(
            leaf for leaf in self.leaves() if self._chains[leaf][level - 1] == concept
        )


def depth(tree: ConceptTree) -> int:
    return tree.depth


def level_width(tree: ConceptTree, level: int) -> int:
    return tree.level_width(level)


def _split_line(line: str, lineno: int) -> tuple[str, list[str]]:
    head, sep, tail = line.partition(":")
    if not sep:
        raise HierarchyError(f"line {lineno}: expected 'parent: child, ...'")
    parent = head.strip()
    kids = [c.strip() for c in tail.split(",")]
    if not parent or any(not c for c in kids):
        raise HierarchyError(f"line {lineno}: empty concept name")
    return parent, kids


def parse_tree(text: str, attribute: str | None = None) -> ConceptTree:
    """Parse and validate a hierarchy file.

    The attribute name comes from the ``attribute:`` header; when ``attribute``
    is also given the two must agree. Raises :class:`HierarchyError` for
    duplicate concepts, multiple parents, a missing or extra root, cycles and
    unbalanced leaf depths.
    """
    header: str | None = None
    parent_of: dict[str, str] = {}
    kids_of: dict[str, list[str]] = {}
    seen: list[str] = []  # first-mention order

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None and not kids_of and line.split(":", 1)[0].strip() == "attribute":
            header = line.split(":", 1)[1].strip()
            if not header:
                raise HierarchyError(f"line {lineno}: empty attribute name")
            continue
        parent, kids = _split_line(line, lineno)
        if parent in kids_of:
            raise HierarchyError(f"line {lineno}: duplicate concept {parent!r}")
        kids_of[parent] = []
        if parent not in seen:
            seen.append(parent)
        for kid in kids:
            if kid in parent_of:
                if parent_of[kid] == parent:
                    raise HierarchyError(f"line {lineno}: duplicate concept {kid!r}")
                raise HierarchyError(
                    f"line {lineno}: multiple parents for {kid!r}"
                    f" ({parent_of[kid]!r}, {parent!r})"
                )
            if kid == parent:
                raise HierarchyError(f"line {lineno}: cycle at {kid!r}")
            parent_of[kid] = parent
            kids_of[parent].append(kid)
            if kid not in seen:
                seen.append(kid)

    if header is None and attribute is None:
        raise HierarchyError("missing 'attribute: <name>' header")
    if header is not None and attribute is not None and header != attribute:
        raise HierarchyError(
            f"header names attribute {header!r}, expected {attribute!r}"
        )
    name = header if header is not None else attribute
    if not seen:
        raise HierarchyError(f"hierarchy {name!r} has no concepts")

    roots = [c for c in seen if c not in parent_of]
    if len(roots) > 1:
        raise HierarchyError(f"multiple roots: {', '.join(roots)}")
    if not roots:
        raise HierarchyError("cycle: no root concept")
    if roots[0] != ROOT:
        raise HierarchyError(f"missing ANY root (root is {roots[0]!r})")

    # breadth-first from the root fixes distance and output order
    dist = {ROOT: 0}
    order = [ROOT]
    queue = deque([ROOT])
    while queue:
        cur = queue.popleft()
        for kid in kids_of.get(cur, ()):
            dist[kid] = dist[cur] + 1
            order.append(kid)
            queue.append(kid)
    unreachable = [c for c in seen if c not in dist]
    if unreachable:
        raise HierarchyError(f"cycle involving {', '.join(unreachable)}")

    leaf_depths = {dist[c] for c in order if not kids_of.get(c)}
    if len(leaf_depths) != 1:
        raise HierarchyError(
            f"unbalanced hierarchy {name!r}: leaves at depths {sorted(leaf_depths)}"
        )
    n = leaf_depths.pop() + 1
    if n < 2:
        raise HierarchyError(f"hierarchy {name!r} needs at least one concept below ANY")

    nodes = {
        c: ConceptNode(c, n - dist[c], parent_of.get(c)) for c in order
    }
    widths = [0] * n
    for node in nodes.values():
        widths[node.level - 1] += 1

    chains: dict[str, tuple[str, ...]] = {}
    for c in order:
        chain = [c]
        while (p := parent_of.get(chain[-1])) is not None:
            chain.append(p)
        chains[c] = tuple(chain)

    return ConceptTree(
        attribute=name,
        nodes=nodes,
        children={c: tuple(kids_of.get(c, ())) for c in order},
        depth=n,
        widths=tuple(widths),
        _chains=chains,
    )


@dataclass(frozen=True)
class TreeStats:
    """Per-level concept counts for a set of trees plus row/column totals."""

    attributes: tuple[str, ...]
    widths: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return max(len(w) for w in self.widths)

    def cell(self, attribute: str, level: int) -> int | None:
        w = self.widths[self.attributes.index(attribute)]
        return w[level - 1] if level <= len(w) else None

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(sum(w) for w in self.widths)

    @property
    def grand_total(self) -> int:
        return sum(self.totals)

    def level_totals(self) -> tuple[int, ...]:
        return tuple(
            sum(w[i] for w in self.widths if i < len(w)) for i in range(self.depth)
        )

    def render(self) -> str:
        header = ["Depth/level", *self.attributes, "Total Concepts"]
        rows = [header]
        for i, total in enumerate(self.level_totals()):
            cells = [str(w[i]) if i < len(w) else "" for w in self.widths]
            rows.append([str(i + 1), *cells, str(total)])
        rows.append(["Total Concepts", *map(str, self.totals), str(self.grand_total)])
        sizes = [max(len(r[j]) for r in rows) for j in range(len(header))]
        return "\n".join(
            "  ".join(cell.ljust(size) for cell, size in zip(r, sizes)).rstrip()
            for r in rows
        )


def tree_stats(trees: Iterable[ConceptTree]) -> TreeStats:
    trees = list(trees)
    if not trees:
        raise HierarchyError("tree_stats needs at least one tree")
    return TreeStats(
        attributes=tuple(t.attribute for t in trees),
        widths=tuple(t.widths for t in trees),
    )
