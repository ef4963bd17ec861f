"""Interestingness score over concept-level profiles and role ranking.

Each attribute is scored by the mean, over tree levels, of the fraction of a
level's concepts that the attribute actually visited during generalization::

    score = (CR_1/CT_1 + ... + CR_n/CT_n) / n

The highest-ranked attribute is generalized further, the lowest-ranked one is
kept as the anchor of the rule and every attribute in between is unioned.
Ties are broken by tree depth, then by the product of the non-zero CR counts,
then by column position (leftmost first).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PipelineError, ValidationError


class Role(str, enum.Enum):
    FURTHER_GENERALIZATION = "FurtherGeneralization"
    UNION = "Union"
    ANCHOR = "Anchor"

    def __str__(self) -> str:
        return self.value


def coverage_score(cr: Sequence[int], ct: Sequence[int], n: int | None = None) -> Fraction:
    """Exact mean of ``cr[i] / ct[i]`` over the ``n`` levels of a tree."""
    if n is None:
        n = len(ct)
    if not (len(cr) == len(ct) == n) or n < 1:
        raise ValidationError(
            f"dimension mismatch: |cr|={len(cr)}, |ct|={len(ct)}, n={n}"
        )
    for i, (r, t) in enumerate(zip(cr, ct), start=1):
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (r, t)):
            raise ValidationError(f"CR_{i}/CT_{i} must be integers, got {r!r}/{t!r}")
        if t < 1:
            raise ValidationError(f"CT_{i} must be >= 1, got {t}")
        if not 0 <= r <= t:
            raise ValidationError(f"CR_{i}={r} outside 0..CT_{i}={t}")
    return sum((Fraction(r, t) for r, t in zip(cr, ct)), Fraction(0)) / n


def nonzero_product(cr: Sequence[int]) -> int:
    """Product of the non-zero entries; 1 for an all-zero vector."""
    return math.prod(r for r in cr if r)


def _half_up(x: Fraction | Decimal, places: int) -> Decimal:
    if isinstance(x, Fraction):
        # default 28-digit context, far beyond the places rounded to here
        x = Decimal(x.numerator) / Decimal(x.denominator)
    return x.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def display_score(x: Fraction) -> str:
    """Three-decimal display value.

    Rounds half-up to four places and then to three, so 6/11 = 0.54545...
    shows as 0.546 (a single rounding would give 0.545).
    """
    return str(_half_up(_half_up(x, 4), 3))


def compact(x: Fraction) -> str:
    """Short form for tables: ``1``, ``0.5``, ``0.636``."""
    if x.denominator == 1:
        return str(x.numerator)
    d = _half_up(_half_up(x, 4), 3).normalize()
    return format(d, "f")


@dataclass(frozen=True)
class AttributeScore:
    attribute: str
    score: Fraction
    depth: int
    product: int
    position: int
    cr: tuple[int, ...] = ()
    ct: tuple[int, ...] = ()

    @property
    def degenerate(self) -> bool:
        return not any(self.cr)

    @property
    def display(self) -> str:
        return display_score(self.score)

    def sort_key(self) -> tuple:
        return (self.score, self.depth, self.product, -self.position)


def score_attribute(
    attribute: str, cr: Sequence[int], ct: Sequence[int], position: int
) -> AttributeScore:
    return AttributeScore(
        attribute=attribute,
        score=coverage_score(cr, ct),
        depth=len(ct),
        product=nonzero_product(cr),
        position=position,
        cr=tuple(cr),
        ct=tuple(ct),
    )


@dataclass(frozen=True)
class ScoreReport:
    scores: tuple[AttributeScore, ...]
    roles: Mapping[str, Role]

    def attributes_with(self, role: Role) -> list[str]:
        return [s.attribute for s in self.scores if self.roles[s.attribute] is role]

    @property
    def further_generalization(self) -> str:
        return self.scores[0].attribute

    @property
    def anchor(self) -> str:
        return self.scores[-1].attribute

    @property
    def union(self) -> list[str]:
        return self.attributes_with(Role.UNION)

    def to_dict(self) -> dict:
        return {
            "ranking": [
                {
                    "rank": i,
                    "attribute": s.attribute,
                    "role": self.roles[s.attribute].value,
                    "score": f"{s.score.numerator}/{s.score.denominator}",
                    "display": s.display,
                    "depth": s.depth,
                    "product": s.product,
                    "position": s.position,
                    "cr": list(s.cr),
                    "ct": list(s.ct),
                }
                for i, s in enumerate(self.scores, start=1)
            ],
            "roles": {s.attribute: self.roles[s.attribute].value for s in self.scores},
        }

    def render_table(self) -> str:
        """Level-by-level CR/CT table, attributes in column order."""
        cols = sorted(self.scores, key=lambda s: s.position)
        header = ["Depth/Level"]
        cr_row = ["CR=Amount concepts"]
        ct_row = ["CT=Amount concepts"]
        ratio_row = ["CR/CT"]
        sum_row = ["Σ(CR/CT)/n"]
        name_row = [""]
        for s in cols:
            n = len(s.ct)
            name_row += [s.attribute] + [""] * (n - 1)
            header += [str(i) for i in range(1, n + 1)]
            cr_row += [str(r) if r else "" for r in s.cr]
            ct_row += [str(t) for t in s.ct]
            ratio_row += [compact(Fraction(r, t)) for r, t in zip(s.cr, s.ct)]
            total = sum((Fraction(r, t) for r, t in zip(s.cr, s.ct)), Fraction(0))
            sum_row += [f"{compact(total)}/{n}={compact(s.score)}"] + [""] * (n - 1)
        rows = [header, cr_row, ct_row, ratio_row]
        sizes = [max(len(r[j]) for r in rows) for j in range(len(header))]
        # name and sum cells span all level columns of their attribute
        spans = [(0, 1)]
        for s in cols:
            spans.append((spans[-1][1], spans[-1][1] + len(s.ct)))
        for lo, hi in spans:
            span_width = sum(sizes[lo:hi]) + 2 * (hi - lo - 1)
            need = max(len(name_row[lo]), len(sum_row[lo]))
            if need > span_width:
                sizes[hi - 1] += need - span_width

        def line(cells: list[str]) -> str:
            return "  ".join(c.ljust(w) for c, w in zip(cells, sizes)).rstrip()

        def spanned(cells: list[str]) -> str:
            parts = []
            for lo, hi in spans:
                width = sum(sizes[lo:hi]) + 2 * (hi - lo - 1)
                parts.append(cells[lo].ljust(width))
            return "  ".join(parts).rstrip()

        return "\n".join(
            [spanned(name_row), *(line(r) for r in rows), spanned(sum_row)]
        )

    def render_roles(self) -> str:
        parts = [f"{Role.FURTHER_GENERALIZATION}={self.further_generalization}"]
        parts += [f"{Role.UNION}={a}" for a in self.union]
        parts.append(f"{Role.ANCHOR}={self.anchor}")
        return ", ".join(parts)


def rank_attributes(scores: Sequence[AttributeScore]) -> ScoreReport:
    """Rank descending by (score, depth, product, leftmost) and assign roles."""
    if len(scores) < 2:
        raise PipelineError(
            f"ranking needs at least 2 attributes, got {len(scores)}"
        )
    ranked = sorted(scores, key=AttributeScore.sort_key, reverse=True)
    roles = {s.attribute: Role.UNION for s in ranked}
    roles[ranked[0].attribute] = Role.FURTHER_GENERALIZATION
    roles[ranked[-1].attribute] = Role.ANCHOR
    return ScoreReport(tuple(ranked), roles)


def parse_score_document(doc: object) -> list[AttributeScore]:
    """Validate ``{attribute: {"cr": [...], "ct": [...]}}``; key order is column order."""
    if not isinstance(doc, dict) or not doc:
        raise ValidationError("score document must be a non-empty JSON object")
    scores = []
    for position, (attr, entry) in enumerate(doc.items()):
        if not isinstance(entry, dict) or set(entry) != {"cr", "ct"}:
            raise ValidationError(f"{attr!r}: expected keys 'cr' and 'ct'")
        cr, ct = entry["cr"], entry["ct"]
        for label, vec in (("cr", cr), ("ct", ct)):
            if not isinstance(vec, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in vec
            ):
                raise ValidationError(f"{attr!r}: {label} must be a list of integers")
        scores.append(score_attribute(attr, cr, ct, position))
    return scores
