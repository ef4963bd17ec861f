"""Command-line interface: ``aoirules mine|stats|score|generate``.

Exit codes: 0 success, 1 I/O error, 2 invalid input, 3 pipeline error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Sequence

from . import fixtures
from .datagen import FixtureProfile, dump_table, generate
from .engine import mine
from .errors import PipelineError, ValidationError
from .hierarchy import ConceptTree, parse_tree, tree_stats
from .interest import parse_score_document, rank_attributes
from .relation import GeneralizedRelation, LearningTask, load_table
from .rules import render_rule, rule_to_dict

EXIT_IO = 1
EXIT_INVALID = 2
EXIT_PIPELINE = 3

log = logging.getLogger("aoirules")


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None


def _load_trees(paths: Sequence[str | Path]) -> dict[str, ConceptTree]:
    trees: dict[str, ConceptTree] = {}
    for path in paths:
        text = _read(path)
        try:
            tree = parse_tree(text)
        except ValidationError as exc:
            raise CLIError(f"{path}: {exc}", EXIT_INVALID) from None
        if tree.attribute in trees:
            raise CLIError(
                f"{path}: second hierarchy for attribute {tree.attribute!r}", EXIT_INVALID
            )
        trees[tree.attribute] = tree
    return trees


def _clock(t: datetime) -> str:
    return f"{t:%H:%M:%S}:{t.microsecond // 1000:03d}"


def _elapsed(seconds: float) -> str:
    ms = int(round(seconds * 1000))
    return f"{ms // 60000}:{ms // 1000 % 60:02d}:{ms % 1000:03d}"


def _relation_dict(rel: GeneralizedRelation) -> dict:
    return {
        "schema": list(rel.schema),
        "tuples": [
            {"values": [list(v) for v in t.values], "vote": t.vote} for t in rel.tuples
        ],
        "total_vote": rel.total_vote,
    }


def cmd_mine(args: argparse.Namespace) -> int:
    trees = _load_trees(args.hierarchy)
    attr, sep, concept = args.class_spec.partition("=")
    if not sep or not attr or not concept:
        raise CLIError(f"--class expects attr=concept, got {args.class_spec!r}", EXIT_INVALID)
    if attr not in trees:
        raise CLIError(f"--class names {attr!r}, which has no hierarchy", EXIT_INVALID)
    attr_threshold = args.attr_threshold if args.attr_threshold is not None else args.threshold
    try:
        task = LearningTask(attr, concept, attr_threshold, args.threshold)
    except ValidationError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None

    text = _read(args.data)
    start = datetime.now()
    t0 = time.perf_counter()
    try:
        rel = load_table(text, delimiter=args.delimiter)
        result = mine(rel, task, trees)
    except ValidationError as exc:
        raise CLIError(f"{args.data}: {exc}", EXIT_INVALID) from None
    except PipelineError as exc:
        raise CLIError(str(exc), EXIT_PIPELINE) from None
    elapsed = time.perf_counter() - t0
    finish = datetime.now()

    trace = result.trace
    rule_text = render_rule(result.rule, ascii=args.ascii)
    out = []
    if args.output == "json":
        doc = {
            "task": dataclasses.asdict(task),
            "removed": list(trace.removed),
            "profiles": [dataclasses.asdict(p) for p in trace.profiles],
            "steps": [dataclasses.asdict(s) for s in trace.steps],
            "generalized": _relation_dict(trace.stages["attribute_thresholds"]),
            "relation": _relation_dict(result.relation),
            "scores": result.report.to_dict(),
            "rule": rule_to_dict(result.rule),
            "rule_text": rule_text,
        }
        if not args.no_timing:
            doc["timing"] = {
                "start": _clock(start),
                "finish": _clock(finish),
                "elapsed": _elapsed(elapsed),
            }
        out.append(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        if args.output == "table":
            out += [
                "Characteristic rule with concept hierarchy as table",
                f"{attr}: {concept}",
                f"Generalization Threshold: {args.threshold}",
            ]
            if not args.no_timing:
                out += [
                    f"Start : {_clock(start)}",
                    f"Finish : {_clock(finish)}",
                    f"Time : {_elapsed(elapsed)}",
                ]
            out += [
                "",
                "Generalized relation",
                result.relation.render(),
                "",
                "Interestingness",
                result.report.render_table(),
                f"Roles: {result.report.render_roles()}",
                "",
            ]
        if args.trace:
            removed = ", ".join(trace.removed) or "(none)"
            out.append(f"Removed: {removed}")
            out += [str(s) for s in trace.steps]
            if args.output != "table":
                out += [result.report.render_table(), f"Roles: {result.report.render_roles()}"]
            out.append("")
        if args.output == "table":
            out.append("Rule")
        out.append(rule_text)
    print("\n".join(out))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    trees = _load_trees(args.hierarchies)
    print(tree_stats(trees.values()).render())
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    text = _read(args.path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CLIError(f"{args.path}: invalid JSON: {exc}", EXIT_INVALID) from None
    try:
        report = rank_attributes(parse_score_document(doc))
    except (ValidationError, PipelineError) as exc:
        raise CLIError(f"{args.path}: {exc}", EXIT_INVALID) from None
    if args.output == "json":
        print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
        return 0
    lines = [report.render_table(), ""]
    for rank, s in enumerate(report.scores, start=1):
        lines.append(
            f"{rank}. {s.attribute}: score={s.display} depth={s.depth}"
            f" product={s.product} position={s.position}"
            f" role={report.roles[s.attribute]}"
        )
    lines.append(f"Roles: {report.render_roles()}")
    print("\n".join(lines))
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    profile_path = args.profile or fixtures.data_path(fixtures.PROFILE_FILE)
    hierarchy = args.hierarchy or fixtures.hierarchy_paths()
    trees = _load_trees(hierarchy)
    try:
        profile = FixtureProfile.from_json(_read(profile_path))
        if args.seed is not None:
            profile = dataclasses.replace(profile, seed=args.seed)
        rel = generate(profile, trees)
    except ValidationError as exc:
        raise CLIError(f"{profile_path}: {exc}", EXIT_INVALID) from None
    text = dump_table(rel, delimiter=args.delimiter)
    try:
        Path(args.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CLIError(f"cannot write {args.out}: {exc.strerror or exc}", EXIT_IO) from None
    print(f"wrote {len(rel)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="aoirules",
        description="Attribute-oriented induction of characteristic rules.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine a characteristic rule for a target class")
    p.add_argument("--data", required=True, help="delimited data file with header")
    p.add_argument("--hierarchy", action="append", required=True, metavar="PATH",
                   help="hierarchy file (repeat once per attribute)")
    p.add_argument("--class", dest="class_spec", required=True, metavar="ATTR=CONCEPT",
                   help="class attribute and target concept, e.g. category=Graduate")
    p.add_argument("--threshold", type=int, required=True,
                   help="relation threshold (maximum tuples in the result)")
    p.add_argument("--attr-threshold", type=int,
                   help="maximum distinct values per attribute (default: --threshold)")
    p.add_argument("--output", choices=("table", "rules", "json"), default="table")
    p.add_argument("--trace", action="store_true", help="print the ascension log")
    p.add_argument("--ascii", action="store_true", help="render rules with in/^/V")
    p.add_argument("--delimiter", default=",", help="data field delimiter (default ',')")
    p.add_argument("--no-timing", action="store_true", help="omit Start/Finish/Time lines")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("stats", help="per-level concept counts of hierarchies")
    p.add_argument("hierarchies", nargs="+", metavar="PATH")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("score", help="rank attributes from a CR/CT JSON document")
    p.add_argument("path", help='JSON: {"attr": {"cr": [...], "ct": [...]}, ...}')
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("generate", help="write a deterministic fixture data file")
    p.add_argument("--profile", help="profile JSON (default: shipped graduate-students)")
    p.add_argument("--out", required=True)
    p.add_argument("--hierarchy", action="append", metavar="PATH",
                   help="hierarchy file (default: shipped fixtures)")
    p.add_argument("--seed", type=int, help="override the profile seed")
    p.add_argument("--delimiter", default=",")
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"aoirules: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
