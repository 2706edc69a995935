"""Structural rule catalog for CGEL trees.

Each rule is a generator over one tree yielding ``(path, message,
severity)`` and is registered under its rule id.  Violations are data:
``validate`` never raises on a malformed analysis.
"""

from __future__ import annotations

import json
import unicodedata
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from .labels import (FUNCTIONS, HEAD_CATEGORIES, LEGACY_HEAD_FUNCTIONS, NON_PROJECTING,
                     POS_TAGS, PROJECTIONS, is_head_function, is_headless_category)
from .model import CgelTree, Gap, Lexeme, Path, Phrase, walk

ERROR = "error"
WARNING = "warning"
_SEVERITY_RANK = {WARNING: 0, ERROR: 1}


@dataclass(frozen=True)
class Violation:
    rule_id: str
    tree_id: str
    node_path: Path
    message: str
    severity: str = ERROR

    def path_str(self) -> str:
        return ".".join(map(str, self.node_path)) or "root"

    def __str__(self):
        return f"{self.tree_id}@{self.path_str()}: {self.severity} [{self.rule_id}] {self.message}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["node_path"] = list(self.node_path)
        return d


RuleFn = Callable[[CgelTree], Iterator[Tuple[Path, str, str]]]
RULES: Dict[str, RuleFn] = {}


def rule(rule_id: str):
    def register(fn):
        RULES[rule_id] = fn
        return fn
    return register


def _label(node) -> str:
    if isinstance(node, Phrase):
        return node.category
    if isinstance(node, Lexeme):
        return node.pos
    return "GAP"


def _phrases(tree: CgelTree):
    for path, function, node, parent in walk(tree.root):
        if isinstance(node, Phrase):
            yield path, node


@rule("HEAD-1")
def _check_heads(tree):
    for path, node in _phrases(tree):
        if is_headless_category(node.category):
            continue
        if all(f == "Flat" for f in node.functions):
            continue
        heads = [f for f in node.functions if is_head_function(f)]
        if len(heads) != 1:
            yield path, f"{node.category} has {len(heads)} Head daughters (expected 1)", ERROR


def _plain_head(function) -> bool:
    return function == "Head" or function in LEGACY_HEAD_FUNCTIONS


@rule("PROJ-1")
def _check_projection(tree):
    for path, function, node, parent in walk(tree.root):
        if parent is not None and _plain_head(function):
            allowed = HEAD_CATEGORIES.get(parent.category)
            label = _label(node)
            # unknown tags are left to POS-1
            unknown = isinstance(node, Lexeme) and node.pos not in POS_TAGS
            if (allowed is not None and not isinstance(node, Gap) and not unknown
                    and label != "Coordination" and label not in allowed):
                yield path, f"{label} cannot head {parent.category}", ERROR
        if not isinstance(node, Lexeme) or function is None:
            continue
        if node.pos in NON_PROJECTING:
            if is_head_function(function):
                yield path, f"{node.pos} projects no phrase but is a {function}", ERROR
        elif node.pos in PROJECTIONS and not (_plain_head(function) or function == "Flat"):
            yield path, (f"{node.pos} as {function} must project "
                         f"{PROJECTIONS[node.pos]}"), ERROR


@rule("FUNC-1")
def _check_legacy_functions(tree):
    for path, function, node, parent in walk(tree.root):
        if function in LEGACY_HEAD_FUNCTIONS:
            yield path, f"head subtype {function} is not used; label it Head", ERROR


@rule("GAP-1")
def _check_gaps(tree):
    antecedents: Dict[str, int] = defaultdict(int)
    for _, _, node, _ in walk(tree.root):
        if node.coindex is not None and not isinstance(node, Gap):
            antecedents[node.coindex] += 1
    for path, _, node, _ in walk(tree.root):
        if not isinstance(node, Gap):
            continue
        if node.coindex is None:
            yield path, "gap has no coindex", ERROR
        elif antecedents[node.coindex] != 1:
            yield path, (f"gap coindex {node.coindex!r} has "
                         f"{antecedents[node.coindex]} antecedents (expected 1)"), ERROR


@rule("COORD-1")
def _check_coordinate_parent(tree):
    for path, function, node, parent in walk(tree.root):
        if function == "Coordinate" and parent.category != "Coordination":
            yield path, f"Coordinate under {parent.category}, not Coordination", ERROR


@rule("COORD-2")
def _check_marker_sister(tree):
    for path, node in _phrases(tree):
        if "Marker" not in node.functions:
            continue
        if any(is_head_function(f) for f in node.functions):
            continue
        for i, f in enumerate(node.functions):
            if f == "Marker":
                yield path + (i,), f"Marker in {node.category} has no Head sister", ERROR


@rule("COORD-3")
def _check_coordinate_count(tree):
    for path, node in _phrases(tree):
        if node.category != "Coordination":
            continue
        n = node.functions.count("Coordinate")
        if n == 0:
            yield path, "Coordination has no Coordinate daughters", ERROR
        elif n == 1:
            yield path, "Coordination has a single Coordinate daughter", WARNING


def _is_complement(function: str) -> bool:
    return function in FUNCTIONS and (
        function == "Comp" or FUNCTIONS.subsumes("Internal", function))


@rule("ATTACH-1")
def _check_attachment(tree):
    for path, node in _phrases(tree):
        if node.category not in ("VP", "Nom"):
            continue
        head = next((c for f, c in node.children if f == "Head"), None)
        if head is None or isinstance(head, Gap):
            continue
        for i, (f, child) in enumerate(node.children):
            if _is_complement(f) and isinstance(head, Phrase):
                yield path + (i,), (f"{f} is a sister of {head.category}; "
                                    "complements attach to the lexical head"), WARNING
            elif f == "Mod" and isinstance(head, Lexeme):
                yield path + (i,), (f"Mod is a sister of lexical {head.pos}; "
                                    f"modifiers attach to {node.category}"), WARNING


# symbols that are lexical items despite being punctuation characters
LEXICAL_SYMBOLS = frozenset({"&", "@", "-", "/", "%", "#", "--"})


def is_punctuation(form: str) -> bool:
    return bool(form) and all(unicodedata.category(c).startswith("P") for c in form)


@rule("POS-1")
def _check_pos(tree):
    for path, _, node, _ in walk(tree.root):
        if not isinstance(node, Lexeme):
            continue
        if node.pos not in POS_TAGS:
            yield path, f"unknown part of speech {node.pos!r}", ERROR
        if is_punctuation(node.form) and node.form not in LEXICAL_SYMBOLS:
            yield path, f"punctuation token {node.form!r} is not a lexeme", ERROR


RULE_IDS: Tuple[str, ...] = tuple(RULES)

PROFILES: Dict[str, Tuple[str, ...]] = {
    "full": RULE_IDS,
    "core": ("HEAD-1", "PROJ-1", "FUNC-1", "GAP-1", "POS-1"),
    "coordination": ("COORD-1", "COORD-2", "COORD-3"),
    "errors-only": tuple(r for r in RULE_IDS if r != "ATTACH-1"),
}


def resolve_profile(profile: Union[str, Iterable[str], None]) -> Tuple[str, ...]:
    """Accept a profile name, a comma-separated rule list, or an iterable of ids."""
    if profile is None:
        return RULE_IDS
    if isinstance(profile, str):
        if profile in PROFILES:
            return PROFILES[profile]
        profile = [p.strip() for p in profile.split(",") if p.strip()]
    ids = tuple(profile)
    unknown = [r for r in ids if r not in RULES]
    if unknown:
        raise ValueError(f"unknown rule id(s) or profile: {', '.join(unknown)}")
    return ids


def validate(tree: CgelTree, profile="full", tree_id: Optional[str] = None) -> List[Violation]:
    tid = tree_id if tree_id is not None else (tree.id or "?")
    out = []
    for rid in resolve_profile(profile):
        for path, message, severity in RULES[rid](tree):
            out.append(Violation(rid, tid, path, message, severity))
    out.sort(key=lambda v: (v.node_path, RULE_IDS.index(v.rule_id)))
    return out


@dataclass
class ValidationReport:
    violations: List[Violation]

    def __bool__(self):
        return bool(self.violations)

    def __len__(self):
        return len(self.violations)

    @property
    def errors(self) -> List[Violation]:
        return [v for v in self.violations if v.severity == ERROR]

    def by_rule(self) -> Dict[str, List[Violation]]:
        grouped: Dict[str, List[Violation]] = {}
        for rid in RULE_IDS:
            hits = [v for v in self.violations if v.rule_id == rid]
            if hits:
                grouped[rid] = hits
        return grouped

    def tree_ids(self) -> List[str]:
        return sorted({v.tree_id for v in self.violations})

    def to_text(self) -> str:
        return "".join(str(v) + "\n" for v in self.violations)

    def to_tsv(self) -> str:
        lines = ["tree_id\tpath\trule_id\tseverity\tmessage"]
        lines += [f"{v.tree_id}\t{v.path_str()}\t{v.rule_id}\t{v.severity}\t{v.message}"
                  for v in self.violations]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "summary": {rid: len(vs) for rid, vs in self.by_rule().items()},
            "violations": [v.to_dict() for v in self.violations],
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def tree_label(tree: CgelTree, index: int) -> str:
    return tree.id or f"#{index + 1}"


def validate_corpus(docs, profile="full", min_severity: str = WARNING) -> ValidationReport:
    """Validate every tree in ``docs`` (documents or trees, possibly nested).

    ``min_severity="error"`` drops warnings from the report.
    """
    threshold = _SEVERITY_RANK[min_severity]
    found = []
    for i, tree in enumerate(_flatten(docs)):
        for v in validate(tree, profile, tree_label(tree, i)):
            if _SEVERITY_RANK[v.severity] >= threshold:
                found.append(v)
    found.sort(key=lambda v: (v.tree_id, v.node_path, RULE_IDS.index(v.rule_id)))
    return ValidationReport(found)


def _flatten(docs) -> Iterator[CgelTree]:
    if isinstance(docs, CgelTree):
        yield docs
        return
    for item in docs:
        if isinstance(item, CgelTree):
            yield item
        else:
            yield from _flatten(item)
