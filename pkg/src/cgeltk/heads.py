"""Dependency conversion of CGEL trees and head agreement with UD.

Every phrase's lexical head comes from its Head (or fused-head) daughter;
headless phrases (coordination, Flat, nonce) take their first daughter.
Non-head daughters depend on the phrase's lexical head.  Gaps produce no
dependency node.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .align import TokenAlignment
from .interop.conllu import ConlluSentence, sentence_from_heads
from .labels import is_head_function
from .model import CgelTree, Gap, Lexeme, Phrase, walk


class HeadError(ValueError):
    pass


@dataclass
class DepGraph:
    forms: List[str]
    heads: List[int]      # 1-based head per token, 0 = root
    deprels: List[str]
    pos: List[str]
    lemmas: List[Optional[str]] = field(default_factory=list)
    sent_id: Optional[str] = None

    def __len__(self):
        return len(self.forms)

    @property
    def root(self) -> int:
        return self.heads.index(0) + 1

    def check(self) -> None:
        n = len(self.heads)
        roots = [i for i, h in enumerate(self.heads, 1) if h == 0]
        if len(roots) != 1:
            raise HeadError(f"{len(roots)} roots")
        for i, h in enumerate(self.heads, 1):
            if not 0 <= h <= n or h == i:
                raise HeadError(f"bad head {h} for token {i}")
        for i in range(1, n + 1):
            seen = set()
            while i:
                if i in seen:
                    raise HeadError("cycle in head relation")
                seen.add(i)
                i = self.heads[i - 1]

    def to_conllu(self) -> ConlluSentence:
        lemmas = [l or "_" for l in self.lemmas] if self.lemmas else None
        return sentence_from_heads(self.forms, self.heads, self.pos, self.deprels,
                                   self.sent_id, lemmas)


def extract_heads(tree: CgelTree) -> DepGraph:
    index: Dict[Tuple[int, ...], int] = {}
    lex: List[Lexeme] = []
    for path, _, node, _ in walk(tree.root):
        if isinstance(node, Lexeme):
            lex.append(node)
            index[path] = len(lex)
    heads = [0] * len(lex)
    deprels = ["root"] * len(lex)

    def visit(node, path) -> Optional[int]:
        if isinstance(node, Lexeme):
            return index[path]
        if isinstance(node, Gap):
            return None
        functions = node.functions
        hi = next((i for i, f in enumerate(functions) if is_head_function(f)), 0)
        h = visit(node.children[hi][1], path + (hi,))
        if h is None:
            where = ".".join(map(str, path)) or "root"
            raise HeadError(f"{node.category} at {where} has no lexical head "
                            f"(daughter {hi} is empty)")
        for i, (f, child) in enumerate(node.children):
            if i == hi:
                continue
            d = visit(child, path + (i,))
            if d is not None:
                heads[d - 1] = h
                deprels[d - 1] = f
        return h

    if lex:
        visit(tree.root, ())
    return DepGraph([lx.form for lx in lex], heads, deprels, [lx.pos for lx in lex],
                    [lx.lemma for lx in lex], tree.id)


@dataclass
class HeadAgreement:
    agree: int = 0
    total: int = 0
    by_relation: Dict[str, List[int]] = field(default_factory=lambda: defaultdict(lambda: [0, 0]))

    @property
    def fraction(self) -> float:
        return self.agree / self.total if self.total else 0.0

    def relation_fraction(self, rel: str) -> float:
        a, t = self.by_relation.get(rel, (0, 0))
        return a / t if t else 0.0

    def __add__(self, other: "HeadAgreement") -> "HeadAgreement":
        out = HeadAgreement(self.agree + other.agree, self.total + other.total)
        for src in (self.by_relation, other.by_relation):
            for rel, (a, t) in src.items():
                out.by_relation[rel][0] += a
                out.by_relation[rel][1] += t
        return out


def head_agreement_counts(cgel: DepGraph, ud: ConlluSentence, align: TokenAlignment,
                          root_agrees: bool = True, base_relations: bool = True) -> HeadAgreement:
    """Count aligned tokens whose heads also correspond under ``align``.

    Two roots count as agreeing unless ``root_agrees`` is false.  Relations
    are keyed by UD deprel, reduced to the part before ``:`` by default.
    """
    pairs = set(align.pairs)
    out = HeadAgreement()
    for c, u in align.pairs:
        hc = cgel.heads[c]
        tok = ud.tokens[u]
        hu = tok.head
        if hc == 0 or hu == 0:
            ok = root_agrees and hc == 0 and hu == 0
        else:
            ok = (hc - 1, hu - 1) in pairs
        rel = tok.deprel.split(":")[0] if base_relations else tok.deprel
        out.total += 1
        out.by_relation[rel][1] += 1
        if ok:
            out.agree += 1
            out.by_relation[rel][0] += 1
    return out


def head_agreement(cgel: DepGraph, ud: ConlluSentence, align: TokenAlignment,
                   root_agrees: bool = True) -> float:
    return head_agreement_counts(cgel, ud, align, root_agrees).fraction
