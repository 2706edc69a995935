"""Tag entropy, conditional entropy and POS confusion tables."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .interop.conllu import ConlluSentence
from .interop.ptb import PtbTree, ptb_tokens
from .labels import POS_TAGS
from .model import CgelTree, lexemes


class EmptyDistribution(ValueError):
    pass


def entropy(dist: Mapping[str, int]) -> float:
    """Shannon entropy in bits of a label -> count mapping."""
    total = sum(dist.values())
    if total <= 0:
        raise EmptyDistribution("entropy of an empty distribution")
    h = 0.0
    for c in dist.values():
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


@dataclass
class JointCounts:
    counts: Counter = field(default_factory=Counter)

    def add(self, x: str, y: str, n: int = 1) -> None:
        self.counts[(x, y)] += n

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def marginal_x(self) -> Counter:
        out = Counter()
        for (x, _), c in self.counts.items():
            out[x] += c
        return out

    def marginal_y(self) -> Counter:
        out = Counter()
        for (_, y), c in self.counts.items():
            out[y] += c
        return out

    def __add__(self, other: "JointCounts") -> "JointCounts":
        return JointCounts(self.counts + other.counts)

    def __len__(self):
        return len(+self.counts)

    def labels(self) -> Tuple[List[str], List[str]]:
        xs = sorted(self.marginal_x(), key=_pos_order)
        ys = sorted(self.marginal_y())
        return xs, ys

    def matrix(self) -> Tuple[List[str], List[str], List[List[int]]]:
        xs, ys = self.labels()
        return xs, ys, [[self.counts.get((x, y), 0) for y in ys] for x in xs]

    def to_tsv(self, corner: str = "") -> str:
        xs, ys, rows = self.matrix()
        lines = ["\t".join([corner] + ys)]
        lines += ["\t".join([x] + [str(v) for v in row]) for x, row in zip(xs, rows)]
        return "\n".join(lines) + "\n"


def _pos_order(tag: str):
    return (POS_TAGS.index(tag), "") if tag in POS_TAGS else (len(POS_TAGS), tag)


def conditional_entropy(joint: JointCounts) -> float:
    """H(X | Y) in bits, X being the first label of each pair."""
    total = joint.total
    if total <= 0:
        raise EmptyDistribution("conditional entropy of an empty joint")
    my = joint.marginal_y()
    h = 0.0
    for (x, y), c in joint.counts.items():
        if c > 0:
            h -= (c / total) * math.log2(c / my[y])
    return max(h, 0.0)


def _other_tags(other, side: str) -> List[str]:
    side = side.upper()
    if isinstance(other, PtbTree):
        return [leaf.pos for leaf in ptb_tokens(other)[0]]
    if isinstance(other, ConlluSentence):
        return [t.upos if side == "UD" else t.xpos for t in other.tokens]
    return list(other)


def pos_confusion(trees: Sequence[CgelTree], other_sentences: Sequence, alignments: Sequence,
                  side: str = "UD") -> JointCounts:
    """Joint (CGEL POS, other tag) counts over aligned token pairs."""
    joint = JointCounts()
    for tree, other, align in zip(trees, other_sentences, alignments):
        pos = [lx.pos for lx in lexemes(tree)]
        tags = _other_tags(other, side)
        for c, o in align.pairs:
            joint.add(pos[c], tags[o])
    return joint


CLOSED_CLASSES = ("D", "N_pro", "P", "V_aux", "Sdr", "Coordinator")
_NUMERAL = re.compile(r"^[\d.,/:]+$")


def lemma_of(lexeme) -> str:
    return lexeme.lemma if lexeme.lemma is not None else lexeme.form.lower()


@dataclass
class LexemeTables:
    ambiguous: Dict[Tuple[str, ...], List[str]]
    function_words: Dict[str, List[str]]

    def ambiguity_class(self, lemma: str) -> Tuple[str, ...]:
        for tags, lemmas in self.ambiguous.items():
            if lemma in lemmas:
                return tags
        return ()

    def rows(self):
        for tags, lemmas in self.ambiguous.items():
            yield "ambiguous", "{" + ", ".join(tags) + "}", lemmas
        for tag, lemmas in self.function_words.items():
            yield "function", tag, lemmas


def report_lexeme_tables(trees: Iterable[CgelTree], min_count: int = 5) -> LexemeTables:
    tags_by_lemma: Dict[str, Counter] = {}
    for tree in trees:
        for lx in lexemes(tree):
            tags_by_lemma.setdefault(lemma_of(lx), Counter())[lx.pos] += 1

    ambiguous: Dict[Tuple[str, ...], List[str]] = {}
    for lemma, tags in tags_by_lemma.items():
        if len(tags) >= 2 and sum(tags.values()) >= min_count:
            key = tuple(sorted(tags, key=_pos_order))
            ambiguous.setdefault(key, []).append(lemma)
    ambiguous = {k: sorted(v, key=str.lower)
                 for k, v in sorted(ambiguous.items(), key=lambda kv: [_pos_order(t) for t in kv[0]])}

    function_words = {}
    for tag in CLOSED_CLASSES:
        lemmas = [l for l, tags in tags_by_lemma.items() if tags[tag] > 0]
        if tag == "D":
            lemmas = [l for l in lemmas if not _NUMERAL.match(l)]
        function_words[tag] = sorted(lemmas, key=lambda s: (s.lower(), s))
    return LexemeTables(ambiguous, function_words)
