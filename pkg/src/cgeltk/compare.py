"""Corpus-level comparison of CGEL trees with parallel UD and PTB data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .align import GapAlignment, TokenAlignment, align_gaps, align_tokens
from .heads import HeadAgreement, HeadError, extract_heads, head_agreement_counts
from .interop.conllu import ConlluSentence
from .interop.ptb import PtbTree
from .metrics import EmptyDistribution, JointCounts, conditional_entropy, entropy, pos_confusion
from .model import CgelTree, Census, census, gaps


class PairingError(ValueError):
    def __init__(self, message: str, unpaired: Sequence[str] = ()):
        super().__init__(message + (": " + ", ".join(unpaired) if unpaired else ""))
        self.unpaired = list(unpaired)


@dataclass
class SentencePair:
    tree: CgelTree
    ud: Optional[ConlluSentence] = None
    ptb: Optional[PtbTree] = None


def _tree_key(tree: CgelTree, i: int) -> str:
    return tree.id or f"#{i + 1}"


def _pair_side(trees, others, mode: str, side: str):
    """Return ``(partner per tree, unpaired labels)`` for one parallel side."""
    if not others:
        return [None] * len(trees), []
    have_ids = all(t.id for t in trees) and all(o.id for o in others)
    if mode == "sent_id" and not have_ids:
        raise PairingError(f"pairing by sent_id needs ids on every CGEL tree and {side} item")
    if mode == "order" or (mode == "auto" and not have_ids):
        if len(trees) != len(others):
            n = min(len(trees), len(others))
            extra = [f"cgel:{_tree_key(t, i)}" for i, t in enumerate(trees)][n:]
            extra += [f"{side}:{o.id or '#%d' % (i + 1)}" for i, o in enumerate(others)][n:]
            raise PairingError(f"{len(trees)} CGEL trees but {len(others)} {side} items", extra)
        return list(others), []
    by_id: Dict[str, object] = {}
    for o in others:
        by_id.setdefault(o.id, o)
    partners = [by_id.get(t.id) for t in trees]
    tree_ids = {t.id for t in trees}
    unpaired = [f"{side}:{o.id}" for o in others if o.id not in tree_ids]
    return partners, unpaired


def pair_sentences(trees: Sequence[CgelTree], ud: Sequence[ConlluSentence] = (),
                   ptb: Sequence[PtbTree] = (), mode: str = "auto"):
    """Pair trees with UD sentences and PTB trees.

    ``mode`` is ``sent_id``, ``order`` or ``auto`` (ids when every item on
    both sides has one, otherwise order).  Returns ``(pairs, unpaired)``
    where ``pairs`` holds only trees with at least one partner.
    """
    if mode not in ("auto", "sent_id", "order"):
        raise ValueError(f"unknown pairing mode {mode!r}")
    trees = list(trees)
    ud_partners, ud_extra = _pair_side(trees, list(ud), mode, "ud")
    ptb_partners, ptb_extra = _pair_side(trees, list(ptb), mode, "ptb")
    pairs, unpaired = [], ud_extra + ptb_extra
    for i, (t, u, p) in enumerate(zip(trees, ud_partners, ptb_partners)):
        if u is None and p is None:
            unpaired.append(f"cgel:{_tree_key(t, i)}")
        else:
            pairs.append(SentencePair(t, u, p))
    return pairs, unpaired


@dataclass
class CorpusComparison:
    census: Census
    ud_tokens: int = 0
    ud_matched: int = 0
    ptb_tokens: int = 0
    ptb_matched: int = 0
    joint_ud: JointCounts = field(default_factory=JointCounts)
    joint_ptb: JointCounts = field(default_factory=JointCounts)
    heads: HeadAgreement = field(default_factory=HeadAgreement)
    gap_kinds: Dict[str, List[int]] = field(default_factory=dict)
    gaps_in_ptb_pairs: int = 0
    unmatched_gaps: int = 0
    paired_trees: int = 0
    unpaired: List[str] = field(default_factory=list)
    head_errors: List[str] = field(default_factory=list)

    @property
    def matched_fraction(self) -> Optional[float]:
        return self.ud_matched / self.ud_tokens if self.ud_tokens else None

    @property
    def pos_entropy(self) -> Optional[float]:
        try:
            return entropy(self.census.pos)
        except EmptyDistribution:
            return None

    @staticmethod
    def _cond(joint) -> Optional[float]:
        try:
            return conditional_entropy(joint)
        except EmptyDistribution:
            return None

    @property
    def h_given_ud(self) -> Optional[float]:
        return self._cond(self.joint_ud)

    @property
    def h_given_ptb(self) -> Optional[float]:
        return self._cond(self.joint_ptb)

    def summary(self) -> Dict[str, object]:
        """Flat, ordered key -> value mapping used by the TSV/JSON writers."""
        out: Dict[str, object] = {
            "trees": self.census.trees,
            "paired_trees": self.paired_trees,
            "tokens": self.census.tokens,
            "ud_tokens": self.ud_tokens,
            "ud_matched": self.ud_matched,
            "ud_matched_pct": _pct(self.matched_fraction),
            "ptb_tokens": self.ptb_tokens,
            "ptb_matched": self.ptb_matched,
            "H_cgel_pos": _round(self.pos_entropy),
            "H_cgel_pos_given_ud": _round(self.h_given_ud),
            "H_cgel_pos_given_ptb": _round(self.h_given_ptb),
            "head_agreement_pct": _pct(self.heads.fraction if self.heads.total else None),
            "head_agreement_pairs": self.heads.total,
        }
        for rel in sorted(self.heads.by_relation):
            a, t = self.heads.by_relation[rel]
            out[f"head_agreement_pct[{rel}]"] = _pct(a / t if t else None)
        for kind, (a, t) in sorted(self.gap_kinds.items()):
            out[f"empties_aligned[{kind}]"] = f"{a}/{t}"
        out["gaps_in_ptb_pairs"] = self.gaps_in_ptb_pairs
        out["gaps_unaligned"] = self.unmatched_gaps
        return out


def _round(x, nd=2):
    return None if x is None else round(x, nd)


def _pct(x):
    return None if x is None else round(100 * x, 1)


def compare_corpus(trees: Sequence[CgelTree], pairs: Sequence[SentencePair],
                   case_fallback: bool = False, root_agrees: bool = True,
                   unpaired: Sequence[str] = ()) -> CorpusComparison:
    result = CorpusComparison(census=census(trees), unpaired=list(unpaired))
    result.paired_trees = len(pairs)
    ud_trees, ud_sents, ud_aligns = [], [], []
    ptb_trees, ptb_sents, ptb_aligns = [], [], []
    for pair in pairs:
        tree = pair.tree
        if pair.ud is not None:
            al = align_tokens(tree, pair.ud, case_fallback)
            ud_trees.append(tree)
            ud_sents.append(pair.ud)
            ud_aligns.append(al)
            result.ud_tokens += al.n_other
            result.ud_matched += len({o for _, o in al.pairs})
            try:
                graph = extract_heads(tree)
            except HeadError as exc:
                result.head_errors.append(f"{tree.id}: {exc}")
            else:
                result.heads = result.heads + head_agreement_counts(
                    graph, pair.ud, al, root_agrees)
        if pair.ptb is not None:
            al = align_tokens(tree, pair.ptb, case_fallback)
            ptb_trees.append(tree)
            ptb_sents.append(pair.ptb)
            ptb_aligns.append(al)
            result.ptb_tokens += al.n_other
            result.ptb_matched += len({o for _, o in al.pairs})
            ga = align_gaps(tree, pair.ptb, al)
            for kind, (a, t) in ga.kind_totals().items():
                acc = result.gap_kinds.setdefault(kind, [0, 0])
                acc[0] += a
                acc[1] += t
            result.gaps_in_ptb_pairs += len(gaps(tree))
            result.unmatched_gaps += len(ga.unmatched_gaps)
    result.joint_ud = pos_confusion(ud_trees, ud_sents, ud_aligns, "UD")
    result.joint_ptb = pos_confusion(ptb_trees, ptb_sents, ptb_aligns, "PTB")
    return result
