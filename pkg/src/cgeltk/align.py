"""Monotone token alignment and gap/empty-element alignment.

CGEL-side indices are 0-based positions in the lexeme sequence (gaps are
not alignable and are excluded).  A multiword lexeme may cover a
contiguous run of other-side tokens; it then contributes one pair per
covered token.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

from .interop.ptb import Empty, PtbTree, ptb_tokens
from .model import CgelTree, gap_positions, lexemes

Pair = Tuple[int, int]


def normalize(token: str) -> str:
    return unicodedata.normalize("NFC", token)


def exact(a: str, b: str) -> bool:
    return normalize(a) == normalize(b)


def caseless(a: str, b: str) -> bool:
    return normalize(a).casefold() == normalize(b).casefold()


@dataclass
class TokenAlignment:
    pairs: List[Pair]
    n_cgel: int
    n_other: int
    # cgel index -> (start, end) other-side span, for multiword lexemes only
    spans: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    @property
    def unmatched_cgel(self) -> List[int]:
        hit = {c for c, _ in self.pairs}
        return [i for i in range(self.n_cgel) if i not in hit]

    @property
    def unmatched_other(self) -> List[int]:
        hit = {o for _, o in self.pairs}
        return [j for j in range(self.n_other) if j not in hit]

    def cgel_to_other(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for c, o in self.pairs:
            out.setdefault(c, []).append(o)
        return out

    def other_to_cgel(self) -> Dict[int, int]:
        return {o: c for c, o in self.pairs}

    @property
    def matched_other_fraction(self) -> float:
        return len({o for _, o in self.pairs}) / self.n_other if self.n_other else 0.0


def _word_lists(cgel) -> List[List[str]]:
    if isinstance(cgel, CgelTree):
        return [lx.words or [lx.form] for lx in lexemes(cgel)]
    return [w.split() or [w] if isinstance(w, str) else list(w) for w in cgel]


def _other_forms(other) -> List[str]:
    if isinstance(other, PtbTree):
        return [leaf.form for leaf in ptb_tokens(other)[0]]
    if hasattr(other, "forms"):
        return list(other.forms)
    return list(other)


def _align_block(cw: List[List[str]], ow: List[str], c0: int, c1: int, o0: int, o1: int,
                 eq: Callable[[str, str], bool]) -> List[Tuple[int, int, int]]:
    """Best monotone matching inside ``cw[c0:c1] x ow[o0:o1]``.

    Returns ``(cgel_index, other_start, length)`` steps.  The value of a
    matching is the number of other-side tokens covered; among optimal
    matchings the one with the lexicographically smallest pair list wins.
    """
    n, m = c1 - c0, o1 - o0

    def match_len(i, j):
        words = cw[c0 + i]
        k = len(words)
        if j + k <= m and all(eq(words[t], ow[o0 + j + t]) for t in range(k)):
            return k
        # a multiword lexeme may also meet a single token spelled with the space
        if k > 1 and eq(" ".join(words), ow[o0 + j]):
            return 1
        return 0

    # best[i][j]: optimal value for the suffix problem cw[i:], ow[j:]
    best = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, below = best[i], best[i + 1]
        for j in range(m - 1, -1, -1):
            v = max(below[j], row[j + 1])
            k = match_len(i, j)
            if k:
                v = max(v, k + best[i + 1][j + k])
            row[j] = v

    steps = []
    i = j = 0
    while i < n and j < m and best[i][j] > 0:
        target = best[i][j]
        chosen = None
        for ii in range(i, n):
            if best[ii][j] < target:
                break
            for jj in range(j, m):
                if best[ii][jj] < target:
                    break
                k = match_len(ii, jj)
                if k and k + best[ii + 1][jj + k] == target:
                    chosen = (ii, jj, k)
                    break
            if chosen:
                break
        ii, jj, k = chosen
        steps.append((c0 + ii, o0 + jj, k))
        i, j = ii + 1, jj + k
    return steps


def align_tokens(cgel, other, case_fallback: bool = False) -> TokenAlignment:
    """Maximal monotone alignment of CGEL lexemes against another token sequence.

    ``cgel`` is a tree or a list of lexeme forms; ``other`` is a CoNLL-U
    sentence, a PTB tree or a list of forms.  Matching is exact after NFC;
    with ``case_fallback`` residual tokens between anchors are retried
    case-insensitively.
    """
    cw = _word_lists(cgel)
    ow = _other_forms(other)
    steps = _align_block(cw, ow, 0, len(cw), 0, len(ow), exact)
    if case_fallback:
        filled = []
        prev_c, prev_o = 0, 0
        for step in steps + [(len(cw), len(ow), 0)]:
            c, o, k = step
            filled += _align_block(cw, ow, prev_c, c, prev_o, o, caseless)
            if k:
                filled.append(step)
            prev_c, prev_o = c + 1, o + k
        steps = filled
    pairs: List[Pair] = []
    spans: Dict[int, Tuple[int, int]] = {}
    for c, o, k in steps:
        pairs.extend((c, o + t) for t in range(k))
        if len(cw[c]) > 1:
            spans[c] = (o, o + k)
    return TokenAlignment(pairs, len(cw), len(ow), spans)


def brute_force_alignment(cgel: Sequence[str], other: Sequence[str],
                          eq: Callable[[str, str], bool] = exact) -> List[Pair]:
    """Exhaustive search over monotone single-word matchings (test oracle)."""
    best: List[Pair] = []

    def search(i, j, acc):
        nonlocal best
        if len(acc) > len(best) or (len(acc) == len(best) and acc < best):
            best = list(acc)
        for ii in range(i, len(cgel)):
            for jj in range(j, len(other)):
                if eq(cgel[ii], other[jj]):
                    acc.append((ii, jj))
                    search(ii + 1, jj + 1, acc)
                    acc.pop()

    search(0, 0, [])
    return best


@dataclass
class GapAlignment:
    pairs: List[Tuple[int, int, str]]
    unmatched_gaps: List[int]
    unmatched_empties: List[int]
    empty_kinds: List[str] = field(default_factory=list)

    def kind_totals(self) -> Dict[str, Tuple[int, int]]:
        """``kind -> (aligned, total)`` over the PTB empty elements."""
        totals: Dict[str, List[int]] = {}
        for kind in self.empty_kinds:
            totals.setdefault(kind, [0, 0])[1] += 1
        for _, e, kind in self.pairs:
            totals[kind][0] += 1
        return {k: (a, t) for k, (a, t) in sorted(totals.items())}


def _position_window(q: int, tok_align: TokenAlignment, n_cgel: int) -> Tuple[int, int]:
    """CGEL inter-lexeme positions compatible with PTB position ``q``.

    The window lies between the nearest aligned anchors on either side;
    it collapses to one position when the neighbouring tokens are aligned.
    """
    lo, hi = 0, n_cgel
    for c, o in tok_align.pairs:
        if o < q:
            lo = max(lo, c + 1)
        elif c < hi:
            hi = c
    return lo, max(lo, hi)


def align_gaps(cgel: CgelTree, ptb: PtbTree, tok_align: Optional[TokenAlignment] = None,
               kinds: Optional[Set[str]] = None) -> GapAlignment:
    """Pair CGEL gaps with PTB empty elements by inter-token position.

    ``tok_align`` must align ``cgel`` with the PTB surface leaves.  Gaps are
    taken left to right, each claiming the first free empty whose window
    contains it.  ``kinds`` restricts which empty kinds are candidates.
    """
    if tok_align is None:
        tok_align = align_tokens(cgel, ptb)
    leaves, empties = ptb_tokens(ptb)
    gpos = gap_positions(cgel)
    n_cgel = len(lexemes(cgel))
    windows = [_position_window(q, tok_align, n_cgel) for q, _ in empties]
    taken = [False] * len(empties)
    pairs = []
    unmatched_gaps = []
    for g, p in enumerate(gpos):
        for e, (lo, hi) in enumerate(windows):
            if taken[e] or not lo <= p <= hi:
                continue
            if kinds is not None and empties[e][1].kind not in kinds:
                continue
            taken[e] = True
            pairs.append((g, e, empties[e][1].kind))
            break
        else:
            unmatched_gaps.append(g)
    unmatched_empties = [e for e, t in enumerate(taken) if not t]
    return GapAlignment(pairs, unmatched_gaps, unmatched_empties,
                        [emp.kind for _, emp in empties])
