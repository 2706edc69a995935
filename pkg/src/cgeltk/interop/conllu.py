"""Minimal CoNLL-U reader/writer.

Rows are kept verbatim so that ``write_conllu(read_conllu(s)) == s`` for
well-formed input.  Multiword-token ranges (``3-4``) and empty nodes
(``5.1``) are preserved but excluded from :attr:`ConlluSentence.tokens`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

COLUMNS = ("id", "form", "lemma", "upos", "xpos", "feats", "head", "deprel", "deps", "misc")


class ConlluError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ConlluToken:
    index: int
    form: str
    lemma: str
    upos: str
    xpos: str
    feats: str
    head: int
    deprel: str
    deps: str = "_"
    misc: str = "_"


@dataclass
class ConlluSentence:
    tokens: List[ConlluToken]
    comments: List[str] = field(default_factory=list)
    # every row as its 10 raw columns, including multiword and empty-node rows
    rows: List[Tuple[str, ...]] = field(default_factory=list)

    def _comment(self, key: str) -> Optional[str]:
        for c in self.comments:
            body = c.lstrip("#").strip()
            if "=" in body:
                k, v = body.split("=", 1)
                if k.strip() == key:
                    return v.strip()
        return None

    @property
    def id(self) -> Optional[str]:
        return self._comment("sent_id")

    @property
    def text(self) -> Optional[str]:
        return self._comment("text")

    @property
    def forms(self) -> List[str]:
        return [t.form for t in self.tokens]

    @property
    def heads(self) -> List[int]:
        return [t.head for t in self.tokens]

    def __len__(self):
        return len(self.tokens)


def _sentence(comments, rows, first_line) -> ConlluSentence:
    tokens, lines = [], []
    for line_no, cols in rows:
        tid = cols[0]
        if "-" in tid or "." in tid:
            continue
        try:
            index = int(tid)
        except ValueError:
            raise ConlluError(f"bad token id {tid!r}", line_no) from None
        if index != len(tokens) + 1:
            raise ConlluError(f"token id {index} out of sequence (expected {len(tokens) + 1})",
                              line_no)
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluError(f"non-integer head {cols[6]!r}", line_no) from None
        tokens.append(ConlluToken(index, *cols[1:6], head, *cols[7:10]))
        lines.append(line_no)
    for line_no, tok in zip(lines, tokens):
        if not 0 <= tok.head <= len(tokens):
            raise ConlluError(f"head {tok.head} outside 0..{len(tokens)}", line_no)
    if tokens and not any(t.head == 0 for t in tokens):
        raise ConlluError("sentence has no root", first_line)
    return ConlluSentence(tokens, list(comments), [cols for _, cols in rows])


def read_conllu(text: str) -> List[ConlluSentence]:
    sentences: List[ConlluSentence] = []
    comments: List[str] = []
    rows: List[Tuple[int, Tuple[str, ...]]] = []
    first = 1

    def flush():
        if rows:
            sentences.append(_sentence(comments, rows, first))
        comments.clear()
        rows.clear()

    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            if rows:
                raise ConlluError("comment inside a sentence", line_no)
            if not comments:
                first = line_no
            comments.append(line)
            continue
        cols = tuple(line.split("\t"))
        if len(cols) != 10:
            raise ConlluError(f"expected 10 tab-separated columns, found {len(cols)}", line_no)
        if not rows and not comments:
            first = line_no
        rows.append((line_no, cols))
    flush()
    return sentences


def read_conllu_file(path) -> List[ConlluSentence]:
    return read_conllu(Path(path).read_text(encoding="utf-8"))


def write_conllu(sentences) -> str:
    blocks = []
    for s in sentences:
        lines = list(s.comments) + ["\t".join(cols) for cols in s.rows]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks) + ("\n" if blocks else "")


def sentence_from_heads(forms, heads, upos=None, deprels=None, sent_id=None,
                        lemmas=None) -> ConlluSentence:
    """Build a sentence from parallel lists (used for CGEL-derived graphs)."""
    n = len(forms)
    upos = upos or ["_"] * n
    deprels = deprels or ["_"] * n
    lemmas = lemmas or ["_"] * n
    tokens, rows = [], []
    for i in range(n):
        tok = ConlluToken(i + 1, forms[i], lemmas[i], upos[i], "_", "_", heads[i], deprels[i])
        tokens.append(tok)
        rows.append(tuple(str(getattr(tok, c)) if c != "id" else str(i + 1) for c in
                          ("id",) + COLUMNS[1:]))
    comments = [f"# sent_id = {sent_id}"] if sent_id is not None else []
    return ConlluSentence(tokens, comments, rows)
