"""Reader and writer for the PENMAN-like bracketed tree notation.

A document is a sequence of trees, each preceded by ``# key = value``
metadata lines::

    # sent_id = wh-1
    # text = which Liz bought
    (Clause
        :Prenucleus (NP :x
            :Det-Head (DP
                :Head (D :t "which")))
        :Head (Clause
            :Subj (NP
                :Head (Nom
                    :Head (N :t "Liz")))
            :Head (VP
                :Head (V :t "bought")
                :Obj (GAP :x))))

Lexemes carry ``:t`` (form) and optionally ``:l`` (lemma), ``:correct``
and ``:suffix``.  A bare ``:sym`` directly after the label is a coindex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from .labels import (BASE_CATEGORIES, FUNCTION_LABELS, GAP_LABEL,
                     LEGACY_HEAD_FUNCTIONS, FUNCTIONS, POS_TAGS, is_known_category)
from .model import CgelTree, Gap, Lexeme, Node, Phrase, coindex_table

INDENT = "    "
LEXEME_ATTRS = {"t": "form", "l": "lemma", "correct": "correction", "suffix": "suffix"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


@dataclass
class NotationDocument:
    trees: List[CgelTree] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    def __iter__(self) -> Iterator[CgelTree]:
        return iter(self.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __getitem__(self, i):
        return self.trees[i]


# --- tokenizer -------------------------------------------------------------

@dataclass
class _Tok:
    kind: str  # ( ) KW STR SYM COMMENT EOF
    value: str
    line: int
    col: int


_SYM_STOP = set(' \t\r\n()":')


def _tokenize(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    i, n = 0, len(text)
    line, col = 1, 1
    at_line_start = True

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line, col = line + 1, 1
            at_line_start = True
            continue
        if c in " \t\r﻿":
            i += 1
            col += 1
            continue
        if c == "#" and at_line_start:
            j = text.find("\n", i)
            j = n if j < 0 else j
            toks.append(_Tok("COMMENT", text[i + 1:j], line, col))
            col += j - i
            i = j
            continue
        at_line_start = False
        if c in "()":
            toks.append(_Tok(c, c, line, col))
            i += 1
            col += 1
        elif c == '"':
            start_line, start_col = line, col
            buf = []
            i += 1
            col += 1
            while True:
                if i >= n:
                    raise ParseError("unterminated string", start_line, start_col)
                c = text[i]
                if c == "\\" and i + 1 < n:
                    buf.append(text[i + 1])
                    i += 2
                    col += 2
                    continue
                if c == '"':
                    i += 1
                    col += 1
                    break
                if c == "\n":
                    line, col = line + 1, 1
                else:
                    col += 1
                buf.append(c)
                i += 1
            toks.append(_Tok("STR", "".join(buf), start_line, start_col))
        elif c == ":":
            j = i + 1
            while j < n and text[j] not in _SYM_STOP:
                j += 1
            if j == i + 1:
                raise ParseError("empty ':' label", line, col)
            toks.append(_Tok("KW", text[i + 1:j], line, col))
            col += j - i
            i = j
        else:
            j = i
            while j < n and text[j] not in _SYM_STOP:
                j += 1
            toks.append(_Tok("SYM", text[i:j], line, col))
            col += j - i
            i = j
    toks.append(_Tok("EOF", "", line, col))
    return toks


# --- label normalisation ----------------------------------------------------

def _squash(label: str) -> str:
    return re.sub(r"[_\-\s]", "", label).lower()


_COMPAT_POS = {_squash(p): p for p in POS_TAGS}
_COMPAT_CAT = {_squash(c): c for c in BASE_CATEGORIES}
_COMPAT_FUNC = {_squash(f): f for f in FUNCTION_LABELS}
_COMPAT_FUNC.update({_squash(f): f for f in LEGACY_HEAD_FUNCTIONS})
_COMPAT_FUNC.update({_squash(a): t for a, t in FUNCTIONS.aliases.items()})
_KNOWN_FUNCTIONS = frozenset(FUNCTION_LABELS) | LEGACY_HEAD_FUNCTIONS


def _compat_category(label: str) -> str:
    parts = [_COMPAT_CAT.get(_squash(p), p) for p in label.split("+")]
    return "+".join(parts)


# --- parser ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, strict: bool, compat: bool):
        self.toks = _tokenize(text)
        self.pos = 0
        self.strict = strict
        self.compat = compat
        self.diagnostics: List[Diagnostic] = []
        self.positions: Dict[Tuple[int, ...], Tuple[int, int]] = {}

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def problem(self, message: str, tok: _Tok):
        if self.strict:
            raise ParseError(message, tok.line, tok.col)
        self.diagnostics.append(Diagnostic(tok.line, tok.col, message))

    def document(self) -> NotationDocument:
        doc = NotationDocument()
        meta: List[Tuple[str, str]] = []
        while True:
            tok = self.peek()
            if tok.kind == "EOF":
                break
            if tok.kind == "COMMENT":
                self.next()
                meta.append(_split_meta(tok.value))
                continue
            if tok.kind != "(":
                raise ParseError(f"expected '(' to start a tree, found {tok.value!r}",
                                 tok.line, tok.col)
            self.positions = {}
            root = self.node(())
            doc.trees.append(self.finish_tree(root, meta))
            meta = []
        doc.diagnostics = self.diagnostics
        return doc

    def finish_tree(self, root: Node, meta: List[Tuple[str, str]]) -> CgelTree:
        sent_id = text = None
        rest = []
        for k, v in meta:
            if k == "sent_id" and sent_id is None:
                sent_id = v
            elif k == "text" and text is None:
                text = v
            else:
                rest.append((k, v))
        tree = CgelTree(root, sent_id, text, tuple(rest))
        for label, (ante, gps) in sorted(coindex_table(tree).items()):
            if len(ante) > 1:
                line, col = self.positions[ante[1]]
                self.problem(f"coindex {label!r} has {len(ante)} antecedents",
                             _Tok("", "", line, col))
            if gps and not ante:
                line, col = self.positions[gps[0]]
                self.problem(f"gap coindex {label!r} has no antecedent",
                             _Tok("", "", line, col))
        return tree

    def skip_comments(self):
        while self.peek().kind == "COMMENT":
            self.next()

    def expect(self, kind: str) -> _Tok:
        self.skip_comments()
        tok = self.next()
        if tok.kind != kind:
            if tok.kind == "EOF":
                raise ParseError(f"unbalanced parentheses: expected {kind!r} before end of input",
                                 tok.line, tok.col)
            raise ParseError(f"expected {kind!r}, found {tok.value!r}", tok.line, tok.col)
        return tok

    def node(self, path: Tuple[int, ...]) -> Node:
        open_tok = self.expect("(")
        self.positions[path] = (open_tok.line, open_tok.col)
        label_tok = self.expect("SYM")
        label = label_tok.value

        coindex = None
        self.skip_comments()
        if self.peek().kind == "KW" and self.peek(1).kind not in ("STR", "("):
            coindex = self.next().value

        attrs: Dict[str, Tuple[str, _Tok]] = {}
        edges: List[Tuple[str, Node]] = []
        while True:
            self.skip_comments()
            tok = self.peek()
            if tok.kind == ")":
                self.next()
                break
            if tok.kind == "EOF":
                raise ParseError(
                    f"unbalanced parentheses: '(' opened at {open_tok.line}:{open_tok.col} "
                    "is never closed", tok.line, tok.col)
            if tok.kind != "KW":
                raise ParseError(f"expected ':label' or ')', found {tok.value!r}",
                                 tok.line, tok.col)
            self.next()
            nxt = self.peek()
            if nxt.kind == "STR":
                self.next()
                if tok.value in attrs:
                    self.problem(f"duplicate attribute :{tok.value}", tok)
                attrs[tok.value] = (nxt.value, tok)
            elif nxt.kind == "(":
                edges.append((self.function(tok), self.node(path + (len(edges),))))
            else:
                raise ParseError(f"misplaced coindex :{tok.value} (must follow the label)",
                                 tok.line, tok.col)
        return self.build(label_tok, coindex, attrs, edges)

    def function(self, tok: _Tok) -> str:
        name = tok.value
        if name in _KNOWN_FUNCTIONS:
            return name
        if self.compat and _squash(name) in _COMPAT_FUNC:
            return _COMPAT_FUNC[_squash(name)]
        self.problem(f"unknown function label :{name}", tok)
        return name

    def build(self, label_tok: _Tok, coindex, attrs, edges) -> Node:
        label = label_tok.value
        is_gap = label == GAP_LABEL or (self.compat and label.lower() == "gap")
        if is_gap:
            if "t" in attrs:
                raise ParseError("GAP node cannot have a form", attrs["t"][1].line,
                                 attrs["t"][1].col)
            if edges:
                raise ParseError("GAP node cannot have children", label_tok.line, label_tok.col)
            self.extra_attrs(attrs, {"suffix"})
            return Gap(coindex, attrs.get("suffix", (None,))[0])

        if "t" in attrs:
            if edges:
                raise ParseError(f"lexeme {label} cannot have children",
                                 label_tok.line, label_tok.col)
            pos = label
            if pos not in POS_TAGS:
                if self.compat and _squash(pos) in _COMPAT_POS:
                    pos = _COMPAT_POS[_squash(pos)]
                else:
                    self.problem(f"unknown part of speech {label!r}", label_tok)
            self.extra_attrs(attrs, set(LEXEME_ATTRS))
            kw = {LEXEME_ATTRS[k]: v for k, (v, _) in attrs.items() if k in LEXEME_ATTRS}
            return Lexeme(pos=pos, coindex=coindex, **kw)

        if label in POS_TAGS:
            raise ParseError(f"lexeme {label} lacks a :t form", label_tok.line, label_tok.col)
        if not edges:
            raise ParseError(f"phrase {label} has no children", label_tok.line, label_tok.col)
        category = label
        if not is_known_category(category):
            if self.compat and is_known_category(_compat_category(category)):
                category = _compat_category(category)
            else:
                self.problem(f"unknown phrasal category {label!r}", label_tok)
        self.extra_attrs(attrs, set())
        return Phrase(category, tuple(edges), coindex)

    def extra_attrs(self, attrs, allowed):
        for key, (_, tok) in attrs.items():
            if key in allowed:
                continue
            if self.compat:
                self.diagnostics.append(Diagnostic(tok.line, tok.col,
                                                   f"ignored attribute :{key}"))
            else:
                self.problem(f"unknown attribute :{key}", tok)


def _split_meta(comment: str) -> Tuple[str, str]:
    body = comment.strip()
    if "=" in body:
        key, value = body.split("=", 1)
        return key.strip(), value.strip()
    return "", body


def parse(text: str, strict: bool = True, compat: bool = False) -> NotationDocument:
    """Parse a notation document.

    With ``strict=False`` unknown labels and coindex problems are recorded in
    ``doc.diagnostics`` instead of raising; structural errors always raise.
    ``compat`` tolerates spelling variants such as ``Npro`` or ``Obj_dir``.
    """
    return _Parser(text, strict, compat).document()


def parse_tree(text: str, **kw) -> CgelTree:
    doc = parse(text, **kw)
    if len(doc) != 1:
        raise ValueError(f"expected exactly one tree, found {len(doc)}")
    return doc[0]


def read_file(path: Union[str, FsPath], **kw) -> NotationDocument:
    return parse(FsPath(path).read_text(encoding="utf-8"), **kw)


# --- serializer --------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _render(node: Node, depth: int, out: List[str]):
    if isinstance(node, Gap):
        parts = [GAP_LABEL]
        if node.coindex:
            parts.append(":" + node.coindex)
        if node.suffix is not None:
            parts.append(":suffix " + _quote(node.suffix))
        out.append("(" + " ".join(parts) + ")")
        return
    if isinstance(node, Lexeme):
        parts = [node.pos]
        if node.coindex:
            parts.append(":" + node.coindex)
        parts.append(":t " + _quote(node.form))
        for key, attr in (("l", "lemma"), ("correct", "correction"), ("suffix", "suffix")):
            value = getattr(node, attr)
            if value is not None:
                parts.append(f":{key} {_quote(value)}")
        out.append("(" + " ".join(parts) + ")")
        return
    head = "(" + node.category + (" :" + node.coindex if node.coindex else "")
    out.append(head)
    pad = INDENT * (depth + 1)
    for function, child in node.children:
        out.append("\n" + pad + ":" + function + " ")
        _render(child, depth + 1, out)
    out.append(")")


def serialize_tree(tree: CgelTree) -> str:
    lines = []
    if tree.id is not None:
        lines.append(f"# sent_id = {tree.id}")
    if tree.text is not None:
        lines.append(f"# text = {tree.text}")
    for k, v in tree.metadata:
        lines.append(f"# {k} = {v}" if k else f"# {v}")
    out: List[str] = []
    _render(tree.root, 0, out)
    lines.append("".join(out))
    return "\n".join(lines) + "\n"


def serialize(doc: Union[NotationDocument, Iterable[CgelTree]]) -> str:
    trees = doc.trees if isinstance(doc, NotationDocument) else list(doc)
    return "\n".join(serialize_tree(t) for t in trees)


def write_file(path, doc) -> None:
    FsPath(path).write_text(serialize(doc), encoding="utf-8")
