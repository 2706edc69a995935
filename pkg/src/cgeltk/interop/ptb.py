"""Penn Treebank bracketed trees with ``-NONE-`` empty elements.

Function tags and indices stay in the label string (``NP-SBJ-1``).  A line
``# sent_id = ...`` before a tree sets its id; otherwise trees are
identified by position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

NONE_POS = "-NONE-"
EMPTY_KINDS = ("*T*", "*RNR*", "*PRO*", "*", "0")


class PtbError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Leaf:
    pos: str
    form: str


@dataclass(frozen=True)
class Empty:
    kind: str
    coindex: Optional[int]
    form: str

    @property
    def pos(self) -> str:
        return NONE_POS


@dataclass(frozen=True)
class NonTerminal:
    label: str
    children: Tuple["PtbNode", ...]


PtbNode = Union[NonTerminal, Leaf, Empty]


@dataclass(frozen=True)
class PtbTree:
    root: PtbNode
    id: Optional[str] = None

    def to_bracket(self) -> str:
        return to_bracket(self.root)


_INDEXED = re.compile(r"^(.*?)-(\d+)$")


def classify_empty(form: str) -> Empty:
    """``*T*-1`` -> Empty(kind='*T*', coindex=1)."""
    m = _INDEXED.match(form)
    base, index = (m.group(1), int(m.group(2))) if m and m.group(1) else (form, None)
    kind = base if base in EMPTY_KINDS else "other"
    return Empty(kind, index, form)


def _tokenize(text: str):
    line, col = 1, 1
    tokens = []
    meta = None
    i, n = 0, len(text)
    at_line_start = True
    while i < n:
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            at_line_start = True
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#" and at_line_start:
            j = text.find("\n", i)
            j = n if j < 0 else j
            body = text[i + 1:j].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                if k.strip() == "sent_id":
                    meta = v.strip()
            tokens.append(("META", meta, line, col))
            i = j
            continue
        at_line_start = False
        if c in "()":
            tokens.append((c, c, line, col))
            i += 1
            col += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "()":
            j += 1
        tokens.append(("ATOM", text[i:j], line, col))
        col += j - i
        i = j
    return tokens, (line, col)


def read_ptb(text: str) -> List[PtbTree]:
    tokens, eof = _tokenize(text)
    pos = 0
    trees: List[PtbTree] = []
    sent_id = None

    def node():
        nonlocal pos
        kind, _, line, col = tokens[pos]
        pos += 1
        label = ""
        if pos < len(tokens) and tokens[pos][0] == "ATOM":
            label = tokens[pos][1]
            pos += 1
        children = []
        while True:
            if pos >= len(tokens):
                raise PtbError(f"unbalanced brackets: '(' at {line}:{col} never closed", *eof)
            k, value, l2, c2 = tokens[pos]
            if k == ")":
                pos += 1
                break
            if k == "(":
                children.append(node())
            elif k == "ATOM":
                pos += 1
                if children or not label:
                    raise PtbError(f"unexpected atom {value!r}", l2, c2)
                children.append(value)
            else:
                raise PtbError("comment inside a tree", l2, c2)
        if not children:
            raise PtbError("empty tree" if not label else f"constituent {label} is empty",
                           line, col)
        if len(children) == 1 and isinstance(children[0], str):
            if label == NONE_POS:
                return classify_empty(children[0])
            return Leaf(label, children[0])
        if any(isinstance(c, str) for c in children):
            raise PtbError(f"mixed terminal and constituent children under {label}", line, col)
        return NonTerminal(label, tuple(children))

    while pos < len(tokens):
        k, value, line, col = tokens[pos]
        if k == "META":
            sent_id = value
            pos += 1
            continue
        if k != "(":
            raise PtbError(f"unbalanced brackets: unexpected {value!r}", line, col)
        root = node()
        # unwrap the anonymous outer bracket "( (S ...) )"
        while isinstance(root, NonTerminal) and root.label in ("", "ROOT") \
                and len(root.children) == 1 and isinstance(root.children[0], NonTerminal):
            root = root.children[0]
        trees.append(PtbTree(root, sent_id))
        sent_id = None
    return trees


def read_ptb_file(path) -> List[PtbTree]:
    return read_ptb(Path(path).read_text(encoding="utf-8"))


def to_bracket(node: PtbNode) -> str:
    if isinstance(node, Leaf):
        return f"({node.pos} {node.form})"
    if isinstance(node, Empty):
        return f"({NONE_POS} {node.form})"
    return "(" + node.label + " " + " ".join(to_bracket(c) for c in node.children) + ")"


def _preorder(node: PtbNode):
    yield node
    if isinstance(node, NonTerminal):
        for child in node.children:
            yield from _preorder(child)


def ptb_tokens(tree: Union[PtbTree, PtbNode]) -> Tuple[List[Leaf], List[Tuple[int, Empty]]]:
    """Surface leaves and ``(position, empty)`` pairs.

    Position ``i`` means the empty element sits between surface tokens
    ``i`` and ``i + 1`` (1-based), so 0 is sentence-initial and ``n`` final.
    """
    root = tree.root if isinstance(tree, PtbTree) else tree
    leaves: List[Leaf] = []
    empties: List[Tuple[int, Empty]] = []
    for node in _preorder(root):
        if isinstance(node, Leaf):
            leaves.append(node)
        elif isinstance(node, Empty):
            empties.append((len(leaves), node))
    return leaves, empties
