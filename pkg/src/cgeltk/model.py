"""Immutable CGEL tree model: phrases, lexemes and gaps.

A phrase owns an ordered tuple of ``(function, child)`` edges.  Coindexed
nodes carry a shared ``coindex`` symbol; a gap's antecedent is the unique
non-gap node bearing the same symbol.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple, Union


@dataclass(frozen=True)
class Lexeme:
    pos: str
    form: str
    lemma: Optional[str] = None
    correction: Optional[str] = None
    suffix: Optional[str] = None
    coindex: Optional[str] = None

    @property
    def words(self) -> List[str]:
        """Orthographic words; multiword names yield several."""
        return self.form.split()


@dataclass(frozen=True)
class Gap:
    coindex: Optional[str] = None
    suffix: Optional[str] = None


@dataclass(frozen=True)
class Phrase:
    category: str
    children: Tuple[Tuple[str, "Node"], ...]
    coindex: Optional[str] = None

    def __post_init__(self):
        if not self.children:
            raise ValueError(f"phrase {self.category} has no children")
        # tolerate lists from callers building trees by hand
        object.__setattr__(self, "children", tuple(tuple(c) for c in self.children))

    @property
    def functions(self) -> Tuple[str, ...]:
        return tuple(f for f, _ in self.children)

    @property
    def nodes(self) -> Tuple["Node", ...]:
        return tuple(n for _, n in self.children)


Node = Union[Phrase, Lexeme, Gap]
Path = Tuple[int, ...]


@dataclass(frozen=True)
class CgelTree:
    root: Node
    id: Optional[str] = None
    text: Optional[str] = None
    metadata: Tuple[Tuple[str, str], ...] = field(default=())

    @property
    def source_text(self) -> Optional[str]:
        return self.text

    def node_at(self, path: Path) -> Node:
        node = self.root
        for i in path:
            if not isinstance(node, Phrase):
                raise IndexError(f"path {path} descends below a terminal")
            node = node.children[i][1]
        return node

    def meta(self, key: str, default: Optional[str] = None) -> Optional[str]:
        for k, v in self.metadata:
            if k == key:
                return v
        return default


def walk(node: Node, path: Path = (), function: Optional[str] = None,
         parent: Optional[Phrase] = None) -> Iterator[Tuple[Path, Optional[str], Node, Optional[Phrase]]]:
    """Pre-order traversal yielding ``(path, function, node, parent)``."""
    yield path, function, node, parent
    if isinstance(node, Phrase):
        for i, (f, child) in enumerate(node.children):
            yield from walk(child, path + (i,), f, node)


def iter_nodes(tree: CgelTree):
    return walk(tree.root)


def terminals(tree: Union[CgelTree, Node]) -> List[Union[Lexeme, Gap]]:
    root = tree.root if isinstance(tree, CgelTree) else tree
    return [n for _, _, n, _ in walk(root) if not isinstance(n, Phrase)]


def lexemes(tree: Union[CgelTree, Node]) -> List[Lexeme]:
    return [n for n in terminals(tree) if isinstance(n, Lexeme)]


def gaps(tree: Union[CgelTree, Node]) -> List[Gap]:
    return [n for n in terminals(tree) if isinstance(n, Gap)]


def gap_positions(tree: CgelTree) -> List[int]:
    """Inter-lexeme position of each gap: the number of lexemes preceding it."""
    out, seen = [], 0
    for t in terminals(tree):
        if isinstance(t, Gap):
            out.append(seen)
        else:
            seen += 1
    return out


def words(tree: CgelTree) -> List[str]:
    return [w for lx in lexemes(tree) for w in lx.words]


def sentence_text(tree: CgelTree) -> str:
    return " ".join(lx.form for lx in lexemes(tree))


def coindex_table(tree: CgelTree):
    """Map each coindex symbol to ``(antecedent paths, gap paths)``."""
    table = {}
    for path, _, node, _ in walk(tree.root):
        if node.coindex is None:
            continue
        ante, gps = table.setdefault(node.coindex, ([], []))
        (gps if isinstance(node, Gap) else ante).append(path)
    return table


GAP_KEY = "GAP"


@dataclass
class Census:
    pos: Counter = field(default_factory=Counter)
    categories: Counter = field(default_factory=Counter)
    functions: Counter = field(default_factory=Counter)
    gaps: int = 0
    trees: int = 0

    @property
    def tokens(self) -> int:
        return sum(self.pos.values())

    def __add__(self, other: "Census") -> "Census":
        return Census(self.pos + other.pos, self.categories + other.categories,
                      self.functions + other.functions, self.gaps + other.gaps,
                      self.trees + other.trees)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Census):
            return NotImplemented
        # Counter equality ignores zero entries only from 3.10 on; normalise explicitly
        return (+self.pos == +other.pos and +self.categories == +other.categories
                and +self.functions == +other.functions and self.gaps == other.gaps
                and self.trees == other.trees)

    def as_rows(self):
        """``(section, label, count)`` rows, most frequent first within a section."""
        def ordered(c):
            return sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))
        rows = [("pos", k, v) for k, v in ordered(self.pos)]
        rows.append(("pos", GAP_KEY, self.gaps))
        rows += [("category", k, v) for k, v in ordered(self.categories)]
        rows += [("function", k, v) for k, v in ordered(self.functions)]
        return rows


def census(trees) -> Census:
    out = Census()
    for tree in trees:
        out.trees += 1
        for _, function, node, _ in walk(tree.root):
            if function is not None:
                out.functions[function] += 1
            if isinstance(node, Phrase):
                out.categories[node.category] += 1
            elif isinstance(node, Lexeme):
                out.pos[node.pos] += 1
            else:
                out.gaps += 1
    return out
