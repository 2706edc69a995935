"""Label inventories and the grammatical function hierarchy.

Labels are plain strings spelled as in the textual notation (``N_pro``,
``V_aux``, ``Clause_rel``).  Nonce categories join base categories with
``+`` (``NP+PP``).
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Optional, Tuple

POS_TAGS: Tuple[str, ...] = (
    "N", "N_pro", "V", "V_aux", "P", "D", "Adj", "Adv", "Sdr", "Coordinator", "Int",
)

BASE_CATEGORIES: Tuple[str, ...] = (
    "NP", "Nom", "VP", "Clause", "Clause_rel", "PP", "DP", "AdjP", "AdvP", "IntP",
    "Coordination",
)

GAP_LABEL = "GAP"

# phrase category each part of speech must head (Sdr/Coordinator project nothing)
PROJECTIONS: Dict[str, str] = {
    "N": "Nom",
    "N_pro": "Nom",
    "V": "VP",
    "V_aux": "VP",
    "P": "PP",
    "D": "DP",
    "Adj": "AdjP",
    "Adv": "AdvP",
    "Int": "IntP",
}

NON_PROJECTING = frozenset({"Sdr", "Coordinator"})

# categories admissible as the Head daughter of each base category
HEAD_CATEGORIES: Dict[str, frozenset] = {
    "NP": frozenset({"Nom", "NP"}),
    "Nom": frozenset({"N", "N_pro", "Nom"}),
    "VP": frozenset({"V", "V_aux", "VP"}),
    "Clause": frozenset({"VP", "Clause", "Clause_rel"}),
    "Clause_rel": frozenset({"VP", "Clause", "Clause_rel"}),
    "PP": frozenset({"P", "PP"}),
    "DP": frozenset({"D", "DP"}),
    "AdjP": frozenset({"Adj", "AdjP"}),
    "AdvP": frozenset({"Adv", "AdvP"}),
    "IntP": frozenset({"Int", "IntP"}),
}

# head subtypes used in the source grammar but not admitted in trees
LEGACY_HEAD_FUNCTIONS = frozenset({"Nucleus", "Predicate", "Predicator"})


def split_category(category: str) -> Tuple[str, ...]:
    return tuple(category.split("+"))


def is_nonce(category: str) -> bool:
    return "+" in category


def is_known_category(category: str) -> bool:
    parts = split_category(category)
    if len(parts) == 1:
        return parts[0] in BASE_CATEGORIES
    return all(p in BASE_CATEGORIES for p in parts)


def is_headless_category(category: str) -> bool:
    """Coordination and nonce constituents carry no Head daughter."""
    return category == "Coordination" or is_nonce(category)


class UnknownFunction(KeyError):
    pass


class FunctionHierarchy:
    """Tree of grammatical functions rooted at ``Syntactic Functions``.

    Nodes are named by their edge label where one exists (``Subj``,
    ``Obj-dir``); purely taxonomic nodes keep descriptive names
    (``Dependent``, ``External``).  Long names such as ``Subject`` are
    accepted as aliases.
    """

    ROOT = "Syntactic Functions"

    def __init__(self, edges: Iterable[Tuple[str, str]],
                 aliases: Optional[Dict[str, str]] = None,
                 fused: Optional[Dict[str, Tuple[str, str]]] = None,
                 labels: Iterable[str] = ()):
        self._parent: Dict[str, Optional[str]] = {self.ROOT: None}
        self._children: Dict[str, List[str]] = {self.ROOT: []}
        for parent, child in edges:
            if parent not in self._parent:
                raise ValueError(f"parent {parent!r} declared after child {child!r}")
            if child in self._parent:
                raise ValueError(f"duplicate function node {child!r}")
            self._parent[child] = parent
            self._children[child] = []
            self._children[parent].append(child)
        self.aliases = dict(aliases or {})
        self.fused = dict(fused or {})
        self.labels = frozenset(labels)

    def __contains__(self, name: str) -> bool:
        return self.aliases.get(name, name) in self._parent

    def __iter__(self) -> Iterator[str]:
        return iter(self._parent)

    def resolve(self, name: str) -> str:
        node = self.aliases.get(name, name)
        if node not in self._parent:
            raise UnknownFunction(name)
        return node

    def parent(self, name: str) -> Optional[str]:
        return self._parent[self.resolve(name)]

    def children(self, name: str) -> Tuple[str, ...]:
        return tuple(self._children[self.resolve(name)])

    def path(self, name: str) -> Tuple[str, ...]:
        """Nodes from the root down to ``name``, inclusive."""
        node: Optional[str] = self.resolve(name)
        out = []
        while node is not None:
            out.append(node)
            node = self._parent[node]
        return tuple(reversed(out))

    def subsumes(self, ancestor: str, descendant: str) -> bool:
        return self.resolve(ancestor) in self.path(descendant)

    def components(self, function: str) -> Tuple[str, ...]:
        """Constituent functions of a fused label, or the label itself."""
        node = self.resolve(function)
        return self.fused.get(node, (node,))

    def is_head(self, function: str) -> bool:
        """True for Head and for every fused function containing Head."""
        if function not in self:
            return False
        return "Head" in self.components(function)

    def is_edge_label(self, function: str) -> bool:
        return function in self.labels


_EDGES = [
    ("Syntactic Functions", "Fused"),
    ("Fused", "Det-Head"),
    ("Fused", "Mod-Head"),
    ("Fused", "Head-Prenucleus"),
    ("Syntactic Functions", "Head"),
    ("Syntactic Functions", "Dependent"),
    ("Dependent", "Comp"),
    ("Comp", "Internal"),
    ("Internal", "PredComp"),
    ("Internal", "Extraposed"),
    ("Extraposed", "ExtraposedSubj"),
    ("Extraposed", "ExtraposedObj"),
    ("Internal", "DisplacedSubj"),
    ("Internal", "Obj"),
    ("Obj", "Obj-dir"),
    ("Obj", "Obj-ind"),
    ("Internal", "Particle"),
    ("Comp", "Comp-ind"),
    ("Comp", "External"),
    ("External", "Extranuclear"),
    ("Extranuclear", "Prenucleus"),
    ("Extranuclear", "Postnucleus"),
    ("External", "Subj"),
    ("Dependent", "Marker"),
    ("Dependent", "Det"),
    ("Dependent", "Coordinate"),
    ("Dependent", "Adjunct"),
    ("Adjunct", "Mod"),
    ("Adjunct", "Supplement"),
    ("Dependent", "Flat"),
]

_ALIASES = {
    "Determiner-Head": "Det-Head",
    "Modifier-Head": "Mod-Head",
    "Complement": "Comp",
    "Predicative Complement": "PredComp",
    "Extraposed Subject": "ExtraposedSubj",
    "Extraposed Object": "ExtraposedObj",
    "Displaced Subject": "DisplacedSubj",
    "Object": "Obj",
    "Direct": "Obj-dir",
    "Direct Object": "Obj-dir",
    "Indirect Object": "Obj-ind",
    "Indirect Complement": "Comp-ind",
    "Subject": "Subj",
    "Determiner": "Det",
    "Modifier": "Mod",
}

_FUSED = {
    "Det-Head": ("Det", "Head"),
    "Mod-Head": ("Mod", "Head"),
    "Head-Prenucleus": ("Head", "Prenucleus"),
}

# functions that may label an edge in a tree (taxonomic nodes excluded)
FUNCTION_LABELS: Tuple[str, ...] = (
    "Head", "Det-Head", "Mod-Head", "Head-Prenucleus",
    "Comp", "PredComp", "ExtraposedSubj", "ExtraposedObj", "DisplacedSubj",
    "Obj", "Obj-dir", "Obj-ind", "Particle", "Comp-ind",
    "Prenucleus", "Postnucleus", "Subj",
    "Marker", "Det", "Coordinate", "Mod", "Supplement", "Flat",
)

FUNCTIONS = FunctionHierarchy(_EDGES, _ALIASES, _FUSED, FUNCTION_LABELS)


def subsumes(hierarchy: FunctionHierarchy, ancestor: str, descendant: str) -> bool:
    return hierarchy.subsumes(ancestor, descendant)


def is_head_function(function: str) -> bool:
    """Head-like edge labels, counting legacy head subtypes (flagged separately)."""
    return function in LEGACY_HEAD_FUNCTIONS or FUNCTIONS.is_head(function)
