from collections import Counter

import pytest

from cgeltk.labels import (FUNCTION_LABELS, FUNCTIONS, POS_TAGS, UnknownFunction, is_nonce,
                           split_category, subsumes)
from cgeltk.model import Gap, Lexeme, Phrase, census, gap_positions, terminals, walk
from cgeltk.notation import parse, parse_tree

from conftest import WH_CLAUSE

# function taxonomy written out as nested dicts; the oracle walks it directly
TAXONOMY = {
    "Head": {},
    "Dependent": {
        "Comp": {
            "Internal": {
                "PredComp": {},
                "Extraposed": {"ExtraposedSubj": {}, "ExtraposedObj": {}},
                "DisplacedSubj": {},
                "Obj": {"Obj-dir": {}, "Obj-ind": {}},
                "Particle": {},
            },
            "Comp-ind": {},
            "External": {
                "Extranuclear": {"Prenucleus": {}, "Postnucleus": {}},
                "Subj": {},
            },
        },
        "Marker": {},
        "Det": {},
        "Coordinate": {},
        "Adjunct": {"Mod": {}, "Supplement": {}},
        "Flat": {},
    },
    "Fused": {"Det-Head": {}, "Mod-Head": {}, "Head-Prenucleus": {}},
}


def _paths(tree, prefix=("Syntactic Functions",)):
    for name, sub in tree.items():
        yield name, prefix + (name,)
        yield from _paths(sub, prefix + (name,))


ORACLE_PATHS = dict(_paths(TAXONOMY))


def test_pos_inventory_has_eleven_tags():
    assert len(POS_TAGS) == 11
    assert "PUNCT" not in POS_TAGS


@pytest.mark.parametrize("anc,desc,expected", [
    ("Complement", "Subject", True),
    ("Mod", "Mod", True),
    ("Marker", "Subject", False),
])
def test_subsumes_examples(anc, desc, expected):
    assert subsumes(FUNCTIONS, anc, desc) is expected


def test_subsumes_matches_path_enumeration():
    names = list(ORACLE_PATHS)
    for a in names:
        for d in names:
            assert FUNCTIONS.subsumes(a, d) == (a in ORACLE_PATHS[d]), (a, d)


def test_hierarchy_shape():
    assert set(FUNCTIONS.children("Syntactic Functions")) == {"Head", "Dependent", "Fused"}
    for name, path in ORACLE_PATHS.items():
        assert FUNCTIONS.path(name) == path


def test_every_edge_label_in_hierarchy():
    for f in FUNCTION_LABELS:
        assert FUNCTIONS.subsumes("Syntactic Functions", f)


def test_fused_components():
    assert FUNCTIONS.components("Det-Head") == ("Det", "Head")
    assert FUNCTIONS.components("Head-Prenucleus") == ("Head", "Prenucleus")
    assert FUNCTIONS.is_head("Mod-Head")
    assert not FUNCTIONS.is_head("Mod")


def test_unknown_function_raises():
    with pytest.raises(UnknownFunction):
        FUNCTIONS.subsumes("Head", "Nucleosis")


def test_nonce_categories():
    assert split_category("NP+PP") == ("NP", "PP")
    assert is_nonce("NP+AdvP")
    assert not is_nonce("NP")


def test_wh_clause_terminals():
    tree = parse_tree(WH_CLAUSE)
    ts = terminals(tree)
    described = [(t.form, t.pos) if isinstance(t, Lexeme) else "GAP" for t in ts]
    assert described == [("which", "D"), ("Liz", "N"), ("bought", "V"), "GAP"]
    assert gap_positions(tree) == [3]


def test_single_lexeme_terminals():
    tree = parse_tree('(IntP :Head (Int :t "Oh"))')
    assert len(terminals(tree)) == 1


def _count_labels(tree):
    """Census by explicit traversal, independent of Census bookkeeping."""
    pos, cats, funcs, n_gaps = Counter(), Counter(), Counter(), 0
    for _, function, node, _ in walk(tree.root):
        if function:
            funcs[function] += 1
        if isinstance(node, Phrase):
            cats[node.category] += 1
        elif isinstance(node, Lexeme):
            pos[node.pos] += 1
        else:
            n_gaps += 1
    return pos, cats, funcs, n_gaps


def test_wh_clause_census():
    c = census([parse_tree(WH_CLAUSE)])
    assert dict(c.pos) == {"D": 1, "N": 1, "V": 1}
    assert c.gaps == 1
    assert dict(c.categories) == {"Clause": 2, "NP": 2, "Nom": 1, "VP": 1, "DP": 1}
    assert dict(c.functions) == {"Prenucleus": 1, "Det-Head": 1, "Head": 6, "Subj": 1, "Obj": 1}


def test_census_matches_traversal(mini_trees):
    c = census(mini_trees)
    pos, cats, funcs, n_gaps = Counter(), Counter(), Counter(), 0
    for t in mini_trees:
        p, k, f, g = _count_labels(t)
        pos += p
        cats += k
        funcs += f
        n_gaps += g
    assert c.pos == pos and c.categories == cats and c.functions == funcs and c.gaps == n_gaps


def test_census_empty():
    c = census([])
    assert c.trees == 0 and c.tokens == 0 and c.gaps == 0
    assert not c.pos and not c.categories and not c.functions


def test_census_additive(mini_trees):
    for k in range(len(mini_trees) + 1):
        assert census(mini_trees[:k]) + census(mini_trees[k:]) == census(mini_trees)


def test_terminal_order_follows_children(mini_trees):
    for tree in mini_trees:
        leaves = [p for p, _, n, _ in walk(tree.root) if not isinstance(n, Phrase)]
        assert leaves == sorted(leaves)
        assert [tree.node_at(p) for p in leaves] == terminals(tree)


def test_phrase_requires_children():
    with pytest.raises(ValueError):
        Phrase("NP", ())


def test_multiword_lexeme_words():
    assert Lexeme("N", "Pierre Vinken").words == ["Pierre", "Vinken"]


def test_gap_has_no_form():
    assert not hasattr(Gap(), "form")


def test_trees_are_immutable(mini_trees):
    with pytest.raises(Exception):
        mini_trees[0].id = "other"
