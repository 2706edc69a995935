import math
import random
from collections import Counter

import pytest

from cgeltk.align import align_tokens
from cgeltk.metrics import (EmptyDistribution, JointCounts, conditional_entropy, entropy,
                            lemma_of, pos_confusion, report_lexeme_tables)
from cgeltk.notation import parse

RNG_SEED = 11


def direct_entropy(counts):
    n = sum(counts)
    return sum(-(c / n) * math.log(c / n, 2) for c in counts if c)


def direct_conditional(table):
    """H(X|Y) as H(X,Y) - H(Y), summing the raw table."""
    cells = [c for row in table for c in row]
    cols = [sum(row[j] for row in table) for j in range(len(table[0]))]
    return direct_entropy(cells) - direct_entropy(cols)


def _joint(table):
    j = JointCounts()
    for x, row in enumerate(table):
        for y, c in enumerate(row):
            if c:
                j.add(f"x{x}", f"y{y}", c)
    return j


def _random_tables(n=50):
    rng = random.Random(RNG_SEED)
    for _ in range(n):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        table = [[rng.randint(0, 9) for _ in range(cols)] for _ in range(rows)]
        if not any(map(any, table)):
            table[0][0] = 1
        yield table


def test_entropy_examples():
    assert entropy({"a": 7}) == 0.0
    assert entropy(Counter("abcd")) == 2.0
    with pytest.raises(EmptyDistribution):
        entropy({})
    with pytest.raises(EmptyDistribution):
        entropy({"a": 0})


def test_entropy_against_direct_sum():
    rng = random.Random(RNG_SEED)
    for _ in range(50):
        counts = [rng.randint(0, 20) for _ in range(rng.randint(1, 8))]
        counts[0] += 1
        h = entropy({f"l{i}": c for i, c in enumerate(counts)})
        assert abs(h - direct_entropy(counts)) < 1e-9
        assert -1e-12 <= h <= math.log2(sum(1 for c in counts if c)) + 1e-12


def test_entropy_permutation_invariant():
    d = {"a": 3, "b": 5, "c": 1}
    assert entropy(d) == pytest.approx(entropy(dict(reversed(list(d.items())))), abs=1e-15)


def test_conditional_bounds_and_oracle():
    for table in _random_tables():
        j = _joint(table)
        h = conditional_entropy(j)
        hx = entropy(j.marginal_x())
        assert -1e-9 <= h <= hx + 1e-9
        assert abs(h - direct_conditional(table)) < 1e-9


def test_diagonal_is_zero():
    j = JointCounts()
    for tag, n in {"N": 4, "V": 3, "D": 9}.items():
        j.add(tag, tag, n)
    assert conditional_entropy(j) == 0.0


def test_product_joint_equals_marginal_entropy():
    px = {"N": 3, "V": 2, "D": 5}
    py = {"a": 1, "b": 4}
    j = JointCounts()
    for x, cx in px.items():
        for y, cy in py.items():
            j.add(x, y, cx * cy)
    assert abs(conditional_entropy(j) - direct_entropy(list(px.values()))) < 1e-9


def test_empty_joint_raises():
    with pytest.raises(EmptyDistribution):
        conditional_entropy(JointCounts())


def test_marginals_are_sums():
    for table in _random_tables(10):
        j = _joint(table)
        mx, my = j.marginal_x(), j.marginal_y()
        for x, row in enumerate(table):
            assert mx.get(f"x{x}", 0) == sum(row)
        assert sum(my.values()) == j.total == sum(map(sum, table))


def test_joint_addition():
    a, b = _joint([[1, 2]]), _joint([[0, 3]])
    assert (a + b).counts == Counter({("x0", "y0"): 1, ("x0", "y1"): 5})


def _confusion(mini_by_id, others, side):
    trees, sents, aligns = [], [], []
    for o in others:
        t = mini_by_id[o.id]
        trees.append(t)
        sents.append(o)
        aligns.append(align_tokens(t, o))
    return pos_confusion(trees, sents, aligns, side), aligns


def test_confusion_cells(mini_by_id, mini_ud, mini_ptb):
    ud, ud_al = _confusion(mini_by_id, mini_ud, "UD")
    ptb, ptb_al = _confusion(mini_by_id, mini_ptb, "PTB")
    assert ud.counts[("Sdr", "PRON")] >= 1
    assert ptb.counts[("Sdr", "WDT")] >= 1
    assert ud.counts[("D", "DET")] >= 4 and ptb.counts[("D", "DT")] >= 4
    assert ud.total == sum(len(a.pairs) for a in ud_al)
    assert ptb.total == sum(len(a.pairs) for a in ptb_al)


def test_confusion_empty():
    assert pos_confusion([], [], []).total == 0


def test_lexeme_tables(mini_trees):
    t = report_lexeme_tables(mini_trees, min_count=2)
    assert t.ambiguity_class("that") == ("D", "Sdr")
    assert t.function_words["Sdr"] == ["that", "to"]
    assert "the" in t.function_words["D"]


def test_lexeme_tables_unambiguous():
    doc = parse('(NP :Det (DP :Head (D :t "the")) :Head (Nom :Head (N :t "cat")))\n' * 6)
    t = report_lexeme_tables(doc.trees)
    assert t.ambiguous == {}
    assert t.function_words["D"] == ["the"]


def test_lemma_fallback_lowercases():
    doc = parse('(NP :Head (Nom :Head (N :t "Cats" :l "cat")))\n'
                '(NP :Head (Nom :Head (N :t "Dogs")))')
    t = report_lexeme_tables(doc.trees, min_count=1)
    assert t.function_words["N_pro"] == []
    assert [lemma_of(tr.node_at((0, 0))) for tr in doc.trees] == ["cat", "dogs"]
