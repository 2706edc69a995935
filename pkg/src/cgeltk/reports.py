"""TSV and JSON renderings of census, comparison and alignment results."""

from __future__ import annotations

import json
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .align import TokenAlignment
from .model import GAP_KEY, Census, lexemes

# label counts of the released treebank at the time its counts were published
REFERENCE_CENSUS: Dict[str, Dict[str, int]] = {
    "pos": {
        "N": 691, "V": 361, "P": 327, "D": 303, "N_pro": 265, "V_aux": 224, "Adj": 173,
        "Adv": 133, "Sdr": 104, "Coordinator": 101, "Int": 4, GAP_KEY: 96,
    },
    "category": {
        "Nom": 1113, "NP": 899, "VP": 807, "Clause": 619, "PP": 343, "DP": 302,
        "AdjP": 195, "AdvP": 134, "Coordination": 103, "Clause_rel": 86, "NP+PP": 6,
        "IntP": 4, "NP+AdvP": 3, "NP+Clause": 2,
    },
    "function": {
        "Head": 4444, "Mod": 627, "Comp": 409, "Obj": 403, "Det": 299, "Subj": 295,
        "Coordinate": 209, "Marker": 205, "PredComp": 88, "Supplement": 68, "Flat": 53,
        "Det-Head": 52, "Prenucleus": 43, "Postnucleus": 10,
    },
}

# per-subset corpus statistics reported alongside the release
REFERENCE_DATASETS = {
    "EWT": {"trees": 99, "tokens": 2102, "ud_matched_pct": 86.6, "H_cgel_pos": 2.85,
            "H_cgel_pos_given_ud": 0.38, "H_cgel_pos_given_ptb": 0.34},
    "Ling": {"trees": 65, "tokens": 908, "ud_matched_pct": 86.8, "H_cgel_pos": 2.87,
             "H_cgel_pos_given_ud": 0.46, "H_cgel_pos_given_ptb": 0.40},
    "Combined": {"trees": 164, "tokens": 3010, "ud_matched_pct": 86.6, "H_cgel_pos": 2.87,
                 "H_cgel_pos_given_ud": 0.42, "H_cgel_pos_given_ptb": 0.38},
}


def _cell(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, float):
        return f"{v:.2f}" if abs(v) < 10 else f"{v:.1f}"
    if isinstance(v, (list, tuple)):
        return ", ".join(map(str, v))
    return str(v)


def summary_tsv(summary: Mapping[str, object]) -> str:
    return "".join(f"{k}\t{_cell(v)}\n" for k, v in summary.items())


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def census_tsv(c: Census) -> str:
    lines = ["section\tlabel\tcount"]
    lines += [f"{s}\t{label}\t{n}" for s, label, n in c.as_rows()]
    return "\n".join(lines) + "\n"


def census_json(c: Census) -> dict:
    return {
        "trees": c.trees,
        "tokens": c.tokens,
        "pos": dict(sorted(c.pos.items(), key=lambda kv: (-kv[1], kv[0]))),
        "gaps": c.gaps,
        "categories": dict(sorted(c.categories.items(), key=lambda kv: (-kv[1], kv[0]))),
        "functions": dict(sorted(c.functions.items(), key=lambda kv: (-kv[1], kv[0]))),
    }


def census_diff(c: Census, reference=REFERENCE_CENSUS) -> List[Tuple[str, str, int, int]]:
    """``(section, label, observed, reference)`` for every mismatching label."""
    observed = {
        "pos": dict(c.pos, **{GAP_KEY: c.gaps}),
        "category": dict(c.categories),
        "function": dict(c.functions),
    }
    out = []
    for section, ref in reference.items():
        for label, expected in ref.items():
            got = observed[section].get(label, 0)
            if got != expected:
                out.append((section, label, got, expected))
    return out


def census_diff_tsv(rows) -> str:
    lines = ["section\tlabel\tobserved\treference\tdelta"]
    lines += [f"{s}\t{l}\t{o}\t{r}\t{o - r:+d}" for s, l, o, r in rows]
    return "\n".join(lines) + "\n"


ALIGN_HEADER = "sent_id\tside\tindex\tform\tpartner_index"


def alignment_rows(sent_id: str, tree, other_forms: List[str], align: TokenAlignment,
                   side: str) -> List[str]:
    """Rows of the alignment dump: one per token on each side, 1-based indices."""
    c2o = align.cgel_to_other()
    o2c = align.other_to_cgel()
    rows = []
    for i, lx in enumerate(lexemes(tree)):
        partner = ",".join(str(o + 1) for o in c2o.get(i, [])) or "-"
        rows.append(f"{sent_id}\tcgel\t{i + 1}\t{lx.form}\t{partner}")
    for j, form in enumerate(other_forms):
        partner = str(o2c[j] + 1) if j in o2c else "-"
        rows.append(f"{sent_id}\t{side}\t{j + 1}\t{form}\t{partner}")
    return rows


def lexeme_tables_tsv(tables) -> str:
    lines = ["table\tclass\tlemmata"]
    for table, cls, lemmas in tables.rows():
        lines.append(f"{table}\t{cls}\t{', '.join(lemmas)}")
    return "\n".join(lines) + "\n"
