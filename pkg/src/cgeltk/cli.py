"""Command line front end: ``cgeltk <subcommand> ...``.

Exit status: 0 success, 1 validation failures (or round-trip/heads
failures), 2 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import reports
from .align import align_tokens
from .compare import PairingError, compare_corpus, pair_sentences
from .heads import HeadError, extract_heads
from .interop.conllu import ConlluError, read_conllu, write_conllu
from .interop.ptb import PtbError, ptb_tokens, read_ptb
from .metrics import EmptyDistribution, entropy, report_lexeme_tables
from .model import census, words
from .notation import ParseError, parse, serialize
from .validate import ERROR, PROFILES, WARNING, validate_corpus


class CliError(Exception):
    """Usage or I/O problem; reported and mapped to exit status 2."""


# --- diagnostics -------------------------------------------------------------

def _use_color(stream) -> bool:
    mode = os.environ.get("CGEL_TOOLKIT_COLOR", "auto").lower()
    if mode in ("1", "always", "yes", "true"):
        return True
    if mode in ("0", "never", "no", "false"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


_COLORS = {"error": "31", "warning": "33", "note": "36"}


def diag(level: str, message: str) -> None:
    prefix = f"{level}:"
    if _use_color(sys.stderr):
        prefix = f"\033[{_COLORS.get(level, '0')}m{prefix}\033[0m"
    print(f"{prefix} {message}", file=sys.stderr)


# --- input -------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise CliError(f"{path} is not UTF-8: {exc}") from None


def load_cgel(paths: Sequence[str], compat: bool = False):
    trees = []
    for path in paths or ["-"]:
        try:
            doc = parse(_read(path), strict=not compat, compat=compat)
        except ParseError as exc:
            raise CliError(f"{path}:{exc}") from None
        for d in doc.diagnostics:
            diag("warning", f"{path}:{d}")
        trees.extend(doc.trees)
    return trees


def load_conllu(paths):
    out = []
    for path in paths or []:
        try:
            out.extend(read_conllu(_read(path)))
        except ConlluError as exc:
            raise CliError(f"{path}: {exc}") from None
    return out


def load_ptb(paths):
    out = []
    for path in paths or []:
        try:
            out.extend(read_ptb(_read(path)))
        except PtbError as exc:
            raise CliError(f"{path}:{exc}") from None
    return out


# --- output ------------------------------------------------------------------

def _emit(args, name: str, text: str) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _figures_enabled(args) -> bool:
    return bool(args.out) and not args.no_figures


# --- subcommands -------------------------------------------------------------

def cmd_validate(args) -> int:
    trees = load_cgel(args.files, args.compat)
    try:
        report = validate_corpus(trees, args.profile, args.min_severity)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.format == "json":
        _emit(args, "validation.json", report.to_json())
    else:
        _emit(args, "validation.tsv", report.to_tsv())
    n_err = len(report.errors)
    n_warn = len(report) - n_err
    level = "error" if n_err else "note"
    diag(level, f"{len(trees)} trees, {n_err} errors, {n_warn} warnings")
    return 1 if n_err else 0


def _tree_groups(trees):
    ids = [t.meta("orig_sent_id") or t.id for t in trees]
    return len(set(ids)) if any(t.meta("orig_sent_id") for t in trees) else len(trees)


def cmd_stats(args) -> int:
    trees = load_cgel(args.files, args.compat)
    c = census(trees)
    try:
        h = round(entropy(c.pos), 2)
    except EmptyDistribution:
        h = None
        diag("note", "no lexemes: POS entropy undefined")
    summary = {
        "trees": c.trees,
        "source_sentences": _tree_groups(trees),
        "tokens": c.tokens,
        "words": sum(len(words(t)) for t in trees),
        "gaps": c.gaps,
        "H_cgel_pos": h,
    }
    tables = report_lexeme_tables(trees, args.min_lemma_count)
    diff = reports.census_diff(c) if args.reference else None
    if args.format == "json":
        payload = {"summary": summary, "census": reports.census_json(c),
                   "ambiguous_lemmata": {"{" + ", ".join(k) + "}": v
                                         for k, v in tables.ambiguous.items()},
                   "function_words": tables.function_words}
        if diff is not None:
            payload["reference_diff"] = [
                {"section": s, "label": l, "observed": o, "reference": r} for s, l, o, r in diff]
        _emit(args, "stats.json", reports.to_json(payload))
    else:
        if args.out:
            _emit(args, "stats.tsv", reports.summary_tsv(summary))
            _emit(args, "census.tsv", reports.census_tsv(c))
            _emit(args, "lexemes.tsv", reports.lexeme_tables_tsv(tables))
            if diff is not None:
                _emit(args, "census_diff.tsv", reports.census_diff_tsv(diff))
        else:
            text = reports.summary_tsv(summary) + "\n" + reports.census_tsv(c)
            if diff is not None:
                text += "\n" + reports.census_diff_tsv(diff)
            _emit(args, "", text)
    if _figures_enabled(args) and c.trees:
        from .plotting import plot_census
        plot_census(c, Path(args.out) / "census.png")
    return 0


def _paired(args):
    trees = load_cgel(args.files, args.compat)
    ud = load_conllu(args.conllu)
    ptb = load_ptb(args.ptb)
    if not ud and not ptb:
        raise CliError("nothing to compare against: give --conllu and/or --ptb")
    try:
        pairs, unpaired = pair_sentences(trees, ud, ptb, args.pair_by)
    except PairingError as exc:
        raise CliError(f"pairing failed: {exc}") from None
    if not pairs:
        raise CliError("pairing failed: no tree has a partner" +
                       (": " + ", ".join(unpaired) if unpaired else ""))
    if unpaired:
        diag("note", f"{len(unpaired)} unpaired: {', '.join(unpaired)}")
    return trees, pairs, unpaired


def cmd_compare(args) -> int:
    trees, pairs, unpaired = _paired(args)
    result = compare_corpus(trees, pairs, args.case_fallback, not args.no_root_agreement,
                            unpaired)
    for msg in result.head_errors:
        diag("warning", f"head extraction: {msg}")
    summary = result.summary()
    if args.format == "json":
        payload = {
            "summary": summary,
            "unpaired": result.unpaired,
            "confusion_ud": _joint_json(result.joint_ud),
            "confusion_ptb": _joint_json(result.joint_ptb),
        }
        _emit(args, "compare.json", reports.to_json(payload))
    else:
        if args.out:
            _emit(args, "compare.tsv", reports.summary_tsv(summary))
            _emit(args, "confusion_ud.tsv", result.joint_ud.to_tsv("CGEL\\UD"))
            _emit(args, "confusion_ptb.tsv", result.joint_ptb.to_tsv("CGEL\\PTB"))
        else:
            _emit(args, "", reports.summary_tsv(summary))
    if _figures_enabled(args):
        from .plotting import plot_confusion
        for side, joint in (("ud", result.joint_ud), ("ptb", result.joint_ptb)):
            if joint.total:
                plot_confusion(joint, Path(args.out) / f"confusion_{side}.png",
                               y_name=f"{side.upper()} tag")
    return 0


def _joint_json(joint):
    xs, ys, rows = joint.matrix()
    return {"rows": xs, "columns": ys, "counts": rows}


def cmd_align(args) -> int:
    _, pairs, _ = _paired(args)
    lines = [reports.ALIGN_HEADER]
    records = []
    for pair in pairs:
        sid = pair.tree.id or "-"
        for side, other in (("ud", pair.ud), ("ptb", pair.ptb)):
            if other is None:
                continue
            forms = other.forms if side == "ud" else [l.form for l in ptb_tokens(other)[0]]
            al = align_tokens(pair.tree, forms, args.case_fallback)
            lines += reports.alignment_rows(sid, pair.tree, forms, al, side)
            records.append({"sent_id": sid, "side": side,
                            "pairs": [[c + 1, o + 1] for c, o in al.pairs],
                            "unmatched_cgel": [c + 1 for c in al.unmatched_cgel],
                            "unmatched_other": [o + 1 for o in al.unmatched_other]})
    if args.format == "json":
        _emit(args, "alignment.json", reports.to_json(records))
    else:
        _emit(args, "alignment.tsv", "\n".join(lines) + "\n")
    return 0


def cmd_heads(args) -> int:
    trees = load_cgel(args.files, args.compat)
    graphs, failed = [], 0
    for i, tree in enumerate(trees):
        try:
            graphs.append(extract_heads(tree))
        except HeadError as exc:
            failed += 1
            diag("error", f"{tree.id or '#%d' % (i + 1)}: {exc}")
    if args.format == "json":
        payload = [{"sent_id": g.sent_id,
                    "tokens": [{"index": i + 1, "form": f, "pos": p, "head": h, "deprel": d}
                               for i, (f, p, h, d) in
                               enumerate(zip(g.forms, g.pos, g.heads, g.deprels))]}
                   for g in graphs]
        _emit(args, "heads.json", reports.to_json(payload))
    else:
        _emit(args, "heads.conllu", write_conllu([g.to_conllu() for g in graphs]))
    return 1 if failed else 0


def cmd_roundtrip(args) -> int:
    trees = load_cgel(args.files, args.compat)
    once = serialize(trees)
    again = parse(once)
    ok = again.trees == trees and serialize(again) == once
    _emit(args, "roundtrip.cgel", once)
    if not ok:
        diag("error", "serialization is not a fixpoint")
    return 0 if ok else 1


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--out", metavar="DIR", help="write reports (and figures) into DIR")
    common.add_argument("--compat", action="store_true",
                        help="tolerate label spelling variants from other corpus releases")
    common.add_argument("--no-figures", action="store_true",
                        help="skip PNG figures when writing to --out")

    parallel = argparse.ArgumentParser(add_help=False)
    parallel.add_argument("--conllu", action="append", default=[], metavar="FILE")
    parallel.add_argument("--ptb", action="append", default=[], metavar="FILE")
    parallel.add_argument("--pair-by", choices=("auto", "sent_id", "order"), default="auto")
    parallel.add_argument("--case-fallback", action="store_true",
                          help="retry unmatched tokens case-insensitively")

    p = argparse.ArgumentParser(prog="cgeltk",
                                description="Validate, count and compare CGEL treebanks.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="check structural rules")
    v.add_argument("files", nargs="*")
    v.add_argument("--profile", default="full",
                   help=f"one of {', '.join(PROFILES)} or a comma-separated rule list")
    v.add_argument("--min-severity", choices=(WARNING, ERROR), default=WARNING)
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("stats", parents=[common], help="census and POS entropy")
    s.add_argument("files", nargs="*")
    s.add_argument("--reference", action="store_true",
                   help="diff the census against the published release counts")
    s.add_argument("--min-lemma-count", type=int, default=5)
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("compare", parents=[common, parallel],
                       help="alignment, entropy, head agreement and gap statistics")
    c.add_argument("files", nargs="*")
    c.add_argument("--no-root-agreement", action="store_true",
                   help="do not count root/root pairs as head agreement")
    c.set_defaults(func=cmd_compare)

    a = sub.add_parser("align", parents=[common, parallel], help="dump token alignments")
    a.add_argument("files", nargs="*")
    a.set_defaults(func=cmd_align)

    h = sub.add_parser("heads", parents=[common], help="CGEL-derived dependencies")
    h.add_argument("files", nargs="*")
    h.set_defaults(func=cmd_heads)

    r = sub.add_parser("roundtrip", parents=[common], help="canonical re-serialization")
    r.add_argument("files", nargs="*")
    r.set_defaults(func=cmd_roundtrip)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        diag("error", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
