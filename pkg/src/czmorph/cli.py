"""Command-line front end.

    czmorph COMMAND [options]

Commands: compile, generate, analyze, expand, trace, conflicts,
coverage.  Every command accepts --alphabet/--rules/--lexicon/--index
paths (environment variables CZMORPH_ALPHABET, CZMORPH_RULES,
CZMORPH_LEXICON, CZMORPH_INDEX supply defaults) and falls back to the
bundled Czech assets.  --json prints the same data machine readably;
identical inputs give byte-identical output.

Exit codes: 0 ok, 1 usage error, 2 unreadable input, 3 content problem
(parse error, stale index, unknown lemma, rule conflicts, validation
failures).
"""

import argparse
import json
import os
import sys

from . import czech
from .alphabet import parse_alphabet
from .analyzer import FormIndex, build_index, coverage, text_hash, tokenize_words
from .engine import RuleSet
from .errors import CzmorphError
from .lexicon import parse_lexicon, validate_lexicon


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--alphabet", metavar="PATH")
    common.add_argument("--rules", metavar="PATH")
    common.add_argument("--lexicon", metavar="PATH")
    common.add_argument("--index", metavar="PATH")
    common.add_argument("--json", action="store_true")

    parser = _Parser(prog="czmorph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("compile", parents=[common],
                       help="compile rules, validate the lexicon, write the index")
    p = sub.add_parser("generate", parents=[common],
                       help="print the surface forms of LEMMA for TAG")
    p.add_argument("lemma")
    p.add_argument("tag")
    p = sub.add_parser("analyze", parents=[common],
                       help="print analyses of forms (arguments or stdin)")
    p.add_argument("forms", nargs="*", metavar="FORM")
    p = sub.add_parser("expand", parents=[common],
                       help="print every (tag, lexical, surface) of LEMMA")
    p.add_argument("lemma")
    p = sub.add_parser("trace", parents=[common],
                       help="explain which rule accepts or rejects each candidate")
    p.add_argument("lexical")
    p.add_argument("surface", nargs="?")
    sub.add_parser("conflicts", parents=[common],
                   help="report pairs of rules that force different surfaces")
    p = sub.add_parser("coverage", parents=[common],
                       help="coverage of the analyzer over a corpus file ('-' = stdin)")
    p.add_argument("corpus")
    return parser


def _path(args, name):
    return getattr(args, name) or os.environ.get(f"CZMORPH_{name.upper()}")


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _alphabet_text(args):
    path = _path(args, "alphabet")
    return _read(path) if path else czech.builtin_alphabet_text()


def _rules_text(args):
    path = _path(args, "rules")
    return _read(path) if path else czech.builtin_rules_text()


def _lexicon_text(args):
    path = _path(args, "lexicon")
    return _read(path) if path else czech.builtin_lexicon_text()


def _ruleset(args):
    return RuleSet.from_text(parse_alphabet(_alphabet_text(args)),
                             _rules_text(args))


def _load_index(args):
    """The form index: loaded from --index if given, else built."""
    path = _path(args, "index")
    if path:
        index = FormIndex.load(path)
        if index.rules_hash and index.rules_hash != text_hash(_rules_text(args)):
            raise CzmorphError(f"{path}: index is stale (rules changed)")
        if index.lexicon_hash \
                and index.lexicon_hash != text_hash(_lexicon_text(args)):
            raise CzmorphError(f"{path}: index is stale (lexicon changed)")
        return index
    rules_text = _rules_text(args)
    lexicon_text = _lexicon_text(args)
    rules = RuleSet.from_text(parse_alphabet(_alphabet_text(args)), rules_text)
    return build_index(rules, parse_lexicon(lexicon_text),
                       rules_text, lexicon_text)


def _emit(args, payload, human_lines):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


def _cmd_compile(args):
    alphabet = parse_alphabet(_alphabet_text(args))
    rules_text = _rules_text(args)
    rules = RuleSet.from_text(alphabet, rules_text)
    lexicon_text = _lexicon_text(args)
    lexicon = parse_lexicon(lexicon_text)
    report = validate_lexicon(lexicon, rules)
    index = build_index(rules, lexicon, rules_text, lexicon_text)
    index_path = _path(args, "index")
    if index_path:
        index.save(index_path)

    payload = {
        "pairs": len(alphabet.pairs),
        "markers": len(alphabet.markers),
        "rules": len(rules.rules),
        "warnings": list(rules.warnings),
        "lexicon": {
            "entries": len(lexicon.entries),
            "forms": report.forms,
            "exceptions": report.exceptions,
            "problems": [
                {"lemma": p.lemma, "paradigm": p.paradigm, "tag": p.tag,
                 "lexical": p.lexical, "surfaces": list(p.surfaces),
                 "error": p.error}
                for p in report.problems
            ],
        },
        "index": {"forms": len(index), "path": index_path},
    }
    lines = [
        f"alphabet: {payload['pairs']} pairs, {payload['markers']} markers",
        f"rules: {payload['rules']} compiled",
    ]
    lines += [f"warning: {w}" for w in rules.warnings]
    lines.append(f"lexicon: {len(lexicon.entries)} entries, "
                 f"{report.forms} forms, {report.exceptions} exceptions")
    if report.ok:
        lines.append("validation: ok")
    else:
        lines.append(f"validation: {len(report.problems)} problems")
        for p in report.problems:
            what = p.error if p.error else "{" + ", ".join(p.surfaces) + "}"
            lines.append(f"  {p.lemma} {p.tag} {p.lexical} -> {what}")
    if index_path:
        lines.append(f"index: {len(index)} forms written to {index_path}")
    _emit(args, payload, lines)
    return 0 if report.ok else 3


def _cmd_generate(args):
    index = _load_index(args)
    surfaces = index.generate(args.lemma, args.tag)
    payload = {"lemma": args.lemma, "tag": args.tag, "surfaces": surfaces}
    _emit(args, payload, surfaces)
    return 0


def _cmd_analyze(args):
    index = _load_index(args)
    forms = list(args.forms) if args.forms else sys.stdin.read().split()
    results = []
    lines = []
    for form in forms:
        for a in index.analyze(form):
            results.append({"form": form, "lemma": a.lemma,
                            "paradigm": a.paradigm, "tag": a.tag,
                            "via_exception": a.via_exception})
            note = "\texception" if a.via_exception else ""
            lines.append(f"{form}\t{a.lemma}\t{a.paradigm}\t{a.tag}{note}")
    _emit(args, {"analyses": results}, lines)
    return 0


def _cmd_expand(args):
    rules = _ruleset(args)
    lexicon = parse_lexicon(_lexicon_text(args))
    entries = lexicon.by_lemma.get(args.lemma)
    if not entries:
        raise CzmorphError(f"unknown lemma {args.lemma!r}")
    out_entries = []
    lines = []
    for entry in entries:
        forms = []
        for form in lexicon.expand(entry):
            if form.exception is not None:
                surfaces = [form.exception]
            else:
                surfaces = sorted(rules.generate_from_text(form.lexical))
            forms.append({"tag": form.tag, "lexical": form.lexical,
                          "surfaces": surfaces,
                          "exception": form.exception is not None})
            note = " (exception)" if form.exception is not None else ""
            lines.append(f"{entry.paradigm}\t{form.tag}\t{form.lexical}\t"
                         f"{', '.join(surfaces)}{note}")
        out_entries.append({"paradigm": entry.paradigm, "forms": forms})
    _emit(args, {"lemma": args.lemma, "entries": out_entries}, lines)
    return 0


def _cmd_trace(args):
    rules = _ruleset(args)
    entries = rules.trace_text(args.lexical, args.surface)
    candidates = []
    lines = []
    for entry in entries:
        candidates.append({
            "surface": entry.surface,
            "accepted": entry.accepted,
            "pairs": entry.pair_text(),
            "fail_rule": entry.fail_rule,
            "fail_pos": entry.fail_pos,
        })
        if entry.accepted:
            lines.append(f"accepted\t{entry.surface}\t{entry.pair_text()}")
        else:
            lines.append(f"rejected\t{entry.surface}\t{entry.fail_rule}"
                         f"\tat {entry.fail_pos}")
    _emit(args, {"lexical": args.lexical, "candidates": candidates}, lines)
    return 0


def _cmd_conflicts(args):
    rules = _ruleset(args)
    found = rules.conflicts()
    payload = {"conflicts": [
        {"rule_a": c.rule_a, "rule_b": c.rule_b, "lexical": c.lexical,
         "witness": c.witness()}
        for c in found
    ]}
    lines = [f"{c.rule_a} / {c.rule_b}: {c.lexical} in {c.witness()}"
             for c in found]
    if not found and not args.json:
        lines = ["no conflicts"]
    _emit(args, payload, lines)
    return 3 if found else 0


def _cmd_coverage(args):
    index = _load_index(args)
    text = sys.stdin.read() if args.corpus == "-" else _read(args.corpus)
    record = coverage(index, tokenize_words(text))
    payload = dict(record)
    payload["top_unknown"] = [[form, count]
                              for form, count in record["top_unknown"]]
    lines = [
        f"tokens: {record['tokens']}",
        f"analyzed: {record['analyzed']}",
        f"ratio: {record['ratio']:.6f}",
        f"types: {record['types']}",
        f"types analyzed: {record['types_analyzed']}",
        f"type ratio: {record['type_ratio']:.6f}",
    ]
    if record["empty"]:
        lines.append("empty corpus: ratio undefined, reported as 0")
    for form, count in record["top_unknown"]:
        lines.append(f"unknown: {form} {count}")
    _emit(args, payload, lines)
    return 0


_COMMANDS = {
    "compile": _cmd_compile,
    "generate": _cmd_generate,
    "analyze": _cmd_analyze,
    "expand": _cmd_expand,
    "trace": _cmd_trace,
    "conflicts": _cmd_conflicts,
    "coverage": _cmd_coverage,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"czmorph: {exc}", file=sys.stderr)
        return 1
    if not args.command:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"czmorph: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        name = getattr(exc, "filename", None) or "i/o"
        print(f"czmorph: {name}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    except CzmorphError as exc:
        print(f"czmorph: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
