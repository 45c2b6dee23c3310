"""Operator command line: serve the wiki, batch-check corpora, statistics,
import/export.

Exit codes: 0 success, 1 content errors (parse/annotation failures),
2 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import grammar, logic
from .grammar import GrammarError, LexicalError, tokenize
from .lexicon import Lexicon, LexiconError, WordCategory
from .logic import SentencePattern
from .wiki import (
    AnnotationForUnknownSentence, FormatError, StatsReport,
    UnknownWordInSentence, Wiki, WikiError,
)

EXIT_OK = 0
EXIT_CONTENT = 1
EXIT_USAGE = 2


def _load_wiki(path: str | None, persist: bool = False) -> Wiki:
    if path is None or not Path(path).exists():
        return Wiki(persist_path=path if persist else None)
    text = Path(path).read_text(encoding="utf-8")
    return Wiki.from_text(text, persist_path=path if persist else None)


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    try:
        wiki = _load_wiki(args.wiki, persist=args.wiki is not None)
    except WikiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    host, _, port = args.listen.rpartition(":")
    app = create_app(wiki, ui_dir=args.ui)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return EXIT_OK


def cmd_check(args) -> int:
    """Validate a corpus file line by line; report pattern, axiom and the
    blue/red flag for every sentence."""
    try:
        text = Path(args.corpus).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lexicon = Lexicon()
    failures = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "word":
            code, _, surface = rest.partition(" ")
            try:
                lexicon.add_word(WordCategory.from_code(code), surface)
            except (ValueError, LexiconError) as exc:
                print(f"line {line_no}: BadWordLine: {exc}")
                failures += 1
        elif head == "sentence":
            report = _check_sentence(rest, lexicon)
            print(f"line {line_no}: {report}")
            if not report.startswith("OK"):
                failures += 1
        elif head == "note":
            surface = rest.partition(" ")[0]
            if lexicon.lookup(surface) is None:
                print(f"line {line_no}: NoteForUnknownWord: {surface}")
                failures += 1
        else:
            print(f"line {line_no}: UnknownLineKind: {head}")
            failures += 1
    return EXIT_CONTENT if failures else EXIT_OK


_ERROR_LABELS = {
    "SentenceSyntaxError": "SyntaxError",
    "UnboundVariableError": "UnboundVariable",
    "LexicalError": "LexicalError",
}


def _check_sentence(text: str, lexicon: Lexicon) -> str:
    try:
        tokens = tokenize(text, lexicon)
        ast = grammar.parse(tokens, lexicon=lexicon)
    except LexicalError as exc:
        return f"LexicalError at token {exc.position}: {exc.text!r} not in lexicon"
    except GrammarError as exc:
        label = _ERROR_LABELS.get(type(exc).__name__, type(exc).__name__)
        position = getattr(exc, "position", None)
        where = f" at token {position}" if position is not None else ""
        return f"{label}{where}: {exc}"
    axiom = logic.classify(logic.ast_to_drs(ast))
    pattern = logic.pattern_of(ast)
    flag = "blue" if axiom.owl_compatible else "red"
    return f"OK {pattern.value} {axiom.text()} {flag}"


def _read_annotations(path: str, wiki: Wiki) -> dict[int, bool]:
    """Annotation file: one `<sentence-index> <+|->` pair per line, indices
    1-based over the corpus sentence order."""
    order = wiki.sentences_in_order()
    out: dict[int, bool] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(),
                                  start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("+", "-", "correct", "incorrect"):
            raise FormatError(line_no, "expected: <sentence-index> <+|->")
        try:
            index = int(parts[0])
        except ValueError:
            raise FormatError(line_no, f"bad sentence index {parts[0]!r}") from None
        if not 1 <= index <= len(order):
            raise AnnotationForUnknownSentence(index)
        out[order[index - 1].id] = parts[1] in ("+", "correct")
    return out


def render_stats(report: StatsReport) -> str:
    lines = []
    lines.append(f"{'pattern':32}{'count':>7}")
    for pattern in SentencePattern:
        lines.append(f"{pattern.value:32}{report.pattern_counts[pattern]:>7}")
    lines.append("")
    lines.append(f"sentences {report.total}")
    for pattern in SentencePattern:
        lines.append(f"pattern.{pattern.value} {report.pattern_counts[pattern]}")
    lines.append(f"neg_or_impl_fraction {report.neg_or_impl_fraction:.6f}")
    if report.s is not None:
        lines.append(f"S {report.s}")
        lines.append(f"S_plus {report.s_plus}")
        lines.append(f"S_minus {report.s_minus}")
        lines.append(f"ratio {report.ratio:.6f}")
    return "\n".join(lines)


def cmd_stats(args) -> int:
    try:
        text = Path(args.corpus).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        wiki = Wiki.from_text(text)
        annotations = None
        if args.annotations:
            annotations = _read_annotations(args.annotations, wiki)
        report = wiki.corpus_stats(annotations)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WikiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTENT
    print(render_stats(report))
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        wiki = _load_wiki(args.wiki)
    except WikiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTENT
    text = wiki.export_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_import(args) -> int:
    if args.wiki is None:
        print("error: import needs --wiki <path>", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        wiki = Wiki.from_text(text)
    except WikiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTENT
    Path(args.wiki).write_text(wiki.export_text(), encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnlwiki",
        description="Controlled-English semantic wiki: server and batch tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP server")
    serve.add_argument("--wiki", help="wiki file (loaded at boot, write-through)")
    serve.add_argument("--listen", default="127.0.0.1:8080",
                       help="host:port to bind (default 127.0.0.1:8080)")
    serve.add_argument("--ui", help="directory with the built web UI")
    serve.set_defaults(func=cmd_serve)

    check = sub.add_parser("check", help="parse and classify a corpus file")
    check.add_argument("corpus")
    check.set_defaults(func=cmd_check)

    stats = sub.add_parser("stats", help="sentence-pattern statistics")
    stats.add_argument("corpus")
    stats.add_argument("--annotations", help="correctness judgments file")
    stats.set_defaults(func=cmd_stats)

    export = sub.add_parser("export", help="write the wiki file format")
    export.add_argument("--wiki", help="wiki file to read")
    export.add_argument("out", nargs="?", help="output path (default stdout)")
    export.set_defaults(func=cmd_export)

    imp = sub.add_parser("import", help="validate a file and install it as the wiki")
    imp.add_argument("file")
    imp.add_argument("--wiki", help="target wiki file")
    imp.set_defaults(func=cmd_import)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
