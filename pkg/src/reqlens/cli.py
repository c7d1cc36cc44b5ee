"""Command-line interface.

Exit codes: 0 success, 1 operation failure (unknown term, open conflicts,
missing knowledge base, ...), 2 configuration failure (unreadable input,
grammar, lexicon, compound list or bad flags).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from reqlens.grammar import GrammarError
from reqlens.ingest import CompoundListError
from reqlens.kb import KBError, KnowledgeBase, load_kb, save_kb
from reqlens.lexicon import LexiconError
from reqlens.pipeline import (
    DEFAULT_TREE_LIMIT,
    PipelineConfig,
    PipelineError,
    analyze_document,
    load_config,
    register_document,
)

CONFIG_EXIT = 2
OPERATION_EXIT = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reqlens", description="Requirements text analysis toolkit.")
    parser.add_argument("--grammar", metavar="PATH", help="grammar file (default: bundled seed)")
    parser.add_argument("--lexicon", metavar="PATH", help="lexicon file (default: bundled seed)")
    parser.add_argument("--compounds", metavar="PATH", help="compound-noun list (default: bundled seed)")
    parser.add_argument("--tree-limit", type=int, default=DEFAULT_TREE_LIMIT, metavar="N",
                        help="maximum parse trees enumerated per sentence (default: %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("parse", help="analyse documents and print trees or terms")
    cmd.add_argument("files", nargs="*", metavar="FILE", help="input files (default: stdin)")
    cmd.add_argument("--emit", choices=("trees", "terms"), default="trees",
                     help="what to print per document (default: %(default)s)")

    cmd = sub.add_parser("kb", help="operate on a stored knowledge base")
    cmd.add_argument("--kb", required=True, metavar="PATH", help="knowledge base JSON file")
    kb_sub = cmd.add_subparsers(dest="kb_command", required=True)

    kcmd = kb_sub.add_parser("init", help="create an empty knowledge base")
    kcmd.add_argument("--project-id", required=True)

    kcmd = kb_sub.add_parser("add-doc", help="analyse a document into the knowledge base")
    kcmd.add_argument("--title", required=True)
    kcmd.add_argument("file", nargs="?", metavar="FILE", help="input file (default: stdin)")

    kcmd = kb_sub.add_parser("terms", help="list terms as value<TAB>sentences<TAB>status")
    kcmd.add_argument("--status", choices=("pending", "filtered", "classified"))

    for name in ("filter", "unfilter", "declassify"):
        kcmd = kb_sub.add_parser(name, help=f"{name} a term")
        kcmd.add_argument("value")

    kcmd = kb_sub.add_parser("classify", help="classify a term")
    kcmd.add_argument("value")
    kcmd.add_argument("type", choices=("FUNCTION", "ENTITY", "ATTRIBUTE"))
    kcmd.add_argument("--object-value", metavar="VALUE", help="object the term denotes (default: the term)")

    kb_sub.add_parser("conflicts", help="list conflicts")

    kcmd = kb_sub.add_parser("resolve", help="resolve a classification conflict")
    kcmd.add_argument("value")
    kcmd.add_argument("type", choices=("FUNCTION", "ENTITY", "ATTRIBUTE"))

    kb_sub.add_parser("export", help="print the object model as s-expressions")

    cmd = sub.add_parser("serve", help="run the HTTP service")
    cmd.add_argument("--port", type=int, default=8000)
    cmd.add_argument("--host", default="127.0.0.1")

    return parser


def _load_pipeline(args: argparse.Namespace) -> PipelineConfig:
    return load_config(
        grammar_path=args.grammar,
        lexicon_path=args.lexicon,
        compounds_path=args.compounds,
        tree_limit=args.tree_limit,
    )


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _cmd_parse(args: argparse.Namespace, out) -> int:
    config = _load_pipeline(args)
    sources = args.files or [None]
    for source in sources:
        try:
            body = _read_input(source)
        except OSError as exc:
            print(f"reqlens: cannot read {source}: {exc.strerror or exc}", file=sys.stderr)
            return CONFIG_EXIT
        title = source or "<stdin>"
        analyzed = analyze_document(config, title=title, body=body)
        if args.emit == "trees":
            for sentence in analyzed.sentences:
                if sentence.parsed:
                    out.write(sentence.tree + "\n")
                else:
                    out.write("UNPARSED: " + " ".join(sentence.tokens) + "\n")
        else:
            kb = KnowledgeBase(project_id="batch")
            kb.add_document(title, [
                (s.text, list(s.tokens), s.tree, s.tree_count, list(s.terms))
                for s in analyzed.sentences
            ])
            out.write(kb.terms_table())
    return 0


def _open_kb(path: str) -> KnowledgeBase:
    if not Path(path).exists():
        raise KBError(f"knowledge base {path} does not exist (run 'kb init' first)")
    return load_kb(path)


def _cmd_kb(args: argparse.Namespace, out) -> int:
    path = args.kb
    if args.kb_command == "init":
        if Path(path).exists():
            raise KBError(f"refusing to overwrite existing knowledge base {path}")
        save_kb(KnowledgeBase(project_id=args.project_id), path)
        return 0
    kb = _open_kb(path)
    if args.kb_command == "add-doc":
        try:
            body = _read_input(args.file)
        except OSError as exc:
            print(f"reqlens: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
            return CONFIG_EXIT
        config = _load_pipeline(args)
        doc = register_document(kb, config, title=args.title, body=body)
        save_kb(kb, path)
        out.write(f"{doc.doc_id}: {len(doc.sentences)} sentences\n")
    elif args.kb_command == "terms":
        for entry in kb.terms_by_status(args.status):
            indices = ",".join(str(i) for i in entry.sentence_indices)
            out.write(f"{entry.value}\t{indices}\t{entry.status}\n")
    elif args.kb_command == "filter":
        kb.filter_term(args.value)
        save_kb(kb, path)
    elif args.kb_command == "unfilter":
        kb.unfilter_term(args.value)
        save_kb(kb, path)
    elif args.kb_command == "classify":
        kb.classify_term(args.value, args.type, args.object_value)
        save_kb(kb, path)
    elif args.kb_command == "declassify":
        kb.declassify_term(args.value)
        save_kb(kb, path)
    elif args.kb_command == "conflicts":
        for conflict in kb.conflicts():
            types = ",".join(conflict.types)
            line = f"{conflict.value}\t{types}\t{conflict.status}"
            if conflict.resolution:
                line += f"\t{conflict.resolution}"
            out.write(line + "\n")
    elif args.kb_command == "resolve":
        kb.resolve_conflict(args.value, args.type)
        save_kb(kb, path)
    elif args.kb_command == "export":
        out.write(kb.export_sexpr())
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from reqlens.service import create_app

    config = _load_pipeline(args)
    uvicorn.run(create_app(config), host=args.host, port=args.port, log_level="info")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "parse":
            return _cmd_parse(args, sys.stdout)
        if args.command == "kb":
            return _cmd_kb(args, sys.stdout)
        return _cmd_serve(args)
    except (GrammarError, LexiconError, CompoundListError) as exc:
        print(f"reqlens: configuration error: {exc}", file=sys.stderr)
        return CONFIG_EXIT
    except FileNotFoundError as exc:
        # A missing resource file is a configuration problem.
        print(f"reqlens: configuration error: {exc}", file=sys.stderr)
        return CONFIG_EXIT
    except (KBError, PipelineError) as exc:
        print(f"reqlens: {exc}", file=sys.stderr)
        return OPERATION_EXIT


if __name__ == "__main__":
    sys.exit(main())
