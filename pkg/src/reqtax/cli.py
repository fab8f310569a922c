"""Command line entry point: ``reqtax check|graph|stats|suggest|crosswalk``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from reqtax import __version__
from reqtax.crosswalk import UnknownLabelError, crosswalk
from reqtax.diagnostics import Diagnostic, Location, Severity
from reqtax.lint import LintConfig, lint
from reqtax.report import Report, dumps, graph_dot, graph_json, stats_rows
from reqtax.srs import ParseFailure, parse
from reqtax.suggest import suggest_category


class _Unreadable(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _Unreadable(f"cannot read {path}: {exc}") from exc


def check_file(path: str, cfg: LintConfig) -> Report:
    """Parse, link and lint one file into a report."""
    try:
        text = _read(path)
    except _Unreadable as exc:
        diag = Diagnostic("P1", Severity.ERROR, (path,), str(exc), Location(path, 1))
        return Report(path, [diag], parse_failed=True)
    try:
        doc = parse(text, source=path)
    except ParseFailure as failure:
        return Report(path, [e.to_diagnostic() for e in failure.errors], parse_failed=True)
    return Report(path, lint(doc, cfg), doc=doc)


def _load_doc(path: str):
    """Parse ``path`` or report to stderr and return None."""
    try:
        return parse(_read(path), source=path)
    except _Unreadable as exc:
        print(f"reqtax: {exc}", file=sys.stderr)
    except ParseFailure as failure:
        for e in failure.errors:
            print(str(e), file=sys.stderr)
    return None


def cmd_check(args: argparse.Namespace) -> int:
    try:
        cfg = LintConfig.from_file(args.config) if args.config else LintConfig()
    except (OSError, ValueError) as exc:
        print(f"reqtax: bad config: {exc}", file=sys.stderr)
        return 2
    reports = [check_file(p, cfg) for p in sorted(args.paths)]
    for r in reports:
        if r.parse_failed and r.diagnostics and r.diagnostics[0].message.startswith("cannot read"):
            print(f"reqtax: {r.diagnostics[0].message}", file=sys.stderr)
    if args.json:
        payload = [r.to_json() for r in reports]
        print(dumps(payload[0] if len(payload) == 1 else payload))
    else:
        print("\n".join(r.to_text() for r in reports))
    return max(r.exit_class.exit_code(args.strict) for r in reports)


def cmd_graph(args: argparse.Namespace) -> int:
    doc = _load_doc(args.path)
    if doc is None:
        return 2
    if args.format == "dot":
        sys.stdout.write(graph_dot(doc, declared_only=args.declared_only))
    else:
        print(dumps(graph_json(doc, declared_only=args.declared_only)))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    doc = _load_doc(args.path)
    if doc is None:
        return 2
    rows = stats_rows(doc)
    if args.json:
        print(dumps([{"section": s, "key": k, "count": n} for s, k, n in rows]))
    else:
        print("section\tkey\tcount")
        for s, k, n in rows:
            print(f"{s}\t{k}\t{n}")
    if args.plot_dir:
        from reqtax.figures import plot_stats

        for path in plot_stats(doc, args.plot_dir, stem=Path(args.path).stem):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_suggest(args: argparse.Namespace) -> int:
    if args.file:
        doc = _load_doc(args.file)
        if doc is None:
            return 2
        for e in doc.walk():
            ranked = suggest_category(e.text)
            guess = ranked[0][0].title if ranked else "-"
            mark = "=" if ranked and ranked[0][0] is e.category else "!"
            print(f"{e.id}\t{e.category.title}\t{guess}\t{mark}")
        return 0
    statement = " ".join(args.statement).strip()
    if not statement:
        print("reqtax: empty statement", file=sys.stderr)
        return 1
    ranked = suggest_category(statement)
    if args.json:
        print(json.dumps([{"category": c.title, "pattern": p} for c, p in ranked]))
    elif not ranked:
        print("no suggestion")
    else:
        for rank, (category, pattern) in enumerate(ranked, 1):
            print(f"{rank}. {category.title}\t({pattern})")
    return 0


def cmd_crosswalk(args: argparse.Namespace) -> int:
    try:
        entry = crosswalk(args.scheme, args.label)
    except UnknownLabelError as exc:
        print(f"reqtax: {exc}", file=sys.stderr)
        return 1
    print(entry)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reqtax", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse, link and lint .srs files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--json", action="store_true", help="versioned machine-readable report")
    p.add_argument("--strict", action="store_true", help="exit 1 on warnings")
    p.add_argument("--config", help="key=value lint configuration file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("graph", help="export the relation graph")
    p.add_argument("path")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--declared-only", action="store_true", help="omit derived edges")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("stats", help="tab-separated category and relation counts")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot-dir", help="also write PNG bar charts into this directory")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("suggest", help="propose a category for a statement")
    p.add_argument("statement", nargs="*")
    p.add_argument("--file", help="compare suggestions with the labels of a .srs file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("crosswalk", help="map a textbook category onto this taxonomy")
    p.add_argument("scheme", choices=("wb", "avl"))
    p.add_argument("label")
    p.set_defaults(func=cmd_crosswalk)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
