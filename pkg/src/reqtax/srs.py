"""Reader and writer for annotated requirements files (``.srs``).

A file is line oriented::

    @document "SBE Sales System"
    @notations uml
    @glossary
    term "sales agent": "An SBE employee who sells on behalf of customers"
    @end
    [s1] meta :: "Section 1. Introduction"
      [g1] goal(obstacle) :: "Too many enquiries are missed"
      [c1] constraint(assumption, business-rule) :: The exchange is closed on Labor Day
    @relations
    c1 CONSTRAINS g1
    @end

Two spaces of indentation nest an element under the nearest shallower one.
Statement text after ``::`` is either a double-quoted string (JSON escapes)
or bare text running to the end of the line. ``#`` starts a comment outside
quotes and a trailing backslash continues a logical line.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from reqtax.diagnostics import Diagnostic, Location, Severity
from reqtax.document import SrsDocument
from reqtax.relations import RelationEdge, RelationKind, validate_edge
from reqtax.taxonomy import (
    CANONICAL_NOTATIONS,
    Category,
    Classification,
    Glossary,
    RequirementElement,
    Subcategory,
    normalize_term,
)

ID_PATTERN = r"[A-Za-z0-9][A-Za-z0-9_.:\-]*"
NOTATION_PATTERN = r"[a-z][a-z0-9_\-]*"

_ID_RE = re.compile(ID_PATTERN + r"\Z")
_NOTATION_RE = re.compile(NOTATION_PATTERN + r"\Z")
_ELEMENT_RE = re.compile(
    r"\[(?P<id>[^\[\]\s]*)\]\s+"
    r"(?P<cat>[^\s(:\[]+)"
    r"(?:\((?P<subs>[^()]*)\))?"
    r"(?:\s+(?P<notation>\[[^\]]*\]|[^\s:\[]+))?"
    r"\s*::(?P<text>.*)\Z"
)
_INDENT = 2
_DECODER = json.JSONDecoder()


class ParseErrorKind(str, Enum):
    SYNTAX = "Syntax"
    DUPLICATE_ID = "DuplicateId"
    UNKNOWN_CATEGORY = "UnknownCategory"
    UNKNOWN_SUBCATEGORY = "UnknownSubcategory"
    UNKNOWN_RELATION = "UnknownRelation"
    DANGLING_ENDPOINT = "DanglingEndpoint"
    SELF_EDGE = "SelfEdge"
    BAD_INDENT = "BadIndent"


@dataclass(frozen=True)
class ParseError:
    location: Location
    message: str
    kind: ParseErrorKind

    def __str__(self) -> str:
        return f"{self.location}: {self.kind.value}: {self.message}"

    def to_diagnostic(self, subject: str | None = None) -> Diagnostic:
        return Diagnostic(
            rule="P1",
            severity=Severity.ERROR,
            subjects=(subject or self.location.file,),
            message=f"{self.kind.value}: {self.message}",
            location=self.location,
        )


class ParseFailure(Exception):
    """Raised by :func:`parse` with every error found in the input."""

    def __init__(self, errors: list[ParseError]) -> None:
        self.errors = sorted(errors, key=lambda e: (e.location.line, e.location.column))
        first = self.errors[0]
        more = f" (+{len(self.errors) - 1} more)" if len(self.errors) > 1 else ""
        super().__init__(f"{first}{more}")


@dataclass
class _Node:
    id: str
    text: str
    classification: Classification | None
    notation: str
    location: Location
    children: list[_Node] = field(default_factory=list)

    def freeze(self) -> RequirementElement:
        return RequirementElement(
            id=self.id,
            text=self.text,
            classification=self.classification,
            notation=self.notation,
            children=tuple(c.freeze() for c in self.children),
            location=self.location,
        )


def _strip_comment(line: str) -> str:
    in_string = escaped = False
    for i, ch in enumerate(line):
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch == "#":
            return line[:i]
    return line


def _logical_lines(text: str) -> list[tuple[int, str]]:
    out: list[tuple[int, str]] = []
    physical = text.split("\n")
    i = 0
    while i < len(physical):
        start = i + 1
        line = physical[i].rstrip("\r")
        while line.endswith("\\") and i + 1 < len(physical):
            i += 1
            line = line[:-1].rstrip() + " " + physical[i].rstrip("\r").lstrip()
        out.append((start, _strip_comment(line).rstrip()))
        i += 1
    return out


def _decode_string(s: str) -> tuple[str, str]:
    """Decode a leading JSON string from ``s``; return it and the remainder."""
    if not s.startswith('"'):
        raise ValueError("expected a double-quoted string")
    value, end = _DECODER.raw_decode(s)
    if not isinstance(value, str):
        raise ValueError("expected a double-quoted string")
    return value, s[end:]


class _Parser:
    def __init__(self, text: str, source: str) -> None:
        self.text = text
        self.source = source
        self.errors: list[ParseError] = []
        self.title: str | None = None
        self.notations: set[str] = set()
        self.glossary: dict[str, str] = {}
        self.roots: list[_Node] = []
        self.stack: list[_Node] = []
        self.ids: dict[str, Location] = {}
        self.edges: list[RelationEdge] = []
        self.seen_content = False

    def error(self, line: int, column: int, kind: ParseErrorKind, message: str) -> None:
        self.errors.append(ParseError(Location(self.source, line, column), message, kind))

    def run(self) -> SrsDocument:
        mode: str | None = None
        block_start = 0
        for lineno, line in _logical_lines(self.text):
            if not line.strip():
                continue
            stripped = line.strip()
            col = len(line) - len(line.lstrip()) + 1
            first_content = not self.seen_content
            self.seen_content = True

            if mode is not None:
                if stripped == "@end":
                    mode = None
                elif stripped.startswith("@"):
                    self.error(lineno, col, ParseErrorKind.SYNTAX,
                               f"{stripped.split()[0]} inside @{mode} block")
                elif mode == "glossary":
                    self.glossary_line(lineno, col, stripped)
                else:
                    self.relation_line(lineno, col, stripped)
                continue

            if stripped.startswith("@"):
                directive, _, rest = stripped.partition(" ")
                rest = rest.strip()
                if directive == "@document":
                    if not first_content:
                        self.error(lineno, col, ParseErrorKind.SYNTAX,
                                   "@document must be the first line")
                    self.document_line(lineno, col, rest)
                elif directive == "@notations":
                    self.notations_line(lineno, col, rest)
                elif directive in ("@glossary", "@relations") and not rest:
                    mode = directive[1:]
                    block_start = lineno
                elif directive == "@end":
                    self.error(lineno, col, ParseErrorKind.SYNTAX, "@end without open block")
                else:
                    self.error(lineno, col, ParseErrorKind.SYNTAX,
                               f"unknown directive {stripped!r}")
                continue

            self.element_line(lineno, line)

        if mode is not None:
            self.error(block_start, 1, ParseErrorKind.SYNTAX, f"@{mode} block is not closed")

        self.check_notations()
        self.check_endpoints()
        if self.errors:
            raise ParseFailure(self.errors)
        return SrsDocument(
            title=self.title,
            notation_decls=tuple(self.notations),
            glossary=Glossary(self.glossary),
            roots=tuple(n.freeze() for n in self.roots),
            declared_edges=tuple(self.edges),
            source=self.source,
        )

    def document_line(self, lineno: int, col: int, rest: str) -> None:
        try:
            title, tail = _decode_string(rest)
        except ValueError as exc:
            self.error(lineno, col, ParseErrorKind.SYNTAX, f"bad @document title: {exc}")
            return
        if tail.strip():
            self.error(lineno, col, ParseErrorKind.SYNTAX, "unexpected text after title")
        self.title = title

    def notations_line(self, lineno: int, col: int, rest: str) -> None:
        tags = rest.split()
        if not tags:
            self.error(lineno, col, ParseErrorKind.SYNTAX, "@notations needs at least one tag")
        for tag in tags:
            if _NOTATION_RE.match(tag):
                self.notations.add(tag)
            else:
                self.error(lineno, col, ParseErrorKind.SYNTAX, f"bad notation tag {tag!r}")

    def glossary_line(self, lineno: int, col: int, line: str) -> None:
        if not line.startswith("term"):
            self.error(lineno, col, ParseErrorKind.SYNTAX, 'expected term "<phrase>": "<definition>"')
            return
        try:
            term, rest = _decode_string(line[4:].lstrip())
            rest = rest.lstrip()
            if not rest.startswith(":"):
                raise ValueError("expected ':' after term")
            definition, rest = _decode_string(rest[1:].lstrip())
            if rest.strip():
                raise ValueError("unexpected text after definition")
        except ValueError as exc:
            self.error(lineno, col, ParseErrorKind.SYNTAX, f"bad glossary entry: {exc}")
            return
        key = normalize_term(term)
        if not key:
            self.error(lineno, col, ParseErrorKind.SYNTAX, "empty glossary term")
        elif key in self.glossary:
            self.error(lineno, col, ParseErrorKind.SYNTAX, f"duplicate glossary term {term!r}")
        else:
            self.glossary[key] = definition

    def relation_line(self, lineno: int, col: int, line: str) -> None:
        parts = line.split()
        if len(parts) != 3:
            self.error(lineno, col, ParseErrorKind.SYNTAX, "expected '<id> <KIND> <id>'")
            return
        x, kind_name, y = parts
        try:
            kind = RelationKind(kind_name)
        except ValueError:
            valid = " ".join(k.value for k in RelationKind)
            self.error(lineno, col + len(x) + 1, ParseErrorKind.UNKNOWN_RELATION,
                       f"unknown relation {kind_name!r}; expected one of {valid}")
            return
        if x == y:
            self.error(lineno, col, ParseErrorKind.SELF_EDGE, f"{x} {kind_name} {y} relates an element to itself")
            return
        self.edges.append(RelationEdge(x, y, kind, location=Location(self.source, lineno, col)))

    def element_line(self, lineno: int, line: str) -> None:
        body = line.lstrip(" \t")
        indent = line[: len(line) - len(body)]
        depth = len(self.stack)
        if "\t" in indent:
            self.error(lineno, 1, ParseErrorKind.BAD_INDENT, "tabs are not allowed in indentation")
        elif len(indent) % _INDENT:
            self.error(lineno, 1, ParseErrorKind.BAD_INDENT,
                       f"indentation of {len(indent)} spaces is not a multiple of {_INDENT}")
        elif len(indent) // _INDENT > depth:
            self.error(lineno, 1, ParseErrorKind.BAD_INDENT,
                       "indentation jumps more than one level")
        else:
            depth = len(indent) // _INDENT
        col = len(indent) + 1
        node = self.element_node(lineno, col, body)
        del self.stack[depth:]
        if self.stack:
            self.stack[-1].children.append(node)
        else:
            self.roots.append(node)
        self.stack.append(node)

    def element_node(self, lineno: int, col: int, body: str) -> _Node:
        loc = Location(self.source, lineno, col)
        m = _ELEMENT_RE.match(body)
        if not m:
            self.error(lineno, col, ParseErrorKind.SYNTAX,
                       "expected '[<id>] <category>[(<sub>, ...)] [<notation>] :: <statement>'")
            return _Node("", "", None, "text", loc)

        element_id = m["id"]
        if not _ID_RE.match(element_id):
            self.error(lineno, col + 1, ParseErrorKind.SYNTAX, f"bad element id {element_id!r}")
        elif element_id in self.ids:
            first = self.ids[element_id]
            self.error(lineno, col + 1, ParseErrorKind.DUPLICATE_ID,
                       f"id {element_id!r} already defined at line {first.line}")
        else:
            self.ids[element_id] = loc

        classification = self.classification(lineno, col + m.start("cat"), m["cat"], m["subs"])

        notation = m["notation"] or "text"
        if notation.startswith("["):
            notation = notation[1:-1].strip()
        if not _NOTATION_RE.match(notation):
            self.error(lineno, col + m.start("notation"), ParseErrorKind.SYNTAX,
                       f"bad notation tag {notation!r}")

        raw = m["text"].strip()
        text = raw
        if raw.startswith('"'):
            try:
                text, tail = _decode_string(raw)
                if tail.strip():
                    raise ValueError("unexpected text after quoted statement")
            except ValueError as exc:
                self.error(lineno, col + m.start("text"), ParseErrorKind.SYNTAX,
                           f"bad quoted statement: {exc}")
        if not text.strip():
            self.error(lineno, col + m.start("text"), ParseErrorKind.SYNTAX, "empty statement")
        return _Node(element_id, text, classification, notation, loc)

    def classification(self, lineno: int, col: int, cat: str, subs: str | None) -> Classification | None:
        ok = True
        try:
            category = Category(cat)
        except ValueError:
            valid = " ".join(c.value for c in Category)
            self.error(lineno, col, ParseErrorKind.UNKNOWN_CATEGORY,
                       f"unknown category {cat!r}; expected one of {valid}")
            category, ok = None, False
        labels: list[Subcategory] = []
        if subs is not None:
            names = [s.strip() for s in subs.split(",")]
            if any(not s for s in names):
                self.error(lineno, col, ParseErrorKind.SYNTAX, "empty subcategory")
                ok = False
            elif len(names) > 2:
                self.error(lineno, col, ParseErrorKind.SYNTAX, "at most two subcategories allowed")
                ok = False
            for name in filter(None, names):
                try:
                    labels.append(Subcategory(name))
                except ValueError:
                    valid = " ".join(s.value for s in Subcategory)
                    self.error(lineno, col, ParseErrorKind.UNKNOWN_SUBCATEGORY,
                               f"unknown subcategory {name!r}; expected one of {valid}")
                    ok = False
        return Classification(category, tuple(labels)) if ok else None

    def check_notations(self) -> None:
        allowed = CANONICAL_NOTATIONS | self.notations
        stack = list(self.roots)
        while stack:
            node = stack.pop()
            stack.extend(node.children)
            if node.notation not in allowed and _NOTATION_RE.match(node.notation):
                self.error(node.location.line, node.location.column, ParseErrorKind.SYNTAX,
                           f"notation {node.notation!r} is neither canonical nor declared")

    def check_endpoints(self) -> None:
        for e in self.edges:
            for end in (e.x, e.y):
                if end not in self.ids:
                    self.error(e.location.line, e.location.column,
                               ParseErrorKind.DANGLING_ENDPOINT,
                               f"{e}: {end!r} is not a defined element")


def parse(text: str, source: str = "<input>") -> SrsDocument:
    """Parse ``.srs`` text, raising :class:`ParseFailure` listing all errors."""
    return _Parser(text, source).run()


def parse_file(path: str | Path) -> SrsDocument:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), source=str(path))


def _quote(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def render(doc: SrsDocument) -> str:
    """Canonical text for ``doc``; ``parse(render(doc)) == doc``."""
    sections: list[list[str]] = []
    header = []
    if doc.title is not None:
        header.append(f"@document {_quote(doc.title)}")
    if doc.notation_decls:
        header.append("@notations " + " ".join(doc.notation_decls))
    if header:
        sections.append(header)
    if len(doc.glossary):
        lines = ["@glossary"]
        for term in sorted(doc.glossary):
            lines.append(f"term {_quote(term)}: {_quote(doc.glossary[term])}")
        lines.append("@end")
        sections.append(lines)
    if doc.roots:
        lines = []
        stack = [(r, 0) for r in reversed(doc.roots)]
        while stack:
            e, depth = stack.pop()
            lines.append(" " * (_INDENT * depth) + _element_head(e) + " :: " + _quote(e.text))
            stack.extend((c, depth + 1) for c in reversed(e.children))
        sections.append(lines)
    if doc.declared_edges:
        lines = ["@relations"]
        lines += [str(e) for e in sorted(doc.declared_edges, key=RelationEdge.sort_key)]
        lines.append("@end")
        sections.append(lines)
    if not sections:
        return ""
    return "\n\n".join("\n".join(s) for s in sections) + "\n"


def _element_head(e: RequirementElement) -> str:
    c = e.classification
    head = f"[{e.id}] {c.category.value}"
    if c.labels:
        head += "(" + ", ".join(s.value for s in c.labels) + ")"
    if e.notation != "text":
        head += f" {e.notation}"
    return head


def link(doc: SrsDocument) -> list[Diagnostic]:
    """Resolve declared edges and check their endpoint typing (R2)."""
    out: list[Diagnostic] = []
    elements = doc.elements
    for e in doc.declared_edges:
        missing = [end for end in (e.x, e.y) if end not in elements]
        if missing:
            for end in missing:
                out.append(
                    Diagnostic("R2", Severity.ERROR, (e.x, e.y),
                               f"DanglingEndpoint: {e}: {end!r} is not a defined element",
                               e.location)
                )
            continue
        if e.x == e.y:
            out.append(Diagnostic("R2", Severity.ERROR, (e.x,),
                                  f"SelfEdge: {e} relates an element to itself", e.location))
            continue
        out.extend(validate_edge(e, doc))
    return out
