"""Check reports, document statistics and graph export."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from reqtax.diagnostics import Diagnostic, Severity
from reqtax.document import SrsDocument
from reqtax.relations import Provenance, RelationKind, all_edges
from reqtax.taxonomy import Category, Subcategory, is_heterogeneous

REPORT_VERSION = "1.0"


class ExitClass(str, Enum):
    CLEAN = "Clean"
    WARNINGS_ONLY = "WarningsOnly"
    ERRORS = "Errors"
    PARSE_FAILED = "ParseFailed"

    def exit_code(self, strict: bool = False) -> int:
        if self is ExitClass.PARSE_FAILED:
            return 2
        if self is ExitClass.ERRORS:
            return 1
        if self is ExitClass.WARNINGS_ONLY and strict:
            return 1
        return 0


def classify_exit(diagnostics: list[Diagnostic], parse_failed: bool = False) -> ExitClass:
    if parse_failed:
        return ExitClass.PARSE_FAILED
    worst = max((d.severity.rank for d in diagnostics), default=-1)
    if worst >= Severity.ERROR.rank:
        return ExitClass.ERRORS
    if worst == Severity.WARNING.rank:
        return ExitClass.WARNINGS_ONLY
    return ExitClass.CLEAN


def document_stats(doc: SrsDocument | None) -> dict:
    """Counts per category, subcategory and relation kind (zeros included)."""
    categories = Counter({c.value: 0 for c in Category})
    subcategories = Counter({s.value: 0 for s in Subcategory})
    declared = Counter({k.value: 0 for k in RelationKind})
    derived = Counter({k.value: 0 for k in RelationKind})
    composite = elementary = heterogeneous = 0
    if doc is not None:
        for e in doc.walk():
            categories[e.category.value] += 1
            subcategories.update(s.value for s in e.classification.labels)
            if e.is_composite:
                composite += 1
                heterogeneous += is_heterogeneous(e)
            else:
                elementary += 1
        for edge in all_edges(doc):
            target = declared if edge.provenance is Provenance.DECLARED else derived
            target[edge.kind.value] += 1
    return {
        "elements": composite + elementary,
        "composite": composite,
        "elementary": elementary,
        "heterogeneous": heterogeneous,
        "categories": dict(categories),
        "subcategories": dict(subcategories),
        "relations": {"declared": dict(declared), "derived": dict(derived)},
    }


@dataclass
class Report:
    file: str
    diagnostics: list[Diagnostic] = field(default_factory=list)
    doc: SrsDocument | None = None
    parse_failed: bool = False

    @property
    def exit_class(self) -> ExitClass:
        return classify_exit(self.diagnostics, self.parse_failed)

    def summary(self) -> dict:
        stats = document_stats(self.doc)
        counts = Counter(d.severity.value for d in self.diagnostics)
        return {
            "file": self.file,
            "title": self.doc.title if self.doc else None,
            "exit_class": self.exit_class.value,
            "errors": counts["error"],
            "warnings": counts["warning"],
            "infos": counts["info"],
            **stats,
        }

    def to_json(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "summary": self.summary(),
            "diagnostics": [d.to_json() for d in self.diagnostics],
        }

    def to_text(self) -> str:
        lines = [d.format() for d in self.diagnostics]
        s = self.summary()
        lines.append(
            f"{self.file}: {s['exit_class']} "
            f"({s['errors']} errors, {s['warnings']} warnings, {s['infos']} infos, "
            f"{s['elements']} elements)"
        )
        if self.doc is not None:
            cats = ", ".join(
                f"{Category(k).title}={v}" for k, v in s["categories"].items() if v
            )
            lines.append(f"  categories: {cats or 'none'}")
        return "\n".join(lines)


_COUNTS = {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "summary", "diagnostics"],
    "additionalProperties": False,
    "properties": {
        "version": {"type": "string"},
        "summary": {
            "type": "object",
            "required": [
                "file", "title", "exit_class", "errors", "warnings", "infos",
                "elements", "composite", "elementary", "heterogeneous",
                "categories", "subcategories", "relations",
            ],
            "properties": {
                "file": {"type": "string"},
                "title": {"type": ["string", "null"]},
                "exit_class": {"enum": [c.value for c in ExitClass]},
                "errors": {"type": "integer", "minimum": 0},
                "warnings": {"type": "integer", "minimum": 0},
                "infos": {"type": "integer", "minimum": 0},
                "elements": {"type": "integer", "minimum": 0},
                "composite": {"type": "integer", "minimum": 0},
                "elementary": {"type": "integer", "minimum": 0},
                "heterogeneous": {"type": "integer", "minimum": 0},
                "categories": _COUNTS,
                "subcategories": _COUNTS,
                "relations": {
                    "type": "object",
                    "required": ["declared", "derived"],
                    "properties": {"declared": _COUNTS, "derived": _COUNTS},
                },
            },
        },
        "diagnostics": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rule", "severity", "subjects", "file", "line", "message"],
                "additionalProperties": False,
                "properties": {
                    "rule": {"type": "string", "pattern": "^(P1|R[1-9])$"},
                    "severity": {"enum": [s.value for s in Severity]},
                    "subjects": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    "file": {"type": ["string", "null"]},
                    "line": {"type": ["integer", "null"], "minimum": 1},
                    "message": {"type": "string"},
                },
            },
        },
    },
}


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_dot(doc: SrsDocument, declared_only: bool = False) -> str:
    """DOT digraph: one node per element, one edge per relation.

    Derived edges are dashed and grey.
    """
    name = doc.title or "srs"
    lines = [f"digraph {_dot_id(name)} {{", "  node [shape=box];"]
    for e in doc.walk():
        label = f"{e.id}\\n{e.category.title}"
        label_q = '"' + label.replace('"', '\\"') + '"'
        lines.append(f"  {_dot_id(e.id)} [label={label_q}];")
    for edge in all_edges(doc, declared_only=declared_only):
        attrs = [f"label={_dot_id(edge.kind.value)}"]
        if edge.provenance is Provenance.DERIVED:
            attrs += ["style=dashed", "color=gray50", "fontcolor=gray50"]
        if edge.kind.symmetric:
            attrs.append("dir=none")
        lines.append(f"  {_dot_id(edge.x)} -> {_dot_id(edge.y)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(doc: SrsDocument, declared_only: bool = False) -> dict:
    return {
        "version": REPORT_VERSION,
        "nodes": [
            {
                "id": e.id,
                "category": e.category.value,
                "subcategories": [s.value for s in e.classification.labels],
                "notation": e.notation,
                "label": f"{e.id}\n{e.category.title}",
            }
            for e in doc.walk()
        ],
        "edges": [
            {
                "x": edge.x,
                "y": edge.y,
                "kind": edge.kind.value,
                "provenance": edge.provenance.value,
                "line": edge.location.line if edge.location else None,
            }
            for edge in all_edges(doc, declared_only=declared_only)
        ],
    }


def stats_rows(doc: SrsDocument | None) -> list[tuple[str, str, int]]:
    """(section, key, count) rows for delimited stats output."""
    s = document_stats(doc)
    rows = [
        ("elements", "total", s["elements"]),
        ("elements", "composite", s["composite"]),
        ("elements", "elementary", s["elementary"]),
        ("elements", "heterogeneous", s["heterogeneous"]),
    ]
    rows += [("category", Category(k).title, v) for k, v in s["categories"].items()]
    rows += [("subcategory", Subcategory(k).title, v) for k, v in s["subcategories"].items()]
    for prov in ("declared", "derived"):
        rows += [(f"relation.{prov}", k, v) for k, v in s["relations"][prov].items()]
    return rows


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
