"""Rule catalog R1-R9 over a parsed document."""

from __future__ import annotations

import configparser
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable

from reqtax.diagnostics import RULES, Diagnostic, Severity
from reqtax.document import SrsDocument
from reqtax.relations import RelationKind, check_structure, refine_repeats
from reqtax.srs import link
from reqtax.taxonomy import Category, is_heterogeneous, validate_classification
from reqtax.terms import STOPWORDS, candidate_terms, count_terms, head_term

LINT_RULES = tuple(r for r in RULES if r.startswith("R"))


@dataclass(frozen=True)
class LintConfig:
    severities: dict[str, Severity] = field(default_factory=dict)
    lack_min_occurrences: int = 3
    lack_stopwords: frozenset[str] = STOPWORDS
    enabled: frozenset[str] = frozenset(LINT_RULES)

    def __post_init__(self) -> None:
        if self.lack_min_occurrences < 2:
            raise ValueError("lack_min_occurrences must be at least 2")
        unknown = (set(self.severities) | set(self.enabled)) - set(LINT_RULES)
        if unknown:
            raise ValueError(f"unknown rule ids: {', '.join(sorted(unknown))}")

    def severity(self, rule: str) -> Severity:
        return self.severities.get(rule, RULES[rule][1])

    @classmethod
    def from_text(cls, text: str) -> LintConfig:
        """Read ``key = value`` lines.

        Keys: ``lack_min_occurrences``, ``lack_stopwords`` (comma separated,
        added to the built-in list), ``enable`` / ``disable`` (rule ids) and
        ``severity.<rule>`` (error, warning or info).
        """
        parser = configparser.ConfigParser(
            interpolation=None, delimiters=("=",), inline_comment_prefixes=("#",)
        )
        parser.optionxform = str
        parser.read_string("[lint]\n" + text)
        kwargs: dict = {}
        severities: dict[str, Severity] = {}
        enabled = set(LINT_RULES)
        for key, value in parser["lint"].items():
            value = value.strip()
            if key == "lack_min_occurrences":
                kwargs[key] = int(value)
            elif key == "lack_stopwords":
                extra = {w.strip().casefold() for w in value.split(",") if w.strip()}
                kwargs[key] = STOPWORDS | extra
            elif key == "enable":
                enabled = {r.strip() for r in value.split(",") if r.strip()}
            elif key == "disable":
                enabled -= {r.strip() for r in value.split(",") if r.strip()}
            elif key.startswith("severity."):
                severities[key.split(".", 1)[1]] = Severity(value.lower())
            else:
                raise ValueError(f"unknown config key {key!r}")
        return cls(severities=severities, enabled=frozenset(enabled), **kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> LintConfig:
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


def extract_terms(doc: SrsDocument, cfg: LintConfig | None = None) -> Counter[str]:
    cfg = cfg or LintConfig()
    return count_terms((e.text for e in doc.walk()), cfg.lack_stopwords)


Rule = Callable[[SrsDocument, LintConfig], Iterable[Diagnostic]]


def _r1(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    for e in doc.walk():
        yield from validate_classification(e.classification, e.id, e.location)


def _r2(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    return link(doc)


def _r3(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    for e in doc.walk():
        # section titles group whatever they contain
        if e.is_composite and e.category is not Category.META and is_heterogeneous(e):
            mix = sorted({c.category.title for c in e.children})
            yield Diagnostic(
                "R3", Severity.WARNING, (e.id,),
                f"{e.id} combines sub-requirements of different categories ({', '.join(mix)})",
                e.location,
            )


def _r4(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    for e in refine_repeats(doc):
        if e.kind is RelationKind.DUPLICATES:
            notation = doc.elements[e.x].notation
            yield Diagnostic(
                "R4", Severity.ERROR, (e.x, e.y),
                f"{e.x} and {e.y} state the same property in the same notation ({notation})",
                e.location,
            )


def _r5(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    for e in doc.declared_edges:
        if e.kind is RelationKind.CONTRADICTS:
            yield Diagnostic("R5", Severity.INFO, (e.x, e.y),
                             f"{e.x} contradicts {e.y}", e.location)


def _r6(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    counts = extract_terms(doc, cfg)
    flagged = sorted(
        t for t, n in counts.items()
        if n >= cfg.lack_min_occurrences and t not in doc.glossary
    )
    if not flagged:
        return
    where: dict[str, list] = {t: [] for t in flagged}
    for e in doc.walk():
        for t in set(candidate_terms(e.text, cfg.lack_stopwords)) & where.keys():
            where[t].append(e)
    for t in flagged:
        elements = where[t]
        yield Diagnostic(
            "R6", Severity.WARNING, tuple(e.id for e in elements),
            f"term {t!r} occurs {counts[t]} times but is not in the glossary",
            elements[0].location if elements else None,
        )


def _r7(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    return check_structure(doc)


def _r8(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    for e in doc.walk():
        if e.category is not Category.COMPONENT:
            continue
        head = head_term(e.text, cfg.lack_stopwords)
        if head is not None and head not in doc.glossary:
            yield Diagnostic(
                "R8", Severity.WARNING, (e.id,),
                f"component {e.id}: head term {head!r} is not in the glossary",
                e.location,
            )


def _r9(doc: SrsDocument, cfg: LintConfig) -> Iterable[Diagnostic]:
    for e in doc.walk():
        c = e.classification
        if c.category is Category.CONSTRAINT and c.nature is None and c.source is None:
            yield Diagnostic("R9", Severity.INFO, (e.id,),
                             f"constraint {e.id} has neither nature nor source", e.location)


CATALOG: dict[str, Rule] = {
    "R1": _r1, "R2": _r2, "R3": _r3, "R4": _r4, "R5": _r5,
    "R6": _r6, "R7": _r7, "R8": _r8, "R9": _r9,
}


def lint(doc: SrsDocument, cfg: LintConfig | None = None) -> list[Diagnostic]:
    """Run every enabled rule; results ordered by location."""
    cfg = cfg or LintConfig()
    out: list[Diagnostic] = []
    for rule_id, rule in CATALOG.items():
        if rule_id not in cfg.enabled:
            continue
        for d in rule(doc, cfg):
            if rule_id in cfg.severities:
                d = replace(d, severity=cfg.severities[rule_id])
            out.append(d)
    out.sort(key=Diagnostic.sort_key)
    return out
