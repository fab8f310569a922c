"""Requirement categories, subcategories and classified requirement elements.

Ten basic categories partition requirement elements. Subcategories refine
exactly one parent category each; constraints instead carry two orthogonal
optional slots, a *nature* (assumption, obligation, invariant) and a *source*
(business rule, engineering decision, physical rule).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping

from reqtax.diagnostics import Diagnostic, Location, Severity


class Category(str, Enum):
    BEHAVIOR = "behavior"
    COMPONENT = "component"
    CONSTRAINT = "constraint"
    GOAL = "goal"
    LACK = "lack"
    LIMIT = "limit"
    META = "meta"
    PRODUCT = "product"
    ROLE = "role"
    TASK = "task"

    @property
    def title(self) -> str:
        return _CATEGORY_TITLES[self]


_CATEGORY_TITLES = {
    Category.BEHAVIOR: "Behavior",
    Category.COMPONENT: "Component",
    Category.CONSTRAINT: "Constraint",
    Category.GOAL: "Goal",
    Category.LACK: "Lack",
    Category.LIMIT: "Limit",
    Category.META: "MetaRequirement",
    Category.PRODUCT: "Product",
    Category.ROLE: "Role",
    Category.TASK: "Task",
}


class SlotKind(str, Enum):
    SUBCATEGORY = "subcategory"
    NATURE = "nature"
    SOURCE = "source"


class Subcategory(str, Enum):
    """Every subcategory keyword. Declaration order is the canonical order."""

    ACTOR = "actor"
    JUSTIFICATION = "justification"
    OBSTACLE = "obstacle"
    RESPONSIBILITY = "responsibility"
    FUNCTIONAL = "functional"
    NON_FUNCTIONAL = "non-functional"
    ASSUMPTION = "assumption"
    OBLIGATION = "obligation"
    INVARIANT = "invariant"
    BUSINESS_RULE = "business-rule"
    ENGINEERING_DECISION = "engineering-decision"
    PHYSICAL_RULE = "physical-rule"

    @property
    def slot(self) -> SlotKind:
        return _SLOT[self]

    @property
    def parent(self) -> Category:
        """The only category this label may refine."""
        return _PARENT[self]

    @property
    def title(self) -> str:
        return self.name.title().replace("_", "")

    @property
    def order(self) -> int:
        return _ORDER[self]


_PARENT = {
    Subcategory.ACTOR: Category.COMPONENT,
    Subcategory.JUSTIFICATION: Category.META,
    Subcategory.OBSTACLE: Category.GOAL,
    Subcategory.RESPONSIBILITY: Category.ROLE,
    Subcategory.FUNCTIONAL: Category.BEHAVIOR,
    Subcategory.NON_FUNCTIONAL: Category.BEHAVIOR,
    Subcategory.ASSUMPTION: Category.CONSTRAINT,
    Subcategory.OBLIGATION: Category.CONSTRAINT,
    Subcategory.INVARIANT: Category.CONSTRAINT,
    Subcategory.BUSINESS_RULE: Category.CONSTRAINT,
    Subcategory.ENGINEERING_DECISION: Category.CONSTRAINT,
    Subcategory.PHYSICAL_RULE: Category.CONSTRAINT,
}

_SLOT = {
    s: (
        SlotKind.NATURE
        if s in (Subcategory.ASSUMPTION, Subcategory.OBLIGATION, Subcategory.INVARIANT)
        else SlotKind.SOURCE
        if s
        in (
            Subcategory.BUSINESS_RULE,
            Subcategory.ENGINEERING_DECISION,
            Subcategory.PHYSICAL_RULE,
        )
        else SlotKind.SUBCATEGORY
    )
    for s in Subcategory
}

_ORDER = {s: i for i, s in enumerate(Subcategory)}

NATURES = tuple(s for s in Subcategory if s.slot is SlotKind.NATURE)
SOURCES = tuple(s for s in Subcategory if s.slot is SlotKind.SOURCE)

CANONICAL_NOTATIONS = frozenset({"text", "diagram", "table", "formula", "code"})


@dataclass(frozen=True)
class Classification:
    """A category plus the subcategory labels attached to it.

    Labels are kept in canonical order so two classifications written with
    different label orders compare equal. The structure can hold invalid
    combinations; :func:`validate_classification` reports them.
    """

    category: Category
    labels: tuple[Subcategory, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(sorted(self.labels, key=_ORDER.__getitem__)))

    @classmethod
    def of(
        cls,
        category: Category,
        subcategory: Subcategory | None = None,
        nature: Subcategory | None = None,
        source: Subcategory | None = None,
    ) -> Classification:
        return cls(category, tuple(x for x in (subcategory, nature, source) if x is not None))

    def _slot(self, kind: SlotKind) -> Subcategory | None:
        found = [s for s in self.labels if s.slot is kind]
        return found[0] if found else None

    @property
    def subcategory(self) -> Subcategory | None:
        return self._slot(SlotKind.SUBCATEGORY)

    @property
    def nature(self) -> Subcategory | None:
        return self._slot(SlotKind.NATURE)

    @property
    def source(self) -> Subcategory | None:
        return self._slot(SlotKind.SOURCE)

    def __str__(self) -> str:
        if not self.labels:
            return self.category.title
        return f"{self.category.title}({', '.join(s.title for s in self.labels)})"


def validate_classification(
    c: Classification,
    subject: str | None = None,
    location: Location | None = None,
) -> list[Diagnostic]:
    """Check ``c`` against the category/subcategory compatibility table.

    Returns one R1 diagnostic per violated rule; an empty list means valid.
    ``subject`` names the classified element; without it the offending slot
    is used as the subject.
    """
    problems: list[tuple[str, str]] = []
    plain = [s for s in c.labels if s.slot is SlotKind.SUBCATEGORY]
    natures = [s for s in c.labels if s.slot is SlotKind.NATURE]
    sources = [s for s in c.labels if s.slot is SlotKind.SOURCE]

    if len(plain) > 1:
        names = ", ".join(s.title for s in plain)
        problems.append(("subcategory", f"at most one subcategory allowed, got {names}"))
    for s in plain:
        if s.parent is not c.category:
            problems.append(
                ("subcategory", f"{s.title} requires {s.parent.title}, not {c.category.title}")
            )

    if c.category is not Category.CONSTRAINT:
        for slot, labels in (("nature", natures), ("source", sources)):
            for s in labels:
                problems.append(
                    (slot, f"{slot} slot is constraint-only ({s.title} on {c.category.title})")
                )
    else:
        if {Subcategory.ASSUMPTION, Subcategory.OBLIGATION} <= set(natures):
            problems.append(
                ("nature", "Obligation and Assumption are mutually exclusive; use Invariant")
            )
        elif len(natures) > 1:
            names = ", ".join(s.title for s in natures)
            problems.append(("nature", f"at most one nature allowed, got {names}"))
        if len(sources) > 1:
            names = ", ".join(s.title for s in sources)
            problems.append(("source", f"at most one source allowed, got {names}"))

    return [
        Diagnostic(
            rule="R1",
            severity=Severity.ERROR,
            subjects=(subject or slot,),
            message=message,
            location=location,
        )
        for slot, message in problems
    ]


@dataclass(frozen=True)
class RequirementElement:
    id: str
    text: str
    classification: Classification
    notation: str = "text"
    children: tuple[RequirementElement, ...] = ()
    location: Location | None = field(default=None, compare=False, repr=False)

    @property
    def category(self) -> Category:
        return self.classification.category

    @property
    def is_composite(self) -> bool:
        return bool(self.children)

    def walk(self) -> Iterator[RequirementElement]:
        """Yield this element and all descendants, pre-order."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


# Section titles and lacks describe the document rather than properties,
# so they do not count towards a parent's mix of categories.
_NEUTRAL_CATEGORIES = frozenset({Category.META, Category.LACK})


def is_heterogeneous(e: RequirementElement) -> bool:
    """True iff the direct children of composite ``e`` mix basic categories."""
    if not e.is_composite:
        raise ValueError(f"{e.id} is elementary; heterogeneity applies to composites only")
    kinds = {c.category for c in e.children if c.category not in _NEUTRAL_CATEGORIES}
    return len(kinds) > 1


class Glossary(Mapping[str, str]):
    """Term definitions keyed by case-folded term."""

    def __init__(self, entries: Mapping[str, str] | None = None) -> None:
        self._entries: dict[str, str] = {}
        for term, definition in (entries or {}).items():
            key = normalize_term(term)
            if key in self._entries:
                raise ValueError(f"duplicate glossary term {term!r}")
            self._entries[key] = definition

    def __getitem__(self, term: str) -> str:
        return self._entries[normalize_term(term)]

    def __contains__(self, term: object) -> bool:
        return isinstance(term, str) and normalize_term(term) in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Glossary):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        return f"Glossary({self._entries!r})"

    def with_entry(self, term: str, definition: str) -> Glossary:
        entries = dict(self._entries)
        entries[normalize_term(term)] = definition
        return Glossary(entries)


def normalize_term(term: str) -> str:
    return " ".join(term.casefold().split())
