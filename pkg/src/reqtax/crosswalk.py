"""Mappings from two textbook requirement vocabularies onto the categories.

``wb`` covers the Wiegers-Beatty requirement types, ``avl`` the van
Lamsweerde requirement categories plus goals, expectations and domain
properties. Lookups are case-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass

from reqtax.taxonomy import Category


@dataclass(frozen=True)
class CrosswalkEntry:
    label: str
    category: Category
    mapping: str
    note: str | None = None

    def __str__(self) -> str:
        if self.note:
            return f"{self.category.title} — {self.note}"
        return self.category.title


class UnknownLabelError(LookupError):
    def __init__(self, scheme: str, label: str, valid: list[str]) -> None:
        self.scheme = scheme
        self.label = label
        self.valid = valid
        super().__init__(
            f"unknown {scheme} label {label!r}; valid labels: {', '.join(valid)}"
        )


def _table(*rows: tuple) -> dict[str, CrosswalkEntry]:
    entries = [CrosswalkEntry(*row) for row in rows]
    return {e.label.casefold(): e for e in entries}


WB_TABLE = _table(
    ("Business requirement", Category.GOAL, "Goal", "Can also include limits"),
    ("Business rule", Category.CONSTRAINT, "Constraint", "See also business rule subcategory (4.2)"),
    ("Constraint", Category.CONSTRAINT, "Constraint on behavior or Task"),
    ("External interface requirement", Category.COMPONENT, "Component"),
    ("Feature", Category.BEHAVIOR, "Behavior", "From viewpoint of actor (e.g. user)"),
    ("Functional requirement", Category.BEHAVIOR, "Behavior"),
    ("Nonfunctional requirement", Category.CONSTRAINT, "Constraint on the system or products"),
    (
        "Quality attribute",
        Category.CONSTRAINT,
        "System constraint (Note: not clear what the difference is with the previous category)",
        "From viewpoint of actor (e.g. user)",
    ),
    ("System requirement", Category.COMPONENT, "Component"),
    ("User requirement", Category.GOAL, "Goal"),
)

AVL_TABLE = _table(
    ("Functional requirements", Category.CONSTRAINT, "Constraint or Behavior", "Or Behavior"),
    ("Non-functional requirements", Category.TASK, "Task", "Can also be product"),
    ("Quality requirements", Category.CONSTRAINT, "Constraint", "Usually engineering decisions"),
    ("Compliance requirements", Category.CONSTRAINT, "Constraint", "Usually business rule"),
    ("Architectural requirements", Category.COMPONENT, "Component"),
    ("Development requirements", Category.TASK, "Task", "Can also be product"),
    ("Goals", Category.GOAL, "Goal"),
    ("Expectations", Category.GOAL, "Goal"),
    (
        "Domain properties",
        Category.CONSTRAINT,
        "Constraint",
        "Or Component if the property holds on a structural description",
    ),
)

SCHEMES = {"wb": WB_TABLE, "avl": AVL_TABLE}


def crosswalk(scheme: str, label: str) -> CrosswalkEntry:
    table = SCHEMES[scheme]
    try:
        return table[" ".join(label.split()).casefold()]
    except KeyError:
        raise UnknownLabelError(scheme, label, [e.label for e in table.values()]) from None


def crosswalk_wb(label: str) -> CrosswalkEntry:
    return crosswalk("wb", label)


def crosswalk_avl(label: str) -> CrosswalkEntry:
    return crosswalk("avl", label)
