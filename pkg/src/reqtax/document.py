"""The parsed requirements document."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from reqtax.relations import RelationEdge
from reqtax.taxonomy import Glossary, RequirementElement


@dataclass(frozen=True)
class SrsDocument:
    title: str | None = None
    notation_decls: tuple[str, ...] = ()
    glossary: Glossary = field(default_factory=Glossary)
    roots: tuple[RequirementElement, ...] = ()
    declared_edges: tuple[RelationEdge, ...] = ()
    source: str = field(default="<input>", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "notation_decls", tuple(sorted(set(self.notation_decls))))
        object.__setattr__(
            self, "declared_edges", tuple(sorted(self.declared_edges, key=RelationEdge.sort_key))
        )

    def walk(self) -> Iterator[RequirementElement]:
        for root in self.roots:
            yield from root.walk()

    @cached_property
    def elements(self) -> dict[str, RequirementElement]:
        """Elements by id, in document order. Later duplicates are ignored."""
        out: dict[str, RequirementElement] = {}
        for e in self.walk():
            out.setdefault(e.id, e)
        return out

    @cached_property
    def parents(self) -> dict[str, str]:
        """Child id to direct parent id."""
        out: dict[str, str] = {}
        for e in self.walk():
            for c in e.children:
                out.setdefault(c.id, e.id)
        return out

    def ancestors(self, element_id: str) -> list[str]:
        """Proper ancestors of ``element_id``, nearest first."""
        chain = []
        parents = self.parents
        current = parents.get(element_id)
        while current is not None:
            chain.append(current)
            current = parents.get(current)
        return chain

    def is_descendant(self, x: str, y: str) -> bool:
        """True iff ``x`` is nested (directly or transitively) inside ``y``."""
        return y in self.ancestors(x)

    def __len__(self) -> int:
        return len(self.elements)
