"""Typed relations between requirement elements.

Nine primary kinds are declared by annotators. Four further kinds refine or
generalize them: DETAILS is a kind of EXTENDS; DUPLICATES and EXPLAINS split
REPEATS by whether both statements use the same notation; SHARES lifts
REPEATS from sub-requirements to their enclosing requirements.

``RelationEdge(x, y, kind)`` always reads "x KIND y", e.g. FOLLOWS(x, y) means
x is a consequence of y.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterable

from reqtax.diagnostics import Diagnostic, Location, Severity
from reqtax.taxonomy import Category

if TYPE_CHECKING:
    from reqtax.document import SrsDocument


class RelationKind(str, Enum):
    DISJOINS = "DISJOINS"
    BELONGS = "BELONGS"
    REPEATS = "REPEATS"
    CONTRADICTS = "CONTRADICTS"
    FOLLOWS = "FOLLOWS"
    EXTENDS = "EXTENDS"
    EXCEPTS = "EXCEPTS"
    CONSTRAINS = "CONSTRAINS"
    CHARACTERIZES = "CHARACTERIZES"
    DETAILS = "DETAILS"
    SHARES = "SHARES"
    DUPLICATES = "DUPLICATES"
    EXPLAINS = "EXPLAINS"

    @property
    def is_primary(self) -> bool:
        return self in PRIMARY_KINDS

    @property
    def primary(self) -> RelationKind | None:
        """The primary kind this kind is a case of; None for SHARES."""
        return _PRIMARY_OF.get(self, self if self.is_primary else None)

    @property
    def symmetric(self) -> bool:
        return self in SYMMETRIC_KINDS


PRIMARY_KINDS = frozenset(list(RelationKind)[:9])
DERIVED_KINDS = frozenset(list(RelationKind)[9:])
SYMMETRIC_KINDS = frozenset(
    {
        RelationKind.DISJOINS,
        RelationKind.REPEATS,
        RelationKind.CONTRADICTS,
        RelationKind.SHARES,
        RelationKind.DUPLICATES,
        RelationKind.EXPLAINS,
    }
)
REPEATS_FAMILY = frozenset({RelationKind.REPEATS, RelationKind.DUPLICATES, RelationKind.EXPLAINS})

_PRIMARY_OF = {
    RelationKind.DETAILS: RelationKind.EXTENDS,
    RelationKind.DUPLICATES: RelationKind.REPEATS,
    RelationKind.EXPLAINS: RelationKind.REPEATS,
}


class Provenance(str, Enum):
    DECLARED = "declared"
    DERIVED = "derived"


@dataclass(frozen=True)
class RelationEdge:
    x: str
    y: str
    kind: RelationKind
    provenance: Provenance = Provenance.DECLARED
    location: Location | None = field(default=None, compare=False, repr=False)

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.x, self.kind.value, self.y, self.provenance.value)

    @property
    def pair(self) -> frozenset[str]:
        return frozenset((self.x, self.y))

    def __str__(self) -> str:
        return f"{self.x} {self.kind.value} {self.y}"


def _diag(rule, severity, subjects, message, location=None) -> Diagnostic:
    return Diagnostic(rule, severity, tuple(subjects), message, location)


def validate_edge(e: RelationEdge, doc: SrsDocument) -> list[Diagnostic]:
    """Endpoint typing checks for one edge whose endpoints resolve in ``doc``."""
    out: list[Diagnostic] = []
    elements = doc.elements
    x = elements[e.x]
    if e.kind is RelationKind.CHARACTERIZES and x.category is not Category.META:
        out.append(
            _diag(
                "R2", Severity.ERROR, (e.x, e.y),
                f"{e}: x must be a meta-requirement, not {x.category.title}",
                e.location,
            )
        )
    elif e.kind is RelationKind.CONSTRAINS and x.category is not Category.CONSTRAINT:
        out.append(
            _diag(
                "R2", Severity.ERROR, (e.x, e.y),
                f"{e}: x must be a constraint, not {x.category.title}",
                e.location,
            )
        )
    elif (
        e.kind is RelationKind.BELONGS
        and e.provenance is Provenance.DECLARED
        and not doc.is_descendant(e.x, e.y)
    ):
        out.append(
            _diag(
                "R2", Severity.ERROR, (e.x, e.y),
                f"{e}: declared BELONGS does not match nesting ({e.x} is not inside {e.y})",
                e.location,
            )
        )
    return out


def normalize_symmetry(edges: Iterable[RelationEdge]) -> list[RelationEdge]:
    """Store each symmetric pair once, smaller id first; drop repeats."""
    seen: set[tuple] = set()
    out: list[RelationEdge] = []
    for e in edges:
        if e.kind.symmetric and e.y < e.x:
            e = RelationEdge(e.y, e.x, e.kind, e.provenance, e.location)
        key = (e.x, e.y, e.kind, e.provenance)
        if key not in seen:
            seen.add(key)
            out.append(e)
    return out


def derive_belongs(doc: SrsDocument) -> list[RelationEdge]:
    """One derived BELONGS(child, parent) per direct nesting link."""
    return [
        RelationEdge(child.id, parent.id, RelationKind.BELONGS, Provenance.DERIVED, child.location)
        for parent in doc.walk()
        for child in parent.children
    ]


def repeats_edges(doc: SrsDocument) -> list[RelationEdge]:
    """Declared REPEATS, DUPLICATES and EXPLAINS edges, one per unordered pair."""
    seen: set[frozenset[str]] = set()
    out = []
    for e in normalize_symmetry(d for d in doc.declared_edges if d.kind in REPEATS_FAMILY):
        if e.pair not in seen:
            seen.add(e.pair)
            out.append(e)
    return out


def refine_repeats(doc: SrsDocument) -> list[RelationEdge]:
    """Split every REPEATS fact into DUPLICATES (same notation) or EXPLAINS."""
    elements = doc.elements
    out = []
    for e in repeats_edges(doc):
        same = elements[e.x].notation == elements[e.y].notation
        kind = RelationKind.DUPLICATES if same else RelationKind.EXPLAINS
        out.append(RelationEdge(e.x, e.y, kind, Provenance.DERIVED, e.location))
    return out


def derive_shares(doc: SrsDocument) -> list[RelationEdge]:
    """SHARES(X, Y) whenever some part of X repeats some part of Y.

    Parts are descendant-or-self. Pairs in which one element contains the
    other are left out; nesting already relates them.
    """
    found: set[tuple[str, str]] = set()
    for e in repeats_edges(doc):
        left = [e.x, *doc.ancestors(e.x)]
        right = [e.y, *doc.ancestors(e.y)]
        left_set, right_set = set(left), set(right)
        for a in left:
            for b in right:
                # a contains b or b contains a
                if a == b or a in right_set or b in left_set:
                    continue
                found.add((a, b) if a < b else (b, a))
    return [
        RelationEdge(a, b, RelationKind.SHARES, Provenance.DERIVED) for a, b in sorted(found)
    ]


def check_structure(doc: SrsDocument) -> list[Diagnostic]:
    """Multi-primary pairs, DISJOINS conflicts and BELONGS/EXTENDS cycles (R7)."""
    out: list[Diagnostic] = []
    by_pair: dict[tuple[str, str], list[RelationEdge]] = defaultdict(list)
    for e in doc.declared_edges:
        by_pair[tuple(sorted((e.x, e.y)))].append(e)

    for pair, edges in by_pair.items():
        primaries = sorted({e.kind.primary for e in edges if e.kind.primary is not None})
        loc = edges[0].location
        if len(primaries) >= 2:
            names = ", ".join(k.value for k in primaries)
            out.append(
                _diag(
                    "R7", Severity.ERROR, pair,
                    f"{pair[0]} and {pair[1]} are related by several primary relations: {names}",
                    loc,
                )
            )
        kinds = {e.kind for e in edges}
        if RelationKind.DISJOINS in kinds and len(kinds) > 1:
            others = ", ".join(sorted(k.value for k in kinds - {RelationKind.DISJOINS}))
            out.append(
                _diag(
                    "R7", Severity.ERROR, pair,
                    f"{pair[0]} and {pair[1]} are declared DISJOINS but also {others}",
                    loc,
                )
            )

    belongs = [e for e in doc.declared_edges if e.kind is RelationKind.BELONGS]
    belongs += derive_belongs(doc)
    for cycle in find_cycles(belongs):
        out.append(
            _diag(
                "R7", Severity.ERROR, cycle,
                f"BELONGS cycle: {' -> '.join(cycle)} -> {cycle[0]}",
                _first_location(belongs, cycle),
            )
        )
    extends = [
        e for e in doc.declared_edges if e.kind in (RelationKind.EXTENDS, RelationKind.DETAILS)
    ]
    for cycle in find_cycles(extends):
        out.append(
            _diag(
                "R7", Severity.WARNING, cycle,
                f"EXTENDS/DETAILS cycle: {' -> '.join(cycle)} -> {cycle[0]}",
                _first_location(extends, cycle),
            )
        )
    return out


def _first_location(edges: list[RelationEdge], cycle: list[str]) -> Location | None:
    members = set(cycle)
    locs = [e.location for e in edges if e.x in members and e.y in members and e.location]
    return min(locs, key=lambda l: (l.file, l.line)) if locs else None


def find_cycles(edges: Iterable[RelationEdge]) -> list[list[str]]:
    """Strongly connected components with more than one node, sorted.

    Each component is returned as a walk order starting at its smallest id.
    """
    graph: dict[str, list[str]] = defaultdict(list)
    for e in edges:
        graph[e.x].append(e.y)
        graph.setdefault(e.y, [])

    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0

    for start in sorted(graph):
        if start in index:
            continue
        work = [(start, iter(graph[start]))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, successors = work[-1]
            advanced = False
            for nxt in successors:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(graph[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                if len(comp) > 1:
                    components.append(_cycle_order(comp, graph))
    return sorted(components)


def _cycle_order(comp: list[str], graph: dict[str, list[str]]) -> list[str]:
    members = set(comp)
    start = min(comp)
    order = [start]
    seen = {start}
    current = start
    while True:
        nxt = next((n for n in sorted(graph[current]) if n in members and n not in seen), None)
        if nxt is None:
            break
        order.append(nxt)
        seen.add(nxt)
        current = nxt
    order.extend(sorted(members - seen))
    return order


def all_edges(doc: SrsDocument, declared_only: bool = False) -> list[RelationEdge]:
    """Declared edges plus derived BELONGS, refinements and SHARES.

    Derived edges that restate a declared edge are omitted.
    """
    declared = list(doc.declared_edges)
    if declared_only:
        return declared
    present = {(e.x, e.y, e.kind) for e in normalize_symmetry(declared)}
    present |= {(e.x, e.y, e.kind) for e in declared}
    derived = []
    for e in [*derive_belongs(doc), *refine_repeats(doc), *derive_shares(doc)]:
        if (e.x, e.y, e.kind) not in present:
            derived.append(e)
    return declared + derived
