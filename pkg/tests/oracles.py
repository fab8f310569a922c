"""Reference checkers written independently of the library code paths."""

from __future__ import annotations

import itertools

# Compatibility table, spelled out with plain strings rather than the enums.
ALLOWED_SUBCATEGORY = {
    "actor": "component",
    "justification": "meta",
    "obstacle": "goal",
    "responsibility": "role",
    "functional": "behavior",
    "non-functional": "behavior",
}
NATURE = ["assumption", "obligation", "invariant"]
SOURCE = ["business-rule", "engineering-decision", "physical-rule"]
CATEGORIES = [
    "behavior", "component", "constraint", "goal", "lack",
    "limit", "meta", "product", "role", "task",
]


def _allowed_label_sets(category: str) -> set[tuple[str, ...]]:
    if category == "constraint":
        return {
            tuple(sorted(x for x in (n, s) if x))
            for n in [None, *NATURE]
            for s in [None, *SOURCE]
        }
    sets = {()}
    sets |= {(sub,) for sub, parent in ALLOWED_SUBCATEGORY.items() if parent == category}
    return sets


ALLOWED = {c: _allowed_label_sets(c) for c in CATEGORIES}


def classification_is_valid(category: str, labels: list[str]) -> bool:
    """Accept exactly the label multisets enumerated from the table."""
    return tuple(sorted(labels)) in ALLOWED[category]


def descendants_or_self(children: dict[str, list[str]], node: str) -> set[str]:
    out = {node}
    frontier = [node]
    while frontier:
        n = frontier.pop()
        for c in children.get(n, []):
            out.add(c)
            frontier.append(c)
    return out


def brute_force_shares(ids: list[str], children: dict[str, list[str]], repeats: set[frozenset[str]]) -> set[frozenset[str]]:
    """All pairs X, Y with REPEATS between some part of X and some part of Y.

    Quadruple loop over element pairs and their descendant pairs; pairs where
    one element contains the other are dropped.
    """
    parts = {i: descendants_or_self(children, i) for i in ids}
    out = set()
    for x, y in itertools.combinations(ids, 2):
        if y in parts[x] or x in parts[y]:
            continue
        hit = False
        for xp in parts[x]:
            for yp in parts[y]:
                if xp != yp and frozenset((xp, yp)) in repeats:
                    hit = True
                    break
            if hit:
                break
        if hit:
            out.add(frozenset((x, y)))
    return out
