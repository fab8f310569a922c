"""Pattern cascade proposing a category for a statement.

Advisory only: surface wording hints at a category but the final label is a
human call. Patterns are tried in a fixed order and every match is reported,
first match first.
"""

from __future__ import annotations

import re
from typing import Callable

from reqtax.taxonomy import Category

_VERBISH = r"(?:shall|must|will|should|is|are|was|were|can|may|has|have|does|do)"

_HEADING = re.compile(
    r"^\s*(?:(?:section|chapter)\s+)?\d+(?:\.\d+)*\.?[:.]?\s+\S.*$", re.IGNORECASE
)
_HAS_VERB = re.compile(rf"\b{_VERBISH}\b", re.IGNORECASE)

_LIMIT = re.compile(
    r"\bnot\s+(?:be\s+)?part\s+of\b"
    r"|\b(?:falls?\s+)?outside\s+(?:of\s+)?the\s+scope\b"
    r"|\bwill\s+be\s+(?:performed|done|handled|addressed)\s+in\s+a\s+follow[- ]up\b"
    r"|\bout\s+of\s+scope\b",
    re.IGNORECASE,
)
_ROLE = re.compile(
    r"\b(?:shall|will|must)\s+be\s+responsible\s+for\b"
    r"|\b(?:is|are)\s+responsible\s+for\b"
    r"|\b(?:shall|will|must)\s+be\s+designed\s+for\s+operation\s+by\b",
    re.IGNORECASE,
)
# "shall" followed by a verb; copula and negation go to other patterns.
_SHALL_VERB = re.compile(r"\bshall\s+(?!be\b|not\b|have\s+been\b)(?:also\s+)?[a-z]{2,}\b", re.IGNORECASE)
_CONSTRAINT = re.compile(
    r"\b(?:must|shall)\s+not\s+exceed\b"
    r"|\bat\s+(?:least|most)\s+(?:[\d.]+|[a-z])\s*%"
    r"|\brequires?\s+(?:that|authori[sz]ation|approval)\b",
    re.IGNORECASE,
)
_GOAL = re.compile(
    r"\bthe\s+goal\b"
    r"|\ballow(?:s|ing)?\s+[A-Z][\w&.-]*\s+to\b"
    r"|\bthis\s+will\s+(?:reduce|eliminate|increase|improve)\b",
)
_GOAL_CI = re.compile(r"\bthe\s+goal\b|\bthis\s+will\s+(?:reduce|eliminate|increase|improve)\b", re.IGNORECASE)

_PEOPLE = frozenset(
    """
    customer customers user users agent agents owner owners employee employees
    staff administrator administrators operator operators manager managers
    department departments team teams clerk clerks person people stakeholder
    stakeholders accounting shipping marketing sales ceo
    """.split()
)


def _heading(text: str) -> bool:
    # a numbered sentence ("2. The system requests ...") is a step, not a title
    if not _HEADING.match(text) or _HAS_VERB.search(text) or text.endswith("."):
        return False
    return len(text.split()) <= 8


def _actor_phrase(text: str) -> bool:
    words = re.findall(r"[A-Za-z']+", text)
    if not words or len(words) > 4 or _HAS_VERB.search(text):
        return False
    return any(w.casefold() in _PEOPLE for w in words)


PATTERNS: list[tuple[str, Category, Callable[[str], bool]]] = [
    ("heading", Category.META, _heading),
    ("out-of-scope", Category.LIMIT, lambda t: bool(_LIMIT.search(t))),
    ("responsibility", Category.ROLE, lambda t: bool(_ROLE.search(t))),
    ("shall-verb", Category.BEHAVIOR, lambda t: bool(_SHALL_VERB.search(t))),
    ("bound-or-condition", Category.CONSTRAINT, lambda t: bool(_CONSTRAINT.search(t))),
    ("objective", Category.GOAL, lambda t: bool(_GOAL.search(t) or _GOAL_CI.search(t))),
    ("actor-noun-phrase", Category.COMPONENT, _actor_phrase),
]


def suggest_category(statement: str) -> list[tuple[Category, str]]:
    """Ranked (category, pattern name) suggestions; empty if nothing matches."""
    if not statement.strip():
        raise ValueError("statement must be nonempty")
    text = statement.strip().strip('"“”')
    out: list[tuple[Category, str]] = []
    seen: set[Category] = set()
    for name, category, matches in PATTERNS:
        if category not in seen and matches(text):
            out.append((category, name))
            seen.add(category)
    return out
