"""Diagnostic records shared by the parser, linker and lint rules."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"

    @property
    def rank(self) -> int:
        return _RANK[self]


_RANK = {Severity.INFO: 0, Severity.WARNING: 1, Severity.ERROR: 2}


class Location(NamedTuple):
    file: str
    line: int
    column: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


# Stable rule ids. P1 carries parse failures into reports; R1-R9 are lint rules.
RULES: dict[str, tuple[str, Severity]] = {
    "P1": ("parse-error", Severity.ERROR),
    "R1": ("invalid-classification", Severity.ERROR),
    "R2": ("relation-endpoint", Severity.ERROR),
    "R3": ("heterogeneous-composite", Severity.WARNING),
    "R4": ("duplicate", Severity.ERROR),
    "R5": ("contradiction", Severity.INFO),
    "R6": ("lack-glossary", Severity.WARNING),
    "R7": ("relation-structure", Severity.ERROR),
    "R8": ("component-not-in-glossary", Severity.WARNING),
    "R9": ("unrefined-constraint", Severity.INFO),
}


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    severity: Severity
    subjects: tuple[str, ...]
    message: str
    location: Location | None = None

    def __post_init__(self) -> None:
        if self.rule not in RULES:
            raise ValueError(f"unregistered rule id {self.rule!r}")
        if not self.subjects:
            raise ValueError("diagnostic needs at least one subject")

    def sort_key(self) -> tuple:
        loc = self.location
        return (
            loc.file if loc else "",
            loc.line if loc else 0,
            loc.column if loc else 0,
            self.rule,
            self.subjects,
            self.message,
        )

    def format(self) -> str:
        where = f"{self.location}: " if self.location else ""
        name = RULES[self.rule][0]
        return f"{where}{self.severity.value}: {self.rule} {name}: {self.message}"

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "severity": self.severity.value,
            "subjects": list(self.subjects),
            "file": self.location.file if self.location else None,
            "line": self.location.line if self.location else None,
            "message": self.message,
        }
