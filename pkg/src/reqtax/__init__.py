"""Classify, relate and lint requirements documents written in the ``.srs`` format."""

from reqtax.crosswalk import CrosswalkEntry, UnknownLabelError, crosswalk_avl, crosswalk_wb
from reqtax.diagnostics import Diagnostic, Location, Severity
from reqtax.document import SrsDocument
from reqtax.lint import LintConfig, extract_terms, lint
from reqtax.relations import (
    Provenance,
    RelationEdge,
    RelationKind,
    check_structure,
    derive_belongs,
    derive_shares,
    normalize_symmetry,
    refine_repeats,
    validate_edge,
)
from reqtax.srs import ParseError, ParseErrorKind, ParseFailure, link, parse, parse_file, render
from reqtax.suggest import suggest_category
from reqtax.taxonomy import (
    Category,
    Classification,
    Glossary,
    RequirementElement,
    Subcategory,
    is_heterogeneous,
    validate_classification,
)

__version__ = "0.1.0"

__all__ = [
    "Category",
    "Classification",
    "CrosswalkEntry",
    "Diagnostic",
    "Glossary",
    "LintConfig",
    "Location",
    "ParseError",
    "ParseErrorKind",
    "ParseFailure",
    "Provenance",
    "RelationEdge",
    "RelationKind",
    "RequirementElement",
    "Severity",
    "SrsDocument",
    "Subcategory",
    "UnknownLabelError",
    "check_structure",
    "crosswalk_avl",
    "crosswalk_wb",
    "derive_belongs",
    "derive_shares",
    "extract_terms",
    "is_heterogeneous",
    "link",
    "lint",
    "normalize_symmetry",
    "parse",
    "parse_file",
    "refine_repeats",
    "render",
    "suggest_category",
    "validate_classification",
    "validate_edge",
]
