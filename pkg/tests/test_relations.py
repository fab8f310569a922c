import random

from hypothesis import given, settings
from hypothesis import strategies as st

from reqtax import (
    Category,
    Classification,
    Provenance,
    RelationEdge,
    RelationKind,
    SrsDocument,
    check_structure,
    derive_belongs,
    derive_shares,
    normalize_symmetry,
    parse,
    refine_repeats,
    validate_edge,
)
from reqtax.relations import PRIMARY_KINDS, REPEATS_FAMILY, all_edges, find_cycles

import docgen
import oracles

K = RelationKind
seeds = st.integers(0, 2**32 - 1)


def doc(text: str) -> SrsDocument:
    return parse(text)


BASE = """\
[meta1] meta :: "2.1 High Priority"
  [order] behavior :: "The system shall allow for on-line product ordering"
[pre] constraint :: "Preconditions: The user is registered."
[post] behavior :: "Postconditions: The user can now obtain data"
[ctx] behavior diagram :: "context diagram"
[goal] goal :: "The goal of the system is to allow SBE to increase sales"
[b1] behavior :: "Display the list of available elements."
[b2] behavior :: "Show the list of available elements."
"""


class TestValidateEdge:
    d = doc(BASE)

    def check(self, x, kind, y):
        return validate_edge(RelationEdge(x, y, kind), self.d)

    def test_characterizes_from_meta(self):
        assert self.check("meta1", K.CHARACTERIZES, "order") == []

    def test_constrains_from_constraint(self):
        assert self.check("pre", K.CONSTRAINS, "post") == []

    def test_characterizes_from_behavior(self):
        (d,) = self.check("order", K.CHARACTERIZES, "meta1")
        assert "x must be a meta-requirement" in d.message
        assert d.rule == "R2"

    def test_constrains_from_behavior(self):
        (d,) = self.check("post", K.CONSTRAINS, "pre")
        assert "x must be a constraint" in d.message

    def test_declared_belongs_must_match_nesting(self):
        assert self.check("order", K.BELONGS, "meta1") == []
        (d,) = self.check("meta1", K.BELONGS, "order")
        assert "does not match nesting" in d.message

    @settings(max_examples=100)
    @given(seed=seeds)
    def test_untyped_kinds_never_reported(self, seed):
        rng = random.Random(seed)
        kinds = [k for k in RelationKind if k not in (K.CHARACTERIZES, K.CONSTRAINS, K.BELONGS)]
        d = docgen.random_document(rng, n_elements=rng.randint(2, 20), kinds=kinds)
        for e in d.declared_edges:
            assert validate_edge(e, d) == []


class TestNormalizeSymmetry:
    def test_repeats_pair_collapses(self):
        edges = [RelationEdge("a", "b", K.REPEATS), RelationEdge("b", "a", K.REPEATS)]
        assert normalize_symmetry(edges) == [RelationEdge("a", "b", K.REPEATS)]

    def test_directed_untouched(self):
        assert normalize_symmetry([RelationEdge("b", "a", K.EXTENDS)]) == [RelationEdge("b", "a", K.EXTENDS)]

    def test_canonical_order(self):
        assert normalize_symmetry([RelationEdge("z", "a", K.CONTRADICTS)]) == [RelationEdge("a", "z", K.CONTRADICTS)]

    @given(seed=seeds)
    def test_idempotent(self, seed):
        rng = random.Random(seed)
        ids = list("abcde")
        edges = [RelationEdge(*rng.sample(ids, 2), rng.choice(list(RelationKind))) for _ in range(15)]
        once = normalize_symmetry(edges)
        assert normalize_symmetry(once) == once


class TestDeriveBelongs:
    def test_nested_customer_definition(self):
        d = doc('[s4.3] meta :: "4.3 System Externals"\n  [def] component(actor) :: "A customer is any user"\n')
        assert derive_belongs(d) == [RelationEdge("def", "s4.3", K.BELONGS, Provenance.DERIVED)]

    def test_flat_document(self):
        assert derive_belongs(doc('[a] goal :: "x"\n[b] goal :: "y"\n')) == []

    def test_direct_links_only(self):
        d = doc('[c] goal :: "c"\n  [b] goal :: "b"\n    [a] goal :: "a"\n')
        pairs = {(e.x, e.y) for e in derive_belongs(d)}
        assert pairs == {("b", "c"), ("a", "b")}

    @settings(max_examples=100)
    @given(seed=seeds)
    def test_forest_shape(self, seed):
        d = docgen.random_document(random.Random(seed))
        edges = derive_belongs(d)
        children = [e.x for e in edges]
        assert len(children) == len(set(children))
        assert find_cycles(edges) == []


class TestRefineRepeats:
    def test_diagram_explains_text(self):
        d = doc(BASE + "@relations\nctx REPEATS goal\n@end\n")
        (e,) = refine_repeats(d)
        assert e.kind is K.EXPLAINS and e.provenance is Provenance.DERIVED

    def test_same_notation_duplicates(self):
        d = doc(BASE + "@relations\nb1 REPEATS b2\n@end\n")
        (e,) = refine_repeats(d)
        assert e.kind is K.DUPLICATES

    def test_empty(self):
        assert refine_repeats(doc(BASE)) == []

    def test_symmetric_declarations_count_once(self):
        d = doc(BASE + "@relations\nb1 REPEATS b2\nb2 REPEATS b1\nb1 DUPLICATES b2\n@end\n")
        assert len(refine_repeats(d)) == 1

    @settings(max_examples=150)
    @given(seed=seeds)
    def test_partition(self, seed):
        d = docgen.random_document(random.Random(seed))
        refined = refine_repeats(d)
        dup = {e.pair for e in refined if e.kind is K.DUPLICATES}
        exp = {e.pair for e in refined if e.kind is K.EXPLAINS}
        reps = {frozenset((e.x, e.y)) for e in d.declared_edges if e.kind in REPEATS_FAMILY}
        assert not dup & exp
        assert dup | exp == reps
        assert len(dup) + len(exp) == len(reps)


def _oracle_inputs(d: SrsDocument):
    ids = list(d.elements)
    children = {e.id: [c.id for c in e.children] for e in d.walk()}
    repeats = {frozenset((e.x, e.y)) for e in d.declared_edges if e.kind in REPEATS_FAMILY}
    return ids, children, repeats


class TestDeriveShares:
    def test_children_repeat(self):
        d = doc(
            '[X] goal :: "x"\n  [x1] goal :: "x1"\n[Y] goal :: "y"\n  [y1] goal :: "y1"\n'
            "@relations\nx1 REPEATS y1\n@end\n"
        )
        pairs = {e.pair for e in derive_shares(d)}
        assert frozenset(("X", "Y")) in pairs
        assert pairs == {frozenset(p) for p in [("X", "Y"), ("X", "y1"), ("x1", "Y"), ("x1", "y1")]}

    def test_no_repeats(self):
        assert derive_shares(doc(BASE)) == []

    def test_ancestor_pairs_suppressed(self):
        d = doc('[P] goal :: "p"\n  [a] goal :: "a"\n  [b] goal :: "b"\n@relations\na REPEATS b\n@end\n')
        assert {e.pair for e in derive_shares(d)} == {frozenset(("a", "b"))}

    @settings(max_examples=150, deadline=None)
    @given(seed=seeds)
    def test_matches_brute_force(self, seed):
        rng = random.Random(seed)
        d = docgen.random_document(rng, n_elements=rng.randint(0, 30))
        got = {e.pair for e in derive_shares(d)}
        assert got == oracles.brute_force_shares(*_oracle_inputs(d))

    @settings(max_examples=50)
    @given(seed=seeds)
    def test_symmetric(self, seed):
        d = docgen.random_document(random.Random(seed))
        edges = derive_shares(d)
        assert all(e.x < e.y for e in edges)
        assert len({e.pair for e in edges}) == len(edges)


class TestCheckStructure:
    def test_two_primaries(self):
        d = doc(BASE + "@relations\nb1 EXTENDS b2\nb1 CONTRADICTS b2\n@end\n")
        (diag,) = check_structure(d)
        assert "several primary relations" in diag.message
        assert diag.severity.value == "error"

    def test_belongs_cycle(self):
        d = doc('[a] goal :: "a"\n[b] goal :: "b"\n@relations\na BELONGS b\nb BELONGS a\n@end\n')
        diags = check_structure(d)
        assert any("BELONGS cycle" in x.message and x.severity.value == "error" for x in diags)

    def test_extends_cycle_is_warning(self):
        d = doc(BASE + "@relations\nb1 EXTENDS b2\nb2 DETAILS b1\n@end\n")
        (diag,) = check_structure(d)
        assert "EXTENDS/DETAILS cycle" in diag.message
        assert diag.severity.value == "warning"

    def test_disjoins_alone(self):
        assert check_structure(doc(BASE + "@relations\nb1 DISJOINS b2\n@end\n")) == []

    def test_disjoins_conflict(self):
        d = doc(BASE + "@relations\nb1 DISJOINS b2\nb1 SHARES b2\n@end\n")
        (diag,) = check_structure(d)
        assert "declared DISJOINS but also SHARES" in diag.message

    def test_details_and_extends_are_one_primary(self):
        assert check_structure(doc(BASE + "@relations\nb1 EXTENDS b2\nb1 DETAILS b2\n@end\n")) == []

    def test_derived_belongs_does_not_count_as_primary(self):
        assert check_structure(doc(BASE + "@relations\nmeta1 CHARACTERIZES order\n@end\n")) == []


def test_primary_kinds():
    assert len(PRIMARY_KINDS) == 9
    assert K.DETAILS.primary is K.EXTENDS
    assert K.EXPLAINS.primary is K.REPEATS and K.DUPLICATES.primary is K.REPEATS
    assert K.SHARES.primary is None


def test_all_edges_skips_restated_derivations():
    d = doc('[p] goal :: "p"\n  [c] goal :: "c"\n@relations\nc BELONGS p\n@end\n')
    edges = all_edges(d)
    assert [(e.x, e.y, e.kind, e.provenance) for e in edges] == [("c", "p", K.BELONGS, Provenance.DECLARED)]


def test_find_cycles_handles_large_chain():
    edges = [RelationEdge(f"n{i}", f"n{i+1}", K.EXTENDS) for i in range(5000)]
    assert find_cycles(edges) == []
    edges.append(RelationEdge("n5000", "n0", K.EXTENDS))
    (cycle,) = find_cycles(edges)
    assert len(cycle) == 5001
