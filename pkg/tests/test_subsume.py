"""Structural prover checks, with the bounded search as backstop."""
from fractions import Fraction

import pytest

from desiree.reasoner.normal import DnfOverflow, ReasonerContext, translate
from desiree.reasoner.semantics import replay_witness
from desiree.reasoner.subsume import subsumes
from desiree.reasoner.verdict import Disproved, Proved, Unknown
from desiree.syntax import ast
from desiree.syntax.parser import parse_description as pd


def proved(d1, d2, ctx=None):
    v = subsumes(pd(d1) if isinstance(d1, str) else d1,
                 pd(d2) if isinstance(d2, str) else d2, ctx)
    return isinstance(v, Proved)


def verdict(d1, d2, ctx=None):
    return subsumes(pd(d1) if isinstance(d1, str) else d1,
                    pd(d2) if isinstance(d2, str) else d2, ctx)


def test_boolean_truths():
    assert proved("A", "A")
    assert proved("A B", "A")
    assert proved("A B", "B A")
    assert proved("A", "A | B")
    assert proved("B | A", "A | B")
    assert proved("A - B", "A")
    assert proved("Nothing", "A")
    assert proved("A", "Anything")
    assert proved("(A - B) B", "Nothing")


def test_boolean_falsehoods_are_disproved():
    for d1, d2 in [("A", "B"), ("A", "A B"), ("A | B", "A")]:
        v = verdict(d1, d2)
        assert isinstance(v, Disproved)
        assert replay_witness(v.witness)


def test_distinct_names_may_share_a_denotation():
    # {a} {c} is satisfiable (both names picking one element), so it must
    # not be normalized away as empty
    v = verdict("{a} {c}", "B")
    assert isinstance(v, Disproved)
    assert replay_witness(v.witness)
    assert proved("{a} {c}", "{a}")
    assert proved("{a} {c}", "{a, b}")
    assert not proved("{a, b} {b, c}", "{b}")


def test_axiom_chain_enrichment():
    ctx = ReasonerContext(axioms=[(pd("A"), pd("B")), (pd("B"), pd("C"))])
    assert proved("A", "C", ctx)
    assert proved("A X", "C X", ctx)
    assert not proved("C", "A", ctx)


def test_disjointness_context():
    ctx = ReasonerContext(disjoints=[("A", "B")])
    assert proved("A B", "Nothing", ctx)
    assert proved("A", "Anything - B", ctx)
    v = verdict("A", "Anything - B")  # without the declaration
    assert isinstance(v, Disproved)


def test_enum_rules():
    assert proved("{a}", "{a, b}")
    v = verdict("{a, b}", "{a}")
    assert isinstance(v, Disproved)
    # no unique-name assumption, so the difference is not always empty
    assert isinstance(verdict("{a} - {b}", "Nothing"), Disproved)
    assert not proved("{a} - {b}", "Nothing")
    assert proved("{a, b} - {b}", "{a}")
    assert proved("{b} - {b}", "Nothing")


def test_slot_lower_bounds():
    assert proved("<s: =2 A>", "<s: SOME A>")
    assert proved("<s: =2 A>", "<s: >=2 A>")
    assert proved("<s: A>", "<s: SOME (A | B)>")
    v = verdict("<s: SOME A>", "<s: =2 A>")
    assert isinstance(v, Disproved)


def test_slot_upper_bounds():
    assert proved("<s: <=1 A>", "<s: <=2 A>")
    assert proved("<s: <=1 (A | B)>", "<s: <=2 A>")
    assert proved("<s: <=0 Anything>", "<s: <=1 A>")
    # different fillers with a finite bound stay unproven at best
    v = verdict("<s: =1 A>", "<s: =1 (A | B)>")
    assert isinstance(v, Disproved)
    assert replay_witness(v.witness)


def test_only_rules():
    assert proved("<s: ONLY A>", "<s: ONLY (A | B)>")
    assert proved("<s: <=0 Anything>", "<s: ONLY B>")
    assert isinstance(verdict("<s: SOME A>", "<s: ONLY A>"), Disproved)
    # bounded total edges inside an ONLY filler bound any sub-count
    assert proved("<s: ONLY A> <s: <=2 A>", "<s: <=2 (A | B)>")


def test_region_constraints():
    sec20 = ast.Region(ast.Interval(Fraction(0), Fraction(20), "Sec"))
    sec30 = ast.Region(ast.Interval(Fraction(0), Fraction(30), "Sec"))
    assert proved(sec20, sec30)
    v = subsumes(sec30, sec20)
    assert isinstance(v, Disproved)
    fast = ast.Region(ast.Named("Fast"))
    nearly = ast.Region(ast.Named("Nearly Fast"))
    ctx = ReasonerContext(axioms=[(fast, nearly)])
    assert proved(fast, nearly, ctx)
    assert not proved(nearly, fast, ctx)


def test_projection_rule():
    assert proved("(A B).s", "A.s")
    assert isinstance(verdict("A.s", "(A B).s"), Disproved)


def test_opaque_negation_reflexive():
    assert proved("A - <s: C>", "A - <s: C>")
    assert proved("A - <s: SOME C>", "A")


def test_dnf_cap_turns_unknown():
    atoms = " | ".join(f"A{i}" for i in range(17))
    v = verdict(atoms, atoms)
    assert isinstance(v, Unknown)
    assert "normal form" in v.reason
    wide = ReasonerContext(max_dnf=32)
    assert proved(atoms, atoms, wide)


def test_translate_bottom_shapes():
    ctx = ReasonerContext()
    assert translate(pd("Nothing"), ctx) == []
    assert translate(pd("(A - B) B"), ctx) == []
    assert translate(pd("{a} - {a}"), ctx) == []
    with pytest.raises(DnfOverflow):
        translate(pd(" | ".join(f"A{i}" for i in range(40))), ctx)


def test_unknown_when_budget_blocks_both_routes():
    # structurally unprovable and too big to enumerate
    left = "A " + " ".join(f"<s{i}: A>" for i in range(22))
    v = verdict(left + " Z", left.replace("A ", "A0 ", 1) + " Z")
    assert isinstance(v, Unknown)
