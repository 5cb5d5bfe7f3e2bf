"""Admissible strength tags per operator and semantic claim checking."""

from fractions import Fraction
from types import SimpleNamespace

import pytest

from desiree.reasoner.normal import ReasonerContext
from desiree.reasoner.strength import (
    ASSERTED,
    UNDECIDED,
    VERIFIED,
    VIOLATED,
    admissible_strengths,
    verify_claim,
)
from desiree.syntax import ast
from desiree.syntax.parser import DescBody, NLBody, QualityBody, parse_description

D = parse_description


def elem(kind, body, relax=None):
    return SimpleNamespace(kind=kind, body=body, relaxations=relax or {})


def goal(text):
    return elem("goal", DescBody(D(text)))


# ---------------------------------------------------------------------------
# Admissibility table.


@pytest.mark.parametrize("op,admitted", [
    ("reduce", "swe"),
    ("interpret", "se"),
    ("focus", "we"),
    ("scaleup", "se"),
    ("scaledown", "we"),
    ("resolve", "w"),
    ("observe", "s"),
])
def test_fixed_rows(op, admitted):
    tags = admissible_strengths(op)
    assert tags == frozenset(admitted)
    for rejected in set("swe") - set(admitted):
        assert rejected not in tags


def test_deuniversalize_row():
    assert admissible_strengths(
        "deuniversalize", pct=Fraction(80, 100)) == frozenset("w")
    assert admissible_strengths(
        "deuniversalize", pct=Fraction(1)) == frozenset("we")
    assert "s" not in admissible_strengths("deuniversalize", pct=Fraction(1))


def test_operationalize_row():
    assert admissible_strengths(
        "operationalize", output_kinds=("f", "da")) == frozenset("s")
    assert admissible_strengths(
        "operationalize", output_kinds=("da", "da")) == frozenset("w")


def test_signature_denials():
    assert "s" not in admissible_strengths("deuniversalize",
                                           pct=Fraction(1, 2))
    assert "w" not in admissible_strengths("observe")
    assert "s" not in admissible_strengths("operationalize",
                                           output_kinds=("da",))
    assert "w" not in admissible_strengths("operationalize",
                                           output_kinds=("f",))


# ---------------------------------------------------------------------------
# Claim verification.


class TestVerifyClaim:
    def setup_method(self):
        self.ctx = ReasonerContext()

    def test_single_output_strengthening(self):
        verdict, _ = verify_claim("s", goal("Alpha"), [goal("Alpha Fast")],
                                  self.ctx)
        assert verdict == VERIFIED

    def test_weakening_refuted(self):
        verdict, _ = verify_claim("w", goal("Alpha Fast"), [goal("Beta")],
                                  self.ctx)
        assert verdict == VIOLATED

    def test_joint_strengthening(self):
        ctx = ReasonerContext(axioms=[(D("Alpha"), D("Gamma"))])
        verdict, _ = verify_claim("s", goal("Gamma"),
                                  [goal("Alpha"), goal("Beta")], ctx)
        assert verdict == VERIFIED

    def test_weakening_per_output(self):
        verdict, _ = verify_claim("w", goal("Alpha Beta"),
                                  [goal("Alpha"), goal("Beta")], self.ctx)
        assert verdict == VERIFIED

    def test_equivalence_both_ways(self):
        verdict, _ = verify_claim("e", goal("Alpha Beta"),
                                  [goal("Alpha"), goal("Beta")], self.ctx)
        assert verdict == VERIFIED
        verdict, _ = verify_claim("e", goal("Alpha"), [goal("Alpha Beta")],
                                  self.ctx)
        assert verdict == VIOLATED

    def test_natural_language_asserted(self):
        verdict, why = verify_claim(
            "s", elem("goal", NLBody("collect constraints")),
            [goal("Alpha")], self.ctx)
        assert verdict == ASSERTED
        assert "natural-language" in why

    def test_mixed_body_forms_asserted(self):
        verdict, why = verify_claim(
            "s", elem("goal", DescBody(D("Alpha"))),
            [elem("qc", QualityBody("Speed", D("Alpha"), ast.Named("Good")))],
            self.ctx)
        assert verdict == ASSERTED
        assert "forms" in why

    def test_cross_kind_same_form_still_checked(self):
        # A goal refined into a functional goal with a narrower description
        # is a checkable claim even though the kinds differ.
        ctx = ReasonerContext(axioms=[(D("Beta"), D("Alpha"))])
        verdict, _ = verify_claim(
            "s", elem("goal", DescBody(D("Alpha"))),
            [elem("fg", DescBody(D("Beta")))], ctx)
        assert verdict == VERIFIED

    def test_function_refinement_verified(self):
        ctx = ReasonerContext(axioms=[(D("Airline_ticket"), D("Ticket"))])
        book = elem("f", DescBody(D("Book <object: Ticket>")))
        narrowed = elem("f", DescBody(D("Book <object: Airline_ticket>")))
        verdict, _ = verify_claim("s", book, [narrowed], ctx)
        assert verdict == VERIFIED

    def test_joint_function_claim_asserted(self):
        book = elem("f", DescBody(D("Book <object: Ticket>")))
        outs = [elem("f", DescBody(D("Book <object: Airline_ticket>"))),
                elem("f", DescBody(D("Book <object: Train_ticket>")))]
        verdict, why = verify_claim("s", book, outs, ReasonerContext())
        assert verdict == ASSERTED
        assert "joint claim" in why

    def test_quality_mismatch_undecided(self):
        q1 = elem("qg", QualityBody("Color", D("F1"), ast.Named("Good")))
        q2 = elem("qg", QualityBody("Speed", D("F1"), ast.Named("Good")))
        verdict, why = verify_claim("s", q2, [q1], self.ctx)
        assert verdict == UNDECIDED
        assert "quality" in why

    def test_domain_assumptions_drop_out(self):
        outs = [goal("Alpha Fast"),
                elem("da", DescBody(D("Background")))]
        verdict, _ = verify_claim("s", goal("Alpha"), outs, self.ctx)
        assert verdict == VERIFIED
