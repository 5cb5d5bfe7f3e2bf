"""Counterexample-search checks: kernels vs the reference evaluator."""
from fractions import Fraction

import pytest

from desiree.reasoner import kernels
from desiree.reasoner.interp import witness_from_json
from desiree.reasoner.oracle import (
    BoundsExceeded,
    build_problem,
    decode_interpretation,
    oracle_disprove,
    select_axioms,
)
from desiree.reasoner.semantics import (
    replay_witness,
    satisfies_axioms,
    violates_subsumption,
)
from desiree.syntax import ast
from desiree.syntax.parser import parse_description as pd


def scalar_first(d1, d2, axioms, limit=10000):
    """First violating index found by the reference evaluator."""
    table, total, _p, _b, _e = build_problem(d1, d2, axioms)
    for idx in range(min(total, limit)):
        interp = decode_interpretation(idx, table)
        if not satisfies_axioms(interp, axioms):
            continue
        if violates_subsumption(interp, d1, d2):
            return idx
    return -1


def kernel_first(d1, d2, axioms):
    selected = select_axioms(d1, d2, axioms)
    table, total, progs, bounds, enum_table = build_problem(d1, d2, selected)
    return kernels.find_violation(
        total, table.k, table.gamma, len(table.atoms), len(table.slots),
        len(table.named), len(table.inds), len(selected), progs, bounds,
        enum_table)


def test_no_witness_for_obvious_truths():
    assert oracle_disprove(pd("A"), pd("A")) is None
    assert oracle_disprove(pd("A B"), pd("A")) is None
    assert oracle_disprove(pd("A"), pd("A | B")) is None
    assert oracle_disprove(pd("A - B"), pd("A")) is None
    assert oracle_disprove(pd("Nothing"), pd("A")) is None
    assert oracle_disprove(pd("A"), pd("Anything")) is None
    assert oracle_disprove(pd("{a}"), pd("{a, b}")) is None
    assert oracle_disprove(pd("<s: =1 A>"), pd("<s: SOME A>")) is None


def test_plain_atom_witness_replays():
    w = oracle_disprove(pd("A"), pd("B"))
    assert w is not None
    assert replay_witness(w)
    assert replay_witness(witness_from_json(w.to_json()))


def test_some_vs_only_witness():
    w = oracle_disprove(pd("<s: SOME A>"), pd("<s: ONLY A>"))
    assert w is not None
    assert replay_witness(w)


def test_count_strengthening_disproved():
    w = oracle_disprove(pd("<s: =2 A>"), pd("<s: =1 A>"))
    assert w is not None
    assert replay_witness(w)


def test_projection_collects_stray_targets():
    # a B-filler plus a stray edge: the projection leaks the stray target
    w = oracle_disprove(pd("(A <s: B>).s"), pd("B"))
    assert w is not None
    assert replay_witness(w)


def test_enum_shrink_disproved():
    w = oracle_disprove(pd("{a, b}"), pd("{a}"))
    assert w is not None
    assert replay_witness(w)
    w2 = oracle_disprove(pd("Anything"), pd("{a}"))
    assert w2 is not None
    assert replay_witness(w2)


def test_axioms_block_witnesses():
    ab = (pd("A"), pd("B"))
    bc = (pd("B"), pd("C"))
    assert oracle_disprove(pd("A"), pd("B")) is not None
    assert oracle_disprove(pd("A"), pd("B"), [ab]) is None
    assert oracle_disprove(pd("A"), pd("C"), [ab, bc]) is None
    # declared disjointness closes the A&B corner
    disj = (pd("A B"), pd("Nothing"))
    assert oracle_disprove(pd("A B"), pd("Nothing")) is not None
    assert oracle_disprove(pd("A B"), pd("Nothing"), [disj]) is None


def test_universal_axiom_always_selected():
    # lhs Anything constrains every model even with no shared symbols
    ax = (pd("Anything"), pd("Q"))
    assert select_axioms(pd("A"), pd("Q"), [ax]) == [ax]
    assert oracle_disprove(pd("Anything"), pd("Q"), [ax]) is None


def test_unrelated_axiom_dropped():
    ax = (pd("X"), pd("Y"))
    assert select_axioms(pd("A"), pd("B"), [ax]) == []
    w = oracle_disprove(pd("A"), pd("B"), [ax])
    assert w is not None
    assert "X" not in w.interp.atoms


def test_interval_widening_monotone_only_for_some():
    # the default modifier demands exactly one filler in the region, so
    # widening is not entailed: a second edge in (20, 30] breaks it
    lo = pd("<has_value_in: [0, 20 (Sec.)]>")
    hi = pd("<has_value_in: [0, 30 (Sec.)]>")
    w = oracle_disprove(lo, hi)
    assert w is not None
    assert replay_witness(w)
    w2 = oracle_disprove(hi, lo)
    assert w2 is not None
    assert replay_witness(w2)
    # the separating filler value sits in (20, 30]
    vals = [w2.interp.grid[y - w2.interp.k]
            for (x, y) in w2.interp.slots.get("has_value_in", ())
            if x == w2.x and y >= w2.interp.k]
    assert any(isinstance(v, Fraction) and 20 < v <= 30 for v in vals)
    # at-least-one is monotone in the region
    lo_some = pd("<has_value_in: SOME [0, 20 (Sec.)]>")
    hi_some = pd("<has_value_in: SOME [0, 30 (Sec.)]>")
    assert oracle_disprove(lo_some, hi_some) is None
    assert oracle_disprove(hi_some, lo_some) is not None


def test_named_region_needs_axiom():
    fast = ast.Region(ast.Named("Fast"))
    slow = ast.Region(ast.Named("Slow"))
    w = oracle_disprove(fast, slow)
    assert w is not None
    assert replay_witness(w)
    assert oracle_disprove(fast, slow, [(fast, slow)]) is None


def test_mixed_units_are_skipped():
    sec = pd("<has_value_in: [0, 20 (Sec.)]>")
    minutes = pd("<has_value_in: [0, 30 (Min.)]>")
    with pytest.raises(BoundsExceeded):
        oracle_disprove(sec, minutes)
    pct = ast.Region(ast.Percent(Fraction(0), Fraction(1, 2)))
    with pytest.raises(BoundsExceeded):
        oracle_disprove(pd("<has_value_in: [0, 20 (Sec.)]>"),
                        ast.Slot("has_value_in", ast.ExactlyOne(), pct))


def test_budget_overflow_raises():
    text = "A " + " ".join(f"<s{i}: A>" for i in range(22))
    with pytest.raises(BoundsExceeded):
        oracle_disprove(pd(text), pd("B"))


SWEEP_CASES = [
    (pd("A"), pd("B"), []),
    (pd("A B"), pd("A"), []),
    (pd("A"), pd("A B"), []),
    (pd("{a, b}"), pd("{a}"), []),
    (pd("A | B"), pd("A"), [(pd("B"), pd("A"))]),
    (ast.Region(ast.Named("Fast")), ast.Region(ast.Named("Slow")), []),
    (pd("<s: SOME A>"), pd("<s: ONLY A>"), []),
]


@pytest.mark.parametrize("case", range(len(SWEEP_CASES)))
def test_kernel_matches_reference_sweep(case):
    d1, d2, axioms = SWEEP_CASES[case]
    got = kernel_first(d1, d2, axioms)
    want = scalar_first(d1, d2, axioms)
    assert got == want


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")
def test_backends_agree(monkeypatch):
    pairs = [
        (pd("A"), pd("B"), []),
        (pd("<s: SOME A>"), pd("<s: ONLY A>"), []),
        (pd("A B"), pd("A"), []),
        (pd("{a, b}"), pd("{a}"), []),
        (pd("A"), pd("C"), [(pd("A"), pd("B")), (pd("B"), pd("C"))]),
    ]
    results = {}
    for flag in ("0", "1"):
        monkeypatch.setenv("DESIREE_PURE_NUMPY", flag)
        name = kernels.backend_name()
        assert name == ("numpy" if flag == "1" else "numba")
        for i, (d1, d2, axioms) in enumerate(pairs):
            w = oracle_disprove(d1, d2, axioms)
            results.setdefault(i, []).append(
                None if w is None else w.to_json())
    for outcomes in results.values():
        assert outcomes[0] == outcomes[1]
