import pytest
from hypothesis import given, settings, strategies as st

from roughproof import algebra
from roughproof.algebra import _eval
from roughproof.errors import IllSorted, PolarityError
from roughproof.parser import parse_sequent, parse_term
from roughproof.regression import random_structure
from roughproof.syntax import (
    D, KI, PRECEDENT, SUCCEDENT, atom, atoms, interpret, interpret_sequent, mk,
    normalize, sort_of,
)


def S(text):
    return parse_term(text, schema=True)


def test_sort_of_heterogeneous_formulas():
    assert sort_of(mk("circI", mk("boxI", atom("p")))) == D
    assert sort_of(mk("boxI", mk("circC", mk("diamC", atom("p"))))) == KI


def test_ill_sorted_reports_path():
    with pytest.raises(IllSorted) as exc:
        sort_of(mk("cap", atom("p"), mk("1I")))
    assert exc.value.path == (0,)


def test_interpret_box_in_succedent():
    t = interpret(S("(s-circI (s-boxI X))"), SUCCEDENT)
    assert t == ("eI", ("iota", ("var", "X", D)))


def test_interpret_unit_in_precedent():
    assert interpret(S("(s-wedge X s-top)"), PRECEDENT) == ("D.meet", ("var", "X", D), ("D.top",))


def test_interpret_ia3_conclusion():
    seq = parse_sequent("(seq (s-wedge X (s-circC (s-diamC W))) (s-vee (s-circI (s-boxI Y)) Z))",
                        schema=True)
    lhs, rhs = interpret_sequent(seq)
    v = lambda n: ("var", n, D)  # noqa: E731
    assert lhs == ("D.meet", v("X"), ("eC", ("gamma", v("W"))))
    assert rhs == ("D.join", ("eI", ("iota", v("Y"))), v("Z"))


def test_check_structure_rejected_in_precedent():
    with pytest.raises(PolarityError):
        interpret(S("(s-vee X Y)"), PRECEDENT)


def test_normalize_ac_and_duplicates():
    assert normalize(S("(s-wedge Y (s-wedge X X))")) == S("(s-wedge X Y)")


def test_normalize_drops_units():
    assert normalize(S("(s-vee X s-bot)")) == S("X")


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from([PRECEDENT, SUCCEDENT]))
def test_normalize_idempotent(rng, side):
    s = random_structure(rng, rng.choice([D, D, KI, "KC"]), side, depth=5)
    once = normalize(s)
    assert normalize(once) == once


_MODELS = [algebra.to_heterogeneous(T) for T in algebra.enumerate_algebras(4, "tqBa5")]


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from([PRECEDENT, SUCCEDENT]))
def test_normalize_preserves_value(rng, side):
    s = random_structure(rng, D, side, depth=4)
    names = sorted(atoms(s))
    H = rng.choice(_MODELS)
    asg = {a: rng.randrange(H.D.n) for a in names}
    assert _eval(interpret(s, side), H, asg) == _eval(interpret(normalize(s), side), H, asg)


def test_interpret_is_compositional():
    # filling a context with t is read as the context's reading filled with t's reading
    ctx = S("(s-wedge X (s-neg Y))")
    t = S("(s-vee Z W)")
    filled = mk("s-wedge", S("X"), mk("s-neg", t))
    expect = ("D.meet", ("var", "X", D), ("D.neg", interpret(t, SUCCEDENT)))
    assert interpret(filled, PRECEDENT) == expect
    assert interpret(ctx, PRECEDENT)[2] == ("D.neg", ("var", "Y", D))
