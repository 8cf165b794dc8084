import pytest
from hypothesis import given, settings, strategies as st

from roughproof.algebra import enumerate_algebras, holds, to_heterogeneous
from roughproof.errors import ParseError
from roughproof.parser import parse_sequent, parse_term
from roughproof.translate import (
    LOGICS, LFormula, latom, lmk, parse_lformula, preservation_failures, random_lformula,
    render_lformula, single_valid, t_translate, translate_hilbert,
)

ALL = enumerate_algebras(5)


def T(text):
    return parse_term(text)


def test_interior_translation():
    assert t_translate(parse_lformula("(I p)")) == T("(circI (boxI p))")


def test_atom_translation():
    assert t_translate(latom("p")) == T("p")


def test_compositional_translation():
    f = parse_lformula("(C (neg (I p)))")
    assert t_translate(f) == T("(circC (diamC (neg (circI (boxI p)))))")


def test_lformula_constructors():
    assert lmk("and", latom("p"), LFormula("top")) == parse_lformula("(and p top)")
    with pytest.raises(ValueError):
        lmk("I", latom("p"), latom("q"))


@pytest.mark.parametrize("text", ["(I p q)", "(K p)", "()", "(I)", "P", "(and p"])
def test_lformula_parse_errors(text):
    with pytest.raises(ParseError):
        parse_lformula(text)


def _goals(logic):
    return {g.label: g for g in translate_hilbert(logic)}


def test_tqba5_has_closed_interior_goal():
    g = _goals("H.TQBA5")["vi"]
    assert g.target == parse_sequent("(seq (circC (diamC (circI (boxI p)))) (circI (boxI p)))")


def test_ia1_has_excluded_middle_goal():
    g = _goals("H.IA1")["ix"]
    assert g.target == parse_sequent("(seq top (or (circI (boxI p)) (neg (circI (boxI p)))))")


def test_ia3_rule_goal():
    g = _goals("H.IA3")["x"]
    assert g.target == parse_sequent(
        "(seq (and p (circC (diamC q))) (or (circI (boxI p)) q))")
    assert len(g.premises) == 2


def test_logic_names():
    assert _goals("ia2").keys() == _goals("H.IA2").keys()
    assert {"vi", "vii"} <= _goals("H.IA2").keys()
    assert set(_goals("H.PRA")) >= {"vi", "vii", "ix", "x"}
    with pytest.raises(ValueError):
        translate_hilbert("H.K4")


@pytest.mark.parametrize("logic", LOGICS)
def test_goals_valid_in_their_class(logic):
    cls = {"H.TQBA": "tqBa", "H.TQBA5": "tqBa5", "H.IA1": "IA1", "H.IA2": "IA2",
           "H.IA3": "IA3", "H.PRA": "pra"}[logic]
    models = [to_heterogeneous(A) for A in enumerate_algebras(5, cls)]
    for g in translate_hilbert(logic):
        assert all(holds(g.target, H) for H in models), g.label


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False), st.randoms(use_true_random=False))
def test_translation_injective(r1, r2):
    a, b = random_lformula(r1, 4), random_lformula(r2, 4)
    assert (a == b) == (t_translate(a) == t_translate(b))


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_lformula_round_trip(rng):
    f = random_lformula(rng, 5)
    assert parse_lformula(render_lformula(f)) == f


@pytest.mark.parametrize("index", range(len(ALL)))
def test_preservation_and_reflection(index):
    assert preservation_failures(ALL[index], count=200, depth=4, seed=index) == []


def test_preservation_sweep_sees_both_outcomes():
    # the biased sampler must produce valid and invalid pairs, or the sweep is vacuous
    import random
    rng = random.Random(0)
    T = ALL[5]
    seen = set()
    for _ in range(200):
        a, b = random_lformula(rng, 3), random_lformula(rng, 3)
        seen.add(single_valid(T, a, lmk("or", a, b)))
        seen.add(single_valid(T, a, b))
    assert seen == {True, False}
