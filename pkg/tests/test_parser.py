import pytest
from hypothesis import given, settings, strategies as st

from roughproof.calculus import check_proof
from roughproof.errors import IllSorted, InvalidProof, ParseError
from roughproof.parser import (
    normalize_whitespace, parse_proof, parse_sequent, parse_term, render, render_proof,
    render_term,
)
from roughproof.regression import (
    GOLDEN_FILES, golden_text, random_formula, random_sequent, random_structure,
)
from roughproof.syntax import D, KI, PRECEDENT, SUCCEDENT, Term, atom, meta, mk


def test_formula_parses():
    assert parse_term("(circI (boxI p))") == mk("circI", mk("boxI", atom("p")))


def test_structure_markers():
    t = parse_term("(s-vee (s-circI (s-boxI X)) Z)", schema=True)
    assert t == mk("s-vee", mk("s-circI", mk("s-boxI", meta("X"))), meta("Z"))


def test_sort_error_surfaces_at_first_argument():
    with pytest.raises(IllSorted) as exc:
        parse_term("(cap p 1I)")
    assert exc.value.path == (0,)


@pytest.mark.parametrize("text, line, col", [
    ("(and p", 1, 1),
    ("(and p q r)", 1, 2),
    ("(foo p)", 1, 2),
    ("(and p q))", 1, 10),
    ("(or p\n  (neg))", 2, 4),
])
def test_parse_error_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_term(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_metavariables_only_in_schemas():
    with pytest.raises(ParseError):
        parse_term("X")
    assert parse_term("X", schema=True) == meta("X")


def test_identity_leaf():
    tree = parse_proof("(rule Id_D (seq p p))")
    assert tree.rule == "Id_D" and not tree.children
    assert tree.conclusion == parse_sequent("(seq p p)")


def test_binary_cut_node():
    tree = parse_proof("(rule Cut_D (seq p p) (rule Id_D (seq p p)) (rule Id_D (seq p p)))")
    assert tree.rule == "Cut_D" and len(tree.children) == 2


def test_parser_does_not_validate_logic():
    tree = parse_proof("(rule Id_D (seq p q))")
    with pytest.raises(InvalidProof):
        check_proof(tree, "D.TQBA")


def test_render_fixpoint():
    assert render(parse_term("(and p q)")) == "(and p q)"


@pytest.mark.parametrize("name", GOLDEN_FILES)
def test_golden_render_matches_file(name):
    text = golden_text(name)
    assert normalize_whitespace(render_proof(parse_proof(text))) == normalize_whitespace(text)


@settings(max_examples=500, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from([D, KI, "KC"]))
def test_formula_round_trip(rng, sort):
    f = random_formula(rng, sort, depth=8)
    assert parse_term(render_term(f)) == f


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from([PRECEDENT, SUCCEDENT]))
def test_structure_round_trip(rng, side):
    s = random_structure(rng, D, side, depth=6)
    assert parse_term(render_term(s)) == s


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_sequent_round_trip(rng):
    seq = random_sequent(rng, depth=5)
    assert parse_sequent(render(seq)) == seq


@given(st.text(alphabet="()pq andorneg\n", max_size=30))
def test_garbage_raises_only_parse_errors(text):
    try:
        parse_term(text)
    except (ParseError, IllSorted):
        pass
    except Exception as exc:  # pragma: no cover
        pytest.fail(f"unexpected {type(exc).__name__}: {exc}")


def test_terms_are_hashable_values():
    a, b = parse_term("(and p q)"), parse_term("(and  p\n q)")
    assert a == b and hash(a) == hash(b) and isinstance(a, Term)
