import pytest
from hypothesis import given, settings, strategies as st

from roughproof import algebra
from roughproof.calculus import check_proof
from roughproof.errors import UnsupportedConnective
from roughproof.parser import parse_sequent, parse_term
from roughproof.regression import TARGET_DEPTHS, TARGET_NODES, prove_target, random_formula
from roughproof.search import SearchBudget, derive_identity, prove
from roughproof.syntax import Sequent, atom
from roughproof.translate import regression_targets

EXCLUDED_MIDDLE = "(seq top (or (circI (boxI p)) (neg (circI (boxI p)))))"


def test_interior_deflationary_proved():
    r = prove(parse_sequent("(seq (circI (boxI p)) p)"), "D.TQBA", SearchBudget(max_depth=20))
    assert r.proved and check_proof(r.proof, "D.TQBA")


@pytest.mark.parametrize("pruning", [True, False])
def test_excluded_middle_exhausted_without_cgri(pruning):
    r = prove(parse_sequent(EXCLUDED_MIDDLE), "D.TQBA",
              SearchBudget(max_depth=25, semantic_pruning=pruning))
    assert r.outcome == "Exhausted" and r.proof is None


def test_weakening_goal_shallow():
    r = prove(parse_sequent("(seq p (or p q))"), "D.TQBA", SearchBudget(max_depth=4))
    assert r.proved and r.stats.depth_bound <= 4


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_depth=0)


def test_node_budget_stops_search():
    r = prove(parse_sequent(EXCLUDED_MIDDLE), "D.TQBA",
              SearchBudget(max_depth=25, max_nodes=50, semantic_pruning=False))
    assert not r.proved and r.stats.nodes <= 51


@pytest.mark.parametrize("label", sorted(TARGET_DEPTHS))
def test_regression_target(label):
    goal = regression_targets()[label]
    r = prove_target(goal)
    assert r.proved, label
    assert r.stats.nodes <= TARGET_NODES
    assert check_proof(r.proof, goal.calculus)
    assert r.proof.conclusion == goal.target


def test_search_is_deterministic():
    goal = regression_targets()["iv"]
    assert prove_target(goal).proof == prove_target(goal).proof


_MODELS = [algebra.to_heterogeneous(T) for T in algebra.enumerate_algebras(4)]


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_proved_sequents_are_checked_and_valid(rng):
    goal = Sequent(random_formula(rng, "D", 2), random_formula(rng, "D", 2))
    r = prove(goal, "D.TQBA5", SearchBudget(max_depth=8, max_nodes=3000,
                                            semantic_pruning=False))
    if r.proved:
        assert check_proof(r.proof, "D.TQBA5")
        assert r.proof.conclusion == goal
        tq5 = [H for H, T in zip(_MODELS, algebra.enumerate_algebras(4))
               if "tqBa5" in T.classify()]
        assert all(algebra.holds(goal, H) for H in tq5)


# ---------------------------------------------------------------- identities

def test_identity_on_atom_is_axiom():
    tree = derive_identity(atom("p"))
    assert tree.rule == "Id_D" and not tree.children


def test_identity_through_heterogeneous_connectives():
    f = parse_term("(circI (boxI p))")
    tree = derive_identity(f, "D.TQBA")
    assert check_proof(tree, "D.TQBA")
    assert tree.conclusion == Sequent(f, f)
    assert {"boxI_L", "boxI_R", "circI_L", "circI_R"} <= tree.rules_used()


def test_identity_on_conjunction():
    f = parse_term("(and p q)")
    tree = derive_identity(f, "D.TQBA")
    assert check_proof(tree, "D.TQBA")
    assert {"and_L", "and_R"} <= tree.rules_used()


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["D", "KI", "KC"]))
def test_identity_any_formula(rng, sort):
    f = random_formula(rng, sort, 4)
    tree = derive_identity(f, "D.PRA")
    assert tree.conclusion == Sequent(f, f)
    assert check_proof(tree, "D.PRA")


def test_identity_rejects_unavailable_connectives():
    with pytest.raises(UnsupportedConnective):
        derive_identity(parse_term("(circI (simK (boxI p)))"), "D.TQBA")
    with pytest.raises(UnsupportedConnective):
        derive_identity(parse_term("(diamI p)"), "D.PRA", operational_diamI_boxC=False)
