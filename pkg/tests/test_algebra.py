import itertools

import pytest
from hypothesis import given, settings, strategies as st

from brute_algebras import _relabel, brute_algebras, brute_labels
from roughproof import algebra, oracles
from roughproof.algebra import (
    HeterogeneousAlgebra, ModelBank, check_rule_soundness, countermodel, enumerate_algebras,
    eval_term, holds, interior_tables, interior_tables_brute, is_isomorphic, kernels, to_heterogeneous,
    to_single,
)
from roughproof.calculus import rule_set
from roughproof.errors import CapExceeded, NotTqBa
from roughproof.lattice import Lattice
from roughproof.parser import parse_sequent, parse_term
from roughproof.regression import random_sequent
from roughproof.translate import latom, lmk, translate_sequent

ALL = enumerate_algebras(5)
EXCLUDED_MIDDLE = "(seq top (or (circI (boxI p)) (neg (circI (boxI p)))))"


def rule(calc, name):
    return next(r for r in rule_set(calc) if r.name == name)


# ---------------------------------------------------------------- classification

def test_two_element_boolean_is_everything(bool2):
    assert bool2.classify() == {"tqBa", "tqBa5", "IA1", "IA2", "IA3", "pra"}


def test_rough_chain_is_pra(chain3):
    assert "pra" in chain3.classify()


def test_skew_boolean_is_only_tqba(bool4_skew):
    assert bool4_skew.classify() == {"tqBa"}
    # C(I x) = C x = neg I neg x = neg I y = neg 0 = 1, not x
    x = bool4_skew.names.index("x")
    assert bool4_skew.closure[bool4_skew.interior[x]] == bool4_skew.lattice.top


def test_validate_rejects_non_interior(bool2):
    broken = algebra.FiniteRoughAlgebra(bool2.lattice, [1, 1])
    with pytest.raises(NotTqBa):
        broken.validate()


# ---------------------------------------------------------------- kernels

def test_kernels_of_identity_interior(bool2):
    k = kernels(bool2)
    assert k.KI.n == k.KC.n == 2
    assert k.iota == k.gamma == k.eI == k.eC == (0, 1)


def test_kernels_of_rough_chain(chain3):
    k = kernels(chain3)
    assert [chain3.names[e] for e in k.eI] == ["0", "1"]
    a = chain3.names.index("a")
    assert k.iota[a] == 0
    assert k.KI.join == ((0, 1), (1, 1)) and k.KI.meet == ((0, 0), (0, 1))


@pytest.mark.parametrize("index", range(len(ALL)))
def test_oracle_suite(index):
    assert oracles.all_failures(ALL[index]) == {}


def test_kernel_join_law_finding():
    # iota preserves joins exactly when T7 holds; IA1 alone does not force it
    for T in ALL:
        holds_t7 = "T7" not in T.axiom_failures()
        assert (oracles.iota_join_failures(T) == {}) == holds_t7
    ia1_without = [T for T in ALL if "IA1" in T.classify() and oracles.iota_join_failures(T)]
    assert ia1_without


# ---------------------------------------------------------------- heterogeneous

def test_heterogeneous_of_two_element(bool2):
    H = to_heterogeneous(bool2)
    assert H.D.n == H.LI.n == H.LC.n == 2
    assert H.classify() == {"h" + c for c in bool2.classify()}


@pytest.mark.parametrize("T", [T for T in ALL if "tqBa5" in T.classify()])
def test_kernel_iso_witness(T):
    k = kernels(T)
    f = [k.gamma[k.eI[x]] for x in range(k.KI.n)]
    assert sorted(f) == list(range(k.KC.n))
    assert all(k.KI.leq[x][y] == k.KC.leq[f[x]][f[y]]
               for x in range(k.KI.n) for y in range(k.KI.n))
    assert is_isomorphic(k.KI, k.KC) is not None


@pytest.mark.parametrize("T", [T for T in ALL if "IA1" in T.classify()])
def test_ia1_kernel_is_boolean(T):
    k = kernels(T)
    KI = k.KI
    for x in range(KI.n):
        assert KI.join[x][KI.neg[x]] == KI.top and KI.meet[x][KI.neg[x]] == KI.bot


@pytest.mark.parametrize("index", range(len(ALL)))
def test_round_trips(index):
    T = ALL[index]
    H = to_heterogeneous(T)
    assert is_isomorphic(to_single(H), T) is not None
    assert is_isomorphic(to_heterogeneous(to_single(H)), H) is not None


def test_identity_maps_give_identity_operators(bool2):
    L = bool2.lattice
    H = HeterogeneousAlgebra(L, Lattice(L.leq), Lattice(L.leq), (0, 1), (0, 1), (0, 1), (0, 1))
    T = to_single(H)
    assert T.interior == T.closure == (0, 1)


def test_is_isomorphic_trivial_and_size_mismatch(chain3, bool4_skew):
    assert is_isomorphic(chain3, chain3) == (0, 1, 2)
    assert is_isomorphic(kernels(chain3).KI, kernels(bool4_skew).KI) is None


# ---------------------------------------------------------------- evaluation

@pytest.mark.parametrize("index", range(len(ALL)))
def test_eval_interior_matches_single(index):
    T = ALL[index]
    H = to_heterogeneous(T)
    f = parse_term("(circI (boxI p))")
    for a in range(T.n):
        assert eval_term(f, H, {"p": a}) == T.interior[a]
    assert eval_term(parse_term("top"), H, {}) == H.D.top


def test_eval_closure_in_skew_boolean(bool4_skew):
    H = to_heterogeneous(bool4_skew)
    assert eval_term(parse_term("(circC (diamC p))"), H, {"p": "x"}) == H.D.top


def test_holds_examples(chain3_identity):
    deflation = parse_sequent("(seq (circI (boxI p)) p)")
    for T in ALL:
        H = to_heterogeneous(T)
        assert holds(deflation, H)
        assert holds(parse_sequent("(seq p p)"), H)
    assert chain3_identity.classify() >= {"tqBa5"} and "IA1" not in chain3_identity.classify()
    H = to_heterogeneous(chain3_identity)
    assert not holds(parse_sequent(EXCLUDED_MIDDLE), H)
    assert algebra.counter_assignment(parse_sequent(EXCLUDED_MIDDLE), H) == {"p": 1}


def test_rule_soundness_examples():
    ia3 = rule("D.IA3", "ia3")
    for T in enumerate_algebras(4, "IA3"):
        assert check_rule_soundness(ia3, to_heterogeneous(T)) is None
    broken = [T for T in enumerate_algebras(4, "tqBa5") if "IA3" not in T.classify()]
    assert broken
    assert any(check_rule_soundness(ia3, to_heterogeneous(T)) is not None for T in broken)
    ident = rule("D.TQBA", "Id_D")
    assert all(check_rule_soundness(ident, to_heterogeneous(T)) is None for T in ALL)


# ---------------------------------------------------------------- enumeration

def _canonical(T):
    L = T.lattice
    r = range(L.n)
    return min(_relabel(L.leq, L.neg, T.interior, p, r) for p in itertools.permutations(r))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    mine = [T for T in ALL if T.n == n]
    oracle = brute_algebras(n)
    assert len(mine) == len(oracle)
    assert {_canonical(T) for T in mine} == {
        min(_relabel(a[0], a[3], a[4], p, range(n)) for p in itertools.permutations(range(n)))
        for a in oracle}
    assert sorted(sorted(T.classify()) for T in mine) == sorted(sorted(brute_labels(a)) for a in oracle)


def test_enumeration_sizes_frozen():
    # frozen from the brute-force oracle above, which also gives 46 at size 6
    assert [sum(T.n == n for T in ALL) for n in (2, 3, 4, 5)] == [1, 2, 10, 8]


def test_smallest_enumeration_is_two_element():
    (T,) = enumerate_algebras(2)
    assert T.interior == (0, 1)


def test_rough_chain_enumerated(chain3):
    assert any(is_isomorphic(T, chain3) for T in enumerate_algebras(3, "IA1"))


def test_enumerated_algebras_validate():
    for T in ALL:
        T.validate()
        assert T.classify() <= set(algebra.SINGLE_CLASSES)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_algebras(7)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_interior_generator_matches_brute_force(n):
    for T in [T for T in ALL if T.n == n]:
        assert set(interior_tables(T.lattice)) == set(interior_tables_brute(T.lattice))


# ---------------------------------------------------------------- countermodels

def test_countermodel_for_join_preservation(bool4_skew):
    p, q = latom("p"), latom("q")
    seq = translate_sequent(lmk("I", lmk("or", p, q)), lmk("or", lmk("I", p), lmk("I", q)))
    assert countermodel(seq, "tqBa", 3) is None
    H, asg = countermodel(seq, "tqBa", 4)
    assert H.D.n == 4 and not holds(seq, H)
    # the skew Boolean algebra with p = x, q = y is a witness as well
    Hb = to_heterogeneous(bool4_skew)
    asg = {"p": "x", "q": "y"}
    assert eval_term(seq.left, Hb, asg) == Hb.D.top
    assert eval_term(seq.right, Hb, asg) == Hb.D.names.index("x")


def test_no_countermodel_for_deflation():
    seq = translate_sequent(lmk("I", latom("p")), latom("p"))
    assert countermodel(seq, "tqBa", 5) is None


def test_atomic_countermodel_in_pra():
    H, asg = countermodel(parse_sequent("(seq p q)"), "pra", 4)
    assert H.D.n == 2 and asg == {"p": 1, "q": 0}


# ---------------------------------------------------------------- files and batching

@pytest.mark.parametrize("index", range(len(ALL)))
def test_alg_format_round_trip(index):
    T = ALL[index]
    text = algebra.dumps(T)
    assert algebra.dumps(algebra.loads(text)) == text
    H = to_heterogeneous(T)
    htext = algebra.dumps(H)
    assert algebra.dumps(algebra.loads(htext)) == htext
    assert is_isomorphic(algebra.loads(htext), H) is not None


_MODELS = [to_heterogeneous(T) for T in enumerate_algebras(4, "tqBa5")]
_BANK = ModelBank(_MODELS, ["p", "q", "r", "p1", "q_2"])


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_model_bank_agrees_with_sweep(rng):
    seq = random_sequent(rng, depth=3)
    assert _BANK.valid(seq) == all(holds(seq, H) for H in _MODELS)
