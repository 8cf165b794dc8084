import pytest
from hypothesis import assume, given, settings, strategies as st

from roughproof.calculus import (
    CALCULI, apply_backward, canonical_calculus, catalog, chain_tree, check_node,
    check_proof, compile_backward, display_occurrence, expanded_rules, export_rules,
    load_rules, match_schema, rule_set, substitute,
)
from roughproof.errors import InvalidProof, UnknownCalculus
from roughproof.parser import parse_proof, parse_sequent, parse_term
from roughproof.regression import (
    GOLDEN_FILES, load_golden, random_formula, random_sequent, random_structure,
)
from roughproof.syntax import (
    PRECEDENT, SUCCEDENT, STRUCT_SIGS, ProofTree, Sequent, atom, check_sequent, child_sides,
    meta_info,
)


def rule(calculus, name):
    return next(r for r in rule_set(calculus) if r.name == name)


def seq(text, schema=False):
    return parse_sequent(text, schema=schema)


def test_res_d_in_tqba():
    r = rule("D.TQBA", "res_D")
    assert r.bidirectional and r.kind == "display"
    assert r.conclusion == seq("(seq (s-wedge X Y) Z)", True)
    assert r.premises == (seq("(seq Y (s-arrow X Z))", True),)


def test_ia3_in_ia3_calculus():
    r = rule("D.IA3", "ia3")
    assert r.premises == (seq("(seq X Y)", True), seq("(seq W Z)", True))
    assert r.conclusion == seq(
        "(seq (s-wedge X (s-circC (s-diamC W))) (s-vee (s-circI (s-boxI Y)) Z))", True)


def test_gal_ki_only_from_tqba5():
    assert "gal_KI" not in {r.name for r in rule_set("D.TQBA")}
    assert "gal_KI" in {r.name for r in rule_set("D.TQBA5")}


def test_calculi_are_nested():
    names = {c: {r.name for r in rule_set(c)} for c in CALCULI}
    assert names["D.TQBA"] < names["D.TQBA5"]
    for ext in ("D.IA1", "D.IA2", "D.IA3"):
        assert names["D.TQBA5"] < names[ext] < names["D.PRA"]


def test_aliases():
    assert canonical_calculus("pra") == "D.PRA"
    tree = ProofTree("pra", seq("(seq (s-wedge p (s-circC (s-diamC q))) (s-vee (s-circI (s-boxI p)) q))"),
                     [ProofTree("Id_D", seq("(seq p p)")), ProofTree("Id_D", seq("(seq q q)"))])
    assert check_proof(tree, "D.IA3")
    with pytest.raises(UnknownCalculus):
        canonical_calculus("D.NOPE")


def test_operational_flag_drops_diamond_and_box_rules():
    names = {r.name for r in rule_set("D.PRA", operational_diamI_boxC=False)}
    assert not names & {"diamI_L", "diamI_R", "boxC_L", "boxC_R"}
    assert {"diamC_L", "boxI_R"} <= names


def test_match_schema():
    concl = rule("D.TQBA", "res_D").conclusion
    subs = match_schema(concl, seq("(seq (s-wedge p q) r)"))
    assert subs == [{"X": atom("p"), "Y": atom("q"), "Z": atom("r")}]
    assert match_schema(concl, seq("(seq p r)")) == []


def test_match_respects_sorts():
    schema = seq("(seq Gamma Delta)", True)
    assert match_schema(schema, seq("(seq (boxI p) (boxI q))"))
    assert match_schema(schema, seq("(seq p q)")) == []


@pytest.mark.parametrize("name", GOLDEN_FILES)
def test_goldens_check(name):
    tree, calc = load_golden(name)
    assert check_proof(tree, calc)


def test_identity_on_distinct_atoms_rejected():
    with pytest.raises(InvalidProof) as exc:
        check_proof(parse_proof("(rule Id_D (seq p q))"), "D.TQBA")
    assert exc.value.path == ()
    assert exc.value.reason == "Id_D requires identical atoms"


def test_error_path_points_at_bad_node():
    bad = parse_proof("""
        (rule or_R (seq (neg p) (or (neg p) q))
          (rule W_D (seq (neg p) (s-vee (neg p) q))
            (rule Id_D (seq (neg p) (neg p)))))""")
    with pytest.raises(InvalidProof) as exc:
        check_proof(bad, "D.TQBA")
    assert exc.value.path == (0, 0)


def test_rule_outside_calculus_rejected():
    tree, _ = load_golden("golden_t6.mtp")
    with pytest.raises(InvalidProof) as exc:
        check_proof(tree, "D.TQBA5")
    assert "not part of" in exc.value.reason


@pytest.mark.parametrize("name", GOLDEN_FILES)
def test_subtrees_of_valid_proofs_check(name):
    tree, calc = load_golden(name)
    for _, node in tree.walk():
        assert check_proof(node, calc)


# ---------------------------------------------------------------- display

def _replays(bottom, steps, top, calc="D.PRA"):
    tree = chain_tree(bottom, steps, ProofTree("?", top))
    for path, node in tree.walk():
        if node.rule != "?":
            check_node(node, calc, path)
    return True


@pytest.mark.parametrize("text, pos, expect, last", [
    ("(seq (s-wedge p q) r)", (0, 0), "(seq p (s-arrow q r))", "res_D"),
    ("(seq (s-circI (boxI p)) r)", (0, 0), "(seq (boxI p) (s-boxI r))", "ad_DKI"),
    ("(seq (s-neg p) r)", (1,), "(seq (s-neg p) r)", None),
    ("(seq (s-neg p) r)", (0, 0), "(seq (s-neg r) p)", "gal_D"),
])
def test_display_occurrence(text, pos, expect, last):
    s = seq(text)
    shown, steps = display_occurrence(s, pos)
    assert shown == seq(expect)
    if last:
        assert steps[-1][0] == last
    assert _replays(s, steps, shown)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_display_replays_through_checker(rng):
    s = random_sequent(rng, depth=3)
    positions = [p for p in _positions(s) if len(p) > 1]
    assume(positions)
    pos = rng.choice(positions)
    shown, steps = display_occurrence(s, pos)
    assert _replays(s, steps, shown)


def _positions(s):
    out = []

    def walk(t, path):
        out.append(path)
        if t.is_structural:
            for i, a in enumerate(t.args):
                walk(a, path + (i,))
    walk(s.left, (0,))
    walk(s.right, (1,))
    return out


# ---------------------------------------------------------------- bidirectional rules

def _meta_sides(term, side, acc):
    if term.tag == "meta":
        acc.setdefault(term.name, side)
        return acc
    if term.tag in STRUCT_SIGS:
        for a, s in zip(term.args, child_sides(term.tag, side)):
            _meta_sides(a, s, acc)
    else:
        for a in term.args:
            _meta_sides(a, None, acc)
    return acc


def _instantiate(rng, schema_seq):
    sides = _meta_sides(schema_seq.left, PRECEDENT, {})
    _meta_sides(schema_seq.right, SUCCEDENT, sides)
    sub = {}
    for name, side in sides.items():
        sort, kind = meta_info(name)
        if kind == "atom":
            sub[name] = atom(rng.choice("pqr"))
        elif kind == "formula" or side is None:
            sub[name] = random_formula(rng, sort, 2)
        else:
            sub[name] = random_structure(rng, sort, side, 2)
    return sub


_DOUBLE = [r for r in catalog() if r.bidirectional]


@settings(max_examples=500, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(_DOUBLE))
def test_double_line_rules_check_both_ways(rng, r):
    sub = _instantiate(rng, r.conclusion)
    for p in r.premises:
        sub.update({k: v for k, v in _instantiate(rng, p).items() if k not in sub})
    top, bottom = substitute(r.premises[0], sub), substitute(r.conclusion, sub)
    try:
        check_sequent(top)
        check_sequent(bottom)
    except Exception:
        assume(False)
    check_node(ProofTree(r.name, bottom, [ProofTree("?", top)]), "D.PRA")
    check_node(ProofTree(r.name, top, [ProofTree("?", bottom)]), "D.PRA")


# ---------------------------------------------------------------- backward application

_FORMS = [f for forms in expanded_rules("D.PRA").values() for f in forms]


@settings(max_examples=400, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(_FORMS))
def test_compiled_backward_agrees(rng, form):
    # instantiate the conclusion so that matches actually happen, then perturb
    sub = _instantiate(rng, form.conclusion)
    goal = substitute(form.conclusion, sub)
    if rng.random() < 0.3:
        goal = random_sequent(rng, 3)
    assert compile_backward(form)(goal) == apply_backward(form, goal)


def test_rules_export_round_trip():
    text = export_rules()
    back = load_rules(text)
    assert [(r.name, r.premises, r.conclusion, r.bidirectional) for r in back] == \
        [(r.name, r.premises, r.conclusion, r.bidirectional) for r in catalog()]


def test_sequent_values():
    assert seq("(seq p p)") == Sequent(parse_term("p"), parse_term("p"))
