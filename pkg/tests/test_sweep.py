import itertools

import pytest
from hypothesis import given, settings, strategies as st

from roughproof import algebra, sweep
from roughproof.algebra import _eval, enumerate_algebras, to_heterogeneous
from roughproof.calculus import catalog
from roughproof.regression import random_sequent
from roughproof.syntax import interpret_sequent

BACKENDS = sweep.backends()
MODELS = [to_heterogeneous(T) for T in enumerate_algebras(4, "tqBa5")]


def _vars(t, acc):
    if t[0] == "var":
        acc[t[1]] = t[2]
    else:
        for a in t[1:]:
            _vars(a, acc)
    return acc


def naive_falsify(premises, conclusion, H):
    """First falsifying assignment by plain recursive evaluation, same order as the sweep."""
    names = {}
    for lhs, rhs in list(premises) + [conclusion]:
        _vars(lhs, names)
        _vars(rhs, names)
    order = sorted(names.items())
    for values in itertools.product(*(range(H.carrier(s).n) for _, s in order)):
        asg = {n: v for (n, _), v in zip(order, values)}

        def le(pair):
            lhs, rhs = pair
            sort = algebra.result_sort(lhs)
            return H.carrier(sort).leq[_eval(lhs, H, asg)][_eval(rhs, H, asg)]
        if all(le(p) for p in premises) and not le(conclusion):
            return asg
    return None


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert sweep.BACKEND in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_backend_matches_naive_on_rules(name, monkeypatch):
    monkeypatch.setattr(algebra, "sweep", BACKENDS[name])
    rules = [d for r in catalog() for d in r.directions()]
    for H in MODELS[:6]:
        for r in rules:
            prems = [interpret_sequent(p) for p in r.premises]
            concl = interpret_sequent(r.conclusion)
            assert algebra.falsify(prems, concl, H) == naive_falsify(prems, concl, H), r.name


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_backends_agree_on_random_sequents(rng):
    seq = random_sequent(rng, depth=3)
    H = rng.choice(MODELS)
    pair = interpret_sequent(seq)
    expect = naive_falsify([], pair, H)
    for fn in BACKENDS.values():
        algebra_sweep = algebra.sweep
        try:
            algebra.sweep = fn
            assert algebra.falsify([], pair, H) == expect
        finally:
            algebra.sweep = algebra_sweep


def test_pure_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, ROUGHPROOF_PURE="1")
    proc = subprocess.run([sys.executable, "-c", "from roughproof import sweep; print(sweep.BACKEND)"],
                          capture_output=True, text=True, env=env, check=True)
    assert proc.stdout.strip() == "python"
