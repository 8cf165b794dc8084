"""The acceptance suite: one runner per criterion, shared by the CLI and the tests.

Every runner returns a ``CriterionResult`` with a pass flag, a one-line
detail string, the elapsed time and the time limit it is held to.
"""

import random
import time
from dataclasses import dataclass
from importlib import resources

from .algebra import (
    check_rule_soundness,
    countermodel,
    enumerate_algebras,
    enumerate_heterogeneous,
)
from .calculus import CALCULI, CLASS_OF, check_proof, expanded_rules, rule_names
from .cutelim import CUTS, eliminate_cuts, has_cut, subformula_violations
from .derived import leaf, step, swap_left, weaken_left, weaken_right
from .errors import InvalidProof, RoughproofError
from .oracles import all_failures
from .parser import parse_proof, parse_term, render_term
from .search import SearchBudget, derive_identity, prove
from .syntax import (
    FORMULA_SIGS,
    PRECEDENT,
    PRECEDENT_ONLY,
    STRUCT_SIGS,
    SUCCEDENT,
    SUCCEDENT_ONLY,
    ProofTree,
    Sequent,
    atom,
    child_sides,
    mk,
)
from .translate import preservation_failures, regression_targets

# ---------------------------------------------------------------- results


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    @property
    def within_time(self):
        return self.seconds <= self.limit

    @property
    def ok(self):
        return self.passed and self.within_time

    def line(self):
        verdict = "PASS" if self.ok else "FAIL"
        return (f"{verdict} criterion {self.number} ({self.name}): {self.detail} "
                f"[{self.seconds:.2f}s, limit {self.limit:g}s]")


def _timed(number, name, limit, body):
    start = time.perf_counter()
    passed, detail = body()
    return CriterionResult(number, name, passed, detail, time.perf_counter() - start, limit)


# ---------------------------------------------------------------- goldens

GOLDEN_FILES = ("golden_t6.mtp", "golden_t7_lr.mtp", "golden_t7_rl.mtp",
                "golden_t8_closed.mtp")

GOLDEN_END_SEQUENTS = {
    "golden_t6.mtp": "(seq top (or (circI (boxI p)) (neg (circI (boxI p)))))",
    "golden_t7_lr.mtp": "(seq (circI (boxI (or p q))) (or (circI (boxI p)) (circI (boxI q))))",
    "golden_t7_rl.mtp": "(seq (or (circI (boxI p)) (circI (boxI q))) (circI (boxI (or p q))))",
    "golden_t8_closed.mtp": "(seq p p)",
}


def golden_text(name):
    return resources.files("roughproof").joinpath("data", name).read_text(encoding="utf-8")


def golden_calculus(text):
    """Calculus named by the ``; calculus: X`` header line."""
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("; calculus:"):
            return line.split(":", 1)[1].strip()
    raise ValueError("golden file has no calculus header")


def load_golden(name):
    text = golden_text(name)
    return parse_proof(text, origin=name), golden_calculus(text)


def criterion_goldens():
    def body():
        from .parser import parse_sequent
        notes = []
        ok = True
        for name in GOLDEN_FILES:
            tree, calc = load_golden(name)
            check_proof(tree, calc)
            if tree.conclusion != parse_sequent(GOLDEN_END_SEQUENTS[name]):
                ok = False
                notes.append(f"{name} proves the wrong sequent")
            else:
                notes.append(f"{name} ok in {calc}")
        return ok, "; ".join(notes)
    return _timed(1, "golden proofs", 1.0, body)


# ---------------------------------------------------------------- search

# depth bounds checked in with the targets; the search deepens up to them
TARGET_DEPTHS = {"i": 6, "ii": 6, "iii": 12, "iv": 14, "v": 12, "vi": 14, "vii": 16,
                 "viii": 12, "ix": 16, "x": 12, "C-def-1": 14, "C-def-2": 14,
                 "C-def-3": 14, "C-def-4": 14}
TARGET_NODES = 100_000


def prove_target(goal):
    budget = SearchBudget(max_depth=TARGET_DEPTHS[goal.label], max_nodes=TARGET_NODES)
    return prove(goal.target, goal.calculus, budget)


def criterion_search():
    def body():
        notes = []
        ok = True
        for label, goal in regression_targets().items():
            r = prove_target(goal)
            good = (r.proved and r.proof.conclusion == goal.target
                    and check_proof(r.proof, goal.calculus))
            ok &= bool(good)
            notes.append(f"{label}:{'ok' if good else r.outcome}/{r.stats.nodes}n")
        return ok, " ".join(notes)
    return _timed(2, "completeness regression", 120.0, body)


# ---------------------------------------------------------------- cut corpus

def _search_proof(text, calculus):
    from .parser import parse_sequent
    r = prove(parse_sequent(text), calculus, SearchBudget(max_nodes=TARGET_NODES))
    if not r.proved:
        raise RuntimeError(f"corpus premise not found: {text}")
    return r.proof


def _cut(left, right):
    return step(next(c for c in CUTS if c.endswith(left.conclusion.sort)), left, right)


def _swap_cut_proof():
    """p and q |- q or p routed through a cut on q and p."""
    p, q = atom("p"), atom("q")
    left = step("and_R", leaf("Id_D", Sequent(q, q)), leaf("Id_D", Sequent(p, p)))
    left = swap_left(left)
    left = step("and_L", left)
    right = step("or_R", weaken_right(leaf("Id_D", Sequent(q, q)), p))
    right = step("and_L", weaken_left(right, p))
    return _cut(left, right)


def cut_corpus():
    """List of ``(name, calculus, proof with cuts)``."""
    IB = "(circI (boxI {}))"
    T = parse_term
    ident = derive_identity
    out = []
    t8, _ = load_golden("golden_t8_closed.mtp")
    out.append(("closed T8", "D.IA3", t8))
    out.append(("swap through q and p", "D.TQBA", _swap_cut_proof()))
    p = T("p")
    out.append(("atomic identity cut", "D.TQBA", _cut(ident(p), ident(p))))
    for text, calc in (("(neg p)", "D.TQBA"), ("(circI (boxI p))", "D.TQBA"),
                       ("(circC (diamC (and p q)))", "D.TQBA"), ("bot", "D.TQBA"),
                       ("(circI (simK (boxI p)))", "D.TQBA5"),
                       ("(circC (minusK (diamC p)))", "D.TQBA5")):
        f = T(text)
        out.append((f"identity cut on {text}", calc, _cut(ident(f, calc), ident(f, calc))))
    for text in ("(boxI (and p q))", "(cup (boxI p) 1I)", "(diamI (or p q))"):
        f = T(text)
        out.append((f"kernel cut on {text}", "D.TQBA", _cut(ident(f), ident(f))))
    f = T("(sqcap (diamC p) (boxC q))")
    out.append(("kernel cut on a meet of closures", "D.TQBA", _cut(ident(f), ident(f))))

    iii = _search_proof(f"(seq {IB.format('(and p q)')} (and {IB.format('p')} {IB.format('q')}))",
                        "D.TQBA")
    iv = _search_proof(f"(seq (and {IB.format('p')} {IB.format('q')}) {IB.format('(and p q)')})",
                       "D.TQBA")
    out.append(("interior of meet, through the meet of interiors", "D.TQBA", _cut(iii, iv)))
    out.append(("meet of interiors, through the interior of meet", "D.TQBA", _cut(iv, iii)))
    v = _search_proof(f"(seq {IB.format('p')} {IB.format(IB.format('p'))})", "D.TQBA")
    i_of_i = _search_proof(f"(seq {IB.format(IB.format('p'))} {IB.format('p')})", "D.TQBA")
    twice = _cut(v, i_of_i)
    out.append(("interior idempotence round trip", "D.TQBA", twice))
    i = _search_proof(f"(seq {IB.format('p')} p)", "D.TQBA")
    out.append(("nested cuts", "D.TQBA", _cut(twice, i)))
    weak = _search_proof("(seq p (or p q))", "D.TQBA")
    out.append(("atomic cut under an interior", "D.TQBA", _cut(i, weak)))
    vii = _search_proof(f"(seq {IB.format('(or p q)')} (or {IB.format('p')} {IB.format('q')}))",
                        "D.IA2")
    viii = _search_proof(f"(seq (or {IB.format('p')} {IB.format('q')}) {IB.format('(or p q)')})",
                         "D.IA2")
    out.append(("join of interiors round trip", "D.IA2", _cut(viii, vii)))
    out.append(("interior of join round trip", "D.IA2", _cut(vii, viii)))
    vi = _search_proof(f"(seq (circC (diamC {IB.format('p')})) {IB.format('p')})", "D.TQBA5")
    out.append(("closure of interior down to the atom", "D.TQBA5", _cut(vi, i)))
    eq = _search_proof(f"(seq (and p (circC (diamC q))) (or {IB.format('p')} q))", "D.IA3")
    tail = _search_proof(f"(seq (or {IB.format('p')} q) (or p q))", "D.IA3")
    out.append(("ia3 sequent weakened", "D.IA3", _cut(eq, tail)))
    t6, _ = load_golden("golden_t6.mtp")
    excluded = t6.conclusion.right
    out.append(("excluded middle re-derived", "D.IA1", _cut(t6, ident(excluded, "D.IA1"))))
    return out


def criterion_cut_elimination():
    def body():
        corpus = cut_corpus()
        bad = []
        for name, calc, tree in corpus:
            check_proof(tree, calc)
            if not has_cut(tree):
                bad.append(f"{name}: no cut in input")
                continue
            out = eliminate_cuts(tree, calc)
            if has_cut(out) or out.conclusion != tree.conclusion:
                bad.append(f"{name}: cut left or end-sequent changed")
            elif subformula_violations(out):
                bad.append(f"{name}: subformula property fails")
        detail = f"{len(corpus)} proofs with cuts"
        return not bad and len(corpus) >= 10, detail + ("; " + "; ".join(bad) if bad else "")
    return _timed(3, "cut elimination", 30.0, body)


# ---------------------------------------------------------------- semantics

SWEEP_SIZE = 5


def soundness_failures(calculus, max_size=SWEEP_SIZE):
    """``(rule name, algebra index)`` for every unsound rule instance."""
    algebras = enumerate_heterogeneous(max_size, CLASS_OF[calculus])
    bad = []
    for forms in expanded_rules(calculus).values():
        for form in forms:
            for k, H in enumerate(algebras):
                if check_rule_soundness(form, H) is not None:
                    bad.append((form.name, k))
    return bad, len(algebras)


def criterion_soundness():
    def body():
        total = 0
        bad = []
        for calc in CALCULI:
            b, n = soundness_failures(calc)
            bad.extend((calc,) + x for x in b)
            total += n
        return not bad, f"{total} algebra/calculus pairs, {len(bad)} counterexamples"
    return _timed(4, "soundness sweep", 600.0, body)


def criterion_algebra_oracles():
    def body():
        algebras = enumerate_algebras(SWEEP_SIZE)
        bad = {}
        for k, T in enumerate(algebras):
            for prop, witness in all_failures(T).items():
                bad.setdefault(prop, (k, witness))
            if preservation_failures(T, count=200, depth=4, seed=k):
                bad.setdefault("translation preservation", (k, None))
        detail = f"{len(algebras)} algebras"
        if bad:
            detail += "; failing: " + ", ".join(sorted(bad))
        return not bad, detail
    return _timed(5, "algebra oracle suite", 300.0, body)


SEPARATIONS = (
    # (name, target label, class searched, label the witness must lack)
    ("tqBa but not tqBa5", "vi", "tqBa", "tqBa5"),
    ("tqBa5 but not IA1", "ix", "tqBa5", "IA1"),
    ("outside IA2", "vii", "tqBa", "IA2"),
)


def separation_witness(label, cls):
    goal = regression_targets()[label]
    return countermodel(goal.target, cls, SWEEP_SIZE)


def criterion_separation():
    def body():
        notes = []
        ok = True
        for name, label, cls, lacking in SEPARATIONS:
            found = separation_witness(label, cls)
            if found is None:
                ok = False
                notes.append(f"{name}: none")
                continue
            H, _ = found
            labels = H.classify()
            good = ("h" + cls) in labels and ("h" + lacking) not in labels
            ok &= good
            notes.append(f"{name}: size {H.D.n}{'' if good else ' (wrong class)'}")
        return ok, "; ".join(notes)
    return _timed(6, "separation witnesses", 120.0, body)


# ---------------------------------------------------------------- robustness

_ATOMS = ("p", "q", "r", "p1", "q_2")
_BY_SORT = {}
for _tag, (_sort, _args) in FORMULA_SIGS.items():
    _BY_SORT.setdefault(("formula", _sort), []).append(_tag)
for _tag, (_sort, _args) in STRUCT_SIGS.items():
    _BY_SORT.setdefault(("struct", _sort), []).append(_tag)


def random_formula(rng, sort="D", depth=4):
    tags = _BY_SORT[("formula", sort)]
    if depth <= 0:
        tags = [t for t in tags if not FORMULA_SIGS[t][1]]
        if sort == "D" and rng.random() < 0.7:
            return atom(rng.choice(_ATOMS))
    elif sort == "D" and rng.random() < 0.25:
        return atom(rng.choice(_ATOMS))
    tag = rng.choice(tags)
    return mk(tag, *(random_formula(rng, s, depth - 1) for s in FORMULA_SIGS[tag][1]))


def random_structure(rng, sort="D", side=PRECEDENT, depth=4):
    """Well-sorted structure that respects the polarity of ``side``."""
    if depth <= 0 or rng.random() < 0.25:
        return random_formula(rng, sort, min(depth, 2))
    banned = SUCCEDENT_ONLY if side == PRECEDENT else PRECEDENT_ONLY
    tag = rng.choice([t for t in _BY_SORT[("struct", sort)] if t not in banned])
    kids = [random_structure(rng, s, pol, depth - 1)
            for s, pol in zip(STRUCT_SIGS[tag][1], child_sides(tag, side))]
    return mk(tag, *kids)


def random_sequent(rng, depth=4):
    sort = rng.choice(["D", "D", "KI", "KC"])
    return Sequent(random_structure(rng, sort, PRECEDENT, depth),
                   random_structure(rng, sort, SUCCEDENT, depth))


def _subtrees(tree):
    return list(tree.walk())


def mutate_proof(tree, rng, names):
    """A different tree: one rule renamed or two disjoint subtrees swapped."""
    nodes = _subtrees(tree)
    while True:
        if rng.random() < 0.5:
            path, node = rng.choice(nodes)
            new = rng.choice(names)
            if new == node.rule:
                continue
            mutant = tree.replace(path, ProofTree(new, node.conclusion, node.children))
        else:
            (pa, a), (pb, b) = rng.sample(nodes, 2)
            if pa[:len(pb)] == pb or pb[:len(pa)] == pa or a == b:
                continue
            mutant = tree.replace(pa, b).replace(pb, a)
        if mutant != tree:
            return mutant


FUZZ_TERMS = 10_000
MUTANTS = 1_000


def criterion_robustness():
    def body():
        from .parser import parse_sequent, render_sequent
        rng = random.Random(20240)
        mismatched = 0
        for k in range(FUZZ_TERMS):
            if k % 2:
                s = random_sequent(rng)
                mismatched += parse_sequent(render_sequent(s)) != s
            else:
                f = random_formula(rng, rng.choice(["D", "KI", "KC"]))
                mismatched += parse_term(render_term(f)) != f
        goldens = [load_golden(n) for n in GOLDEN_FILES]
        names = sorted(rule_names())
        accepted = pathless = 0
        for _ in range(MUTANTS):
            tree, calc = rng.choice(goldens)
            mutant = mutate_proof(tree, rng, names)
            try:
                check_proof(mutant, calc)
                accepted += 1
            except InvalidProof as exc:
                if not isinstance(exc.path, tuple):
                    pathless += 1
            except RoughproofError:
                pathless += 1
        detail = (f"{FUZZ_TERMS} terms, {mismatched} round-trip mismatches; "
                  f"{MUTANTS} mutants, {accepted} accepted, {pathless} without a path")
        return mismatched == 0 and accepted == 0 and pathless == 0, detail
    return _timed(7, "robustness", 60.0, body)


CRITERIA = (criterion_goldens, criterion_search, criterion_cut_elimination,
            criterion_soundness, criterion_algebra_oracles, criterion_separation,
            criterion_robustness)


def run_all(report=print):
    results = []
    for run in CRITERIA:
        r = run()
        report(r.line())
        results.append(r)
    return results


__all__ = ["CriterionResult", "CRITERIA", "run_all", "cut_corpus", "random_formula",
           "random_structure", "random_sequent", "mutate_proof", "load_golden",
           "golden_text", "golden_calculus"]
