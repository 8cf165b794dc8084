"""Bounded backward proof search.

Each search node computes the closure of its goal under the size-preserving
invertible moves (display rules, exchange, associativity) plus removal of
structural units, capped at a fixed number of steps.  Every sequent in that
closure is display-equivalent to the goal, so a rule applied at its root is
a rule applied "deep" in the goal.  On the closure the node tries, in order:

1. axioms (identity on atoms, ``X |- top`` and friends);
2. operational rules that do not lose information (``and_L``, ``circI_R``,
   ...), applied eagerly without branching;
3. the splitting rules ``and_R``/``or_L`` and their kernel versions, read
   with contraction so that both premises keep the whole context;
4. everything else, as alternatives: the remaining operational rules, the
   join macro for ``circI`` under ``vee`` and the structural rules.

Subgoals that fail in a finite algebra of the calculus's class cannot be
derivable (the rules are sound), so they are discarded before expansion.
Cut is never applied backward and contraction only inside the macros.
"""

from collections import deque
from dataclasses import dataclass, field

from . import derived
from .algebra import ModelBank, enumerate_heterogeneous
from .calculus import CLASS_OF, canonical_calculus, chain_tree, compile_backward, expanded_rules
from .errors import UnsupportedConnective
from .syntax import ProofTree, Sequent, atoms, connectives, mk, normalize, size

# single-premise operational rules whose premise and conclusion are interderivable
INVERTIBLE = ("and_L", "or_R", "neg_L", "neg_R", "top_L", "bot_R",
              "circI_L", "circI_R", "circC_L", "circC_R",
              "boxI_R", "diamI_L", "diamC_L", "boxC_R",
              "oneI_L", "zeroI_R", "cap_L", "cup_R",
              "oneC_L", "zeroC_R", "sqcap_L", "sqcup_R",
              "sim_L", "sim_R", "minus_L", "minus_R")

# closure moves besides the display rules
_REGROUP = ("E_D", "E_KI", "E_KC", "A_D", "A_KI", "A_KC")
_UNIT_RULES = ("top_D", "bot_D", "one_KI", "zero_KI", "one_KC", "zero_KC")

# rules the search never reads backward on their own
_SKIPPED = frozenset(("Id_D", "Cut_D", "Cut_KI", "Cut_KC", "C_D", "C_KI", "C_KC")
                     + _REGROUP + _UNIT_RULES + INVERTIBLE)

_SPLIT = {"and": "D", "cap": "KI", "sqcap": "KC"}
_MERGE = {"or": "D", "cup": "KI", "sqcup": "KC"}
_TOP_FORMULA = {"top", "1I", "1C"}
_BOT_FORMULA = {"bot", "0I", "0C"}

# pruning models: algebras of the calculus's class up to this carrier size
PRUNE_SIZE = 4


@dataclass
class SearchBudget:
    """Limits for one call to ``prove``; depth counts search expansions."""

    max_depth: int = 40
    max_nodes: int = 100_000
    display_steps: int = 8
    semantic_pruning: bool = True
    memo_loops: bool = True
    # how much larger than its goal a structural premise may be
    growth: int = 1
    # display steps after which ia3 may still be read backward
    ia3_steps: int = 3

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0
    depth_bound: int = 0
    pruned: int = 0


@dataclass
class SearchResult:
    outcome: str  # "Proved" or "Exhausted"
    proof: ProofTree = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def proved(self):
        return self.outcome == "Proved"


class _OutOfNodes(Exception):
    pass


def _root_tag(term):
    return None if term.tag == "meta" else term.tag


def _index(forms):
    idx = {}
    for i, form in enumerate(forms):
        key = (_root_tag(form.conclusion.left), _root_tag(form.conclusion.right))
        idx.setdefault(key, []).append((i, form))
    return idx


def _lookup(idx, seq):
    lt, rt = seq.left.tag, seq.right.tag
    cache = idx.setdefault("cache", {})
    hit = cache.get((lt, rt))
    if hit is not None:
        return hit
    hits = []
    for key in ((lt, rt), (lt, None), (None, rt), (None, None)):
        hits.extend(idx.get(key, ()))
    hits.sort(key=lambda p: p[0])
    hit = cache[(lt, rt)] = [f for _, f in hits]
    return hit


_COMPILED = {}


def seq_size(seq):
    return size(seq.left) + size(seq.right)


def _backward(form, seq):
    fn = _COMPILED.get(form)
    if fn is None:
        fn = _COMPILED[form] = compile_backward(form)
    return fn(seq)


_MODELS = {}


def pruning_models(calculus, size=PRUNE_SIZE):
    calc = canonical_calculus(calculus)
    key = (calc, size)
    if key not in _MODELS:
        _MODELS[key] = enumerate_heterogeneous(size, CLASS_OF[calc])
    return _MODELS[key]


class Prover:
    """Search state for one calculus; reusable across goals."""

    def __init__(self, calculus, budget=None, operational_diamI_boxC=True):
        self.calculus = canonical_calculus(calculus)
        self.budget = budget or SearchBudget()
        rules = expanded_rules(self.calculus, operational_diamI_boxC)
        self.rules = rules
        moves = []
        for name, forms in rules.items():
            if forms[0].kind == "display" or name in _REGROUP:
                moves.extend(forms)
            elif name in _UNIT_RULES:
                moves.extend(f for f in forms if not f.inverted)
        self.moves = _index(moves)
        self.invertible = _index([f for n in INVERTIBLE for f in rules.get(n, ())])
        branching = []
        for name, forms in rules.items():
            if name in _SKIPPED or forms[0].kind in ("display", "cut"):
                continue
            branching.extend(forms)
        self.branching = _index(branching)
        self.has = set(rules)
        self.models = pruning_models(self.calculus) if self.budget.semantic_pruning else []
        self._bank = None
        self._valid = {}
        self._keys = {}
        self._expand = {}
        self._closure = {}
        self._canon = {}

    # ------------------------------------------------------------ semantics

    def valid(self, seq):
        """Does ``seq`` hold in every pruning model?  Atoms must be known to the bank."""
        hit = self._valid.get(seq)
        if hit is None:
            names = atoms(seq)
            if self._bank is None or not names <= set(self._bank.atoms):
                known = set(self._bank.atoms) if self._bank else set()
                self._bank = ModelBank(self.models, known | names)
                self._valid.clear()
            hit = self._bank.valid(seq)
            self._valid[seq] = hit
        return hit

    def key(self, seq):
        hit = self._keys.get(seq)
        if hit is None:
            hit = self._keys[seq] = normalize(seq)
        return hit

    # ------------------------------------------------------------ closure

    def closure(self, goal):
        """Display-equivalent sequents reachable from ``goal``, breadth first.

        Maps each member to ``(parent, rule name, distance)``.
        """
        hit = self._closure.get(goal)
        if hit is not None:
            return hit
        seen = {goal: (None, None, 0)}
        queue = deque([goal])
        limit = self.budget.display_steps
        while queue:
            cur = queue.popleft()
            dist = seen[cur][2]
            if dist >= limit:
                continue
            for form in _lookup(self.moves, cur):
                prem = _backward(form, cur)
                if prem is None or prem[0] in seen:
                    continue
                seen[prem[0]] = (cur, form.name, dist + 1)
                queue.append(prem[0])
        self._closure[goal] = seen
        return seen

    def canonical(self, goal):
        """Least member of the closure of ``goal`` and the display chain reaching it."""
        hit = self._canon.get(goal)
        if hit is None:
            members = self.closure(goal)
            rep = min(members, key=lambda q: (q.left.order_key(), q.right.order_key()))
            hit = self._canon[goal] = (rep, self._chain(members, rep))
        return hit

    @staticmethod
    def _chain(members, seq):
        steps = []
        while members[seq][0] is not None:
            parent, name, _ = members[seq]
            steps.append((name, seq))
            seq = parent
        steps.reverse()
        return steps

    # ------------------------------------------------------------ expansion

    def _axiom(self, seq):
        l, r = seq.left, seq.right
        if l.tag == "atom" and l == r:
            return ProofTree("Id_D", seq, [])
        if r.tag in _TOP_FORMULA and r.is_formula:
            return derived.top_right(l)
        if l.tag in _BOT_FORMULA and l.is_formula:
            return derived.bot_left(r)
        return None

    def _forced(self, seq):
        """Premises and builder of a step that needs no choice, or None."""
        for form in _lookup(self.invertible, seq):
            prem = _backward(form, seq)
            if prem is not None:
                return prem, (lambda kids, n=form.name, s=seq: ProofTree(n, s, kids))
        r, l = seq.right, seq.left
        if r.tag in _SPLIT and self._has_split(r.tag):
            a, b = r.args
            return [Sequent(l, a), Sequent(l, b)], lambda kids: derived.and_right(*kids)
        if l.tag in _MERGE and self._has_split(l.tag):
            a, b = l.args
            return [Sequent(a, r), Sequent(b, r)], lambda kids: derived.or_left(*kids)
        return None

    def _has_split(self, tag):
        name = {"and": "and_R", "cap": "cap_R", "sqcap": "sqcap_R",
                "or": "or_L", "cup": "cup_L", "sqcup": "sqcup_L"}[tag]
        return name in self.has

    def _choices(self, seq, dist):
        """Alternative (premises, builder) pairs at the root of ``seq``."""
        l, r = seq.left, seq.right
        out = []
        # non-invertible modal rules, primitive and with the context moved inside
        if l.tag == "boxI" and "boxI_L" in self.has:
            if r.tag == "s-boxI":
                out.append(([Sequent(l.args[0], r.args[0])],
                             lambda kids, s=seq: ProofTree("boxI_L", s, kids)))
            else:
                out.append(([Sequent(l.args[0], mk("s-circI", r))],
                             lambda kids, t=r: derived.box_i_left(kids[0], t)))
        if l.tag == "boxC" and "boxC_L" in self.has:
            if r.tag == "s-boxC":
                out.append(([Sequent(l.args[0], r.args[0])],
                             lambda kids, s=seq: ProofTree("boxC_L", s, kids)))
            else:
                out.append(([Sequent(l.args[0], mk("s-circC", r))],
                             lambda kids, t=r: derived.box_c_left(kids[0], t)))
        if r.tag == "diamC" and "diamC_R" in self.has:
            if l.tag == "s-diamC":
                out.append(([Sequent(l.args[0], r.args[0])],
                             lambda kids, s=seq: ProofTree("diamC_R", s, kids)))
            else:
                out.append(([Sequent(mk("s-circC", l), r.args[0])],
                             lambda kids, t=l: derived.diam_c_right(kids[0], t)))
        if r.tag == "diamI" and "diamI_R" in self.has:
            if l.tag == "s-diamI":
                out.append(([Sequent(l.args[0], r.args[0])],
                             lambda kids, s=seq: ProofTree("diamI_R", s, kids)))
            else:
                out.append(([Sequent(mk("s-circI", l), r.args[0])],
                             lambda kids, t=l: derived.diam_i_right(kids[0], t)))
        # kernel join under circI, read through the D-type join
        if (r.tag == "s-vee" and r.args[0].tag == "s-circI" and r.args[1].tag == "s-circI"
                and "diamI-boxI" in self.has):
            inner = mk("s-circI", mk("s-cup", r.args[0].args[0], r.args[1].args[0]))
            out.append(([Sequent(l, inner)], lambda kids: derived.circ_i_join(kids[0])))
        limit = seq_size(seq) + self.budget.growth
        for form in _lookup(self.branching, seq):
            if form.name == "ia3" and dist > self.budget.ia3_steps:
                continue
            prem = _backward(form, seq)
            if prem is not None and all(seq_size(p) <= limit for p in prem):
                out.append((prem, lambda kids, n=form.name, s=seq: ProofTree(n, s, kids)))
        return out

    def expand(self, goal):
        """``("closed", tree)``, ``("forced", alt)`` or ``("branch", alts)``.

        Each alternative is ``(premises, build)`` where ``build`` maps the
        premise proofs to a proof of ``goal``.
        """
        hit = self._expand.get(goal)
        if hit is not None:
            return hit
        members = self.closure(goal)

        def lift(seq, build):
            return lambda kids: chain_tree(goal, self._chain(members, seq), build(kids))

        result = None
        for seq in members:
            tree = self._axiom(seq)
            if tree is not None:
                result = ("closed", chain_tree(goal, self._chain(members, seq), tree))
                break
        if result is None:
            for seq in members:
                step = self._forced(seq)
                if step is not None:
                    result = ("forced", (step[0], lift(seq, step[1])))
                    break
        if result is None:
            alts, seen = [], set()
            for seq, (_, _, dist) in members.items():
                for prems, build in self._choices(seq, dist):
                    key = tuple(self.key(p) for p in prems)
                    if key in seen:
                        continue
                    seen.add(key)
                    if self.models and not all(self.valid(p) for p in prems):
                        continue
                    alts.append((prems, lift(seq, build)))
            result = ("branch", alts)
        self._expand[goal] = result
        return result

    # ------------------------------------------------------------ driver

    def prove(self, goal):
        stats = SearchStats()
        if self.models and not self.valid(goal):
            stats.pruned = 1
            return SearchResult("Exhausted", None, stats)
        self._failed = {}
        self._proved = {}
        try:
            for bound in range(1, self.budget.max_depth + 1):
                stats.depth_bound = bound
                tree, _ = self._dfs(goal, bound, frozenset(), 0, stats)
                if tree is not None:
                    return SearchResult("Proved", tree, stats)
        except _OutOfNodes:
            pass
        return SearchResult("Exhausted", None, stats)

    def _dfs(self, goal, remaining, branch, depth, stats):
        """Return ``(tree or None, looped)``; ``looped`` marks a loop-check cut-off."""
        rep, steps = self.canonical(goal)
        if self.key(rep) in branch:
            return None, True
        tree, looped = self._search(rep, remaining, branch, depth, stats)
        if tree is not None and steps:
            tree = chain_tree(goal, steps, tree)
        return tree, looped

    def _search(self, goal, remaining, branch, depth, stats):
        if goal in self._proved:
            return self._proved[goal], False
        if remaining <= 0:
            return None, False
        if self._failed.get(goal, 0) >= remaining:
            return None, False
        stats.nodes += 1
        if stats.nodes > self.budget.max_nodes:
            raise _OutOfNodes
        stats.max_depth = max(stats.max_depth, depth + 1)
        branch = branch | {self.key(goal)}
        kind, payload = self.expand(goal)
        if kind == "closed":
            tree = payload
        else:
            alts = [payload] if kind == "forced" else payload
            tree, looped = None, False
            for prems, build in alts:
                kids = []
                for p in prems:
                    kid, lp = self._dfs(p, remaining - 1, branch, depth + 1, stats)
                    looped = looped or lp
                    if kid is None:
                        break
                    kids.append(kid)
                else:
                    tree = build(kids)
                    break
            if tree is None:
                if not looped or self.budget.memo_loops:
                    self._failed[goal] = max(self._failed.get(goal, 0), remaining)
                return None, looped
        self._proved[goal] = tree
        return tree, False


def prove(goal, calculus, budget=None, operational_diamI_boxC=True):
    """Search for a cut-free proof of ``goal`` in ``calculus``."""
    return Prover(calculus, budget, operational_diamI_boxC).prove(goal)


# ---------------------------------------------------------------- identities

_KERNEL_NEG = {"simK": ("cont_I", "sim_L", "sim_R"), "minusK": ("cont_C", "minus_L", "minus_R")}


def derive_identity(formula, calculus="D.PRA", operational_diamI_boxC=True):
    """Cut-free proof of ``formula |- formula`` by induction on the formula."""
    calc = canonical_calculus(calculus)
    used = connectives(formula)
    if calc == "D.TQBA" and used & {"simK", "minusK"}:
        raise UnsupportedConnective("sim/minus connectives need a TQBA5-family calculus")
    if not operational_diamI_boxC and used & {"diamI", "boxC"}:
        raise UnsupportedConnective("diamI/boxC are structural only in this configuration")
    return _identity(formula)


def _identity(f):
    step = derived.step
    tag = f.tag
    if tag == "atom":
        return ProofTree("Id_D", Sequent(f, f), [])
    if tag in ("top", "1I", "1C"):
        unit = {"top": "s-top", "1I": "s-1I", "1C": "s-1C"}[tag]
        axiom, left = {"top": ("top_R", "top_L"), "1I": ("oneI_R", "oneI_L"),
                       "1C": ("oneC_R", "oneC_L")}[tag]
        return step(left, ProofTree(axiom, Sequent(mk(unit), f), []))
    if tag in ("bot", "0I", "0C"):
        unit = {"bot": "s-bot", "0I": "s-0I", "0C": "s-0C"}[tag]
        axiom, right = {"bot": ("bot_L", "bot_R"), "0I": ("zeroI_L", "zeroI_R"),
                        "0C": ("zeroC_L", "zeroC_R")}[tag]
        return step(right, ProofTree(axiom, Sequent(f, mk(unit)), []))
    kids = [_identity(a) for a in f.args]
    if tag == "neg":
        t = step("cont", kids[0])
        t = step("neg_L", t)
        return step("neg_R", t)
    if tag in _KERNEL_NEG:
        cont, left, right = _KERNEL_NEG[tag]
        return step(right, step(left, step(cont, kids[0])))
    if tag in ("and", "cap", "sqcap"):
        r, l = {"and": ("and_R", "and_L"), "cap": ("cap_R", "cap_L"),
                "sqcap": ("sqcap_R", "sqcap_L")}[tag]
        return step(l, step(r, *kids))
    if tag in ("or", "cup", "sqcup"):
        l, r = {"or": ("or_L", "or_R"), "cup": ("cup_L", "cup_R"),
                "sqcup": ("sqcup_L", "sqcup_R")}[tag]
        return step(r, step(l, *kids))
    if tag in ("circI", "circC"):
        emb = f"{tag}-emb"
        t = step(emb, kids[0], pick=derived.left_is(f"s-{tag}"))
        t = step(f"{tag}_R", t)
        return step(f"{tag}_L", t)
    if tag in ("boxI", "boxC"):
        return step(f"{tag}_R", step(f"{tag}_L", kids[0]))
    if tag in ("diamI", "diamC"):
        return step(f"{tag}_L", step(f"{tag}_R", kids[0]))
    raise UnsupportedConnective(f"no identity expansion for {tag}")
