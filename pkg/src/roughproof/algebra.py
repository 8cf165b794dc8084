"""Finite rough algebras, their kernels and heterogeneous presentations.

Elements are dense integers.  A ``FiniteRoughAlgebra`` is a De Morgan lattice with
an interior table; ``HeterogeneousAlgebra`` holds the three carriers and the
maps between them.  Evaluation of interpreted sequents and the quantifier
sweeps behind ``holds`` and ``check_rule_soundness`` are compiled to a small
register program run by ``sweep.sweep``.
"""

import hashlib
import os
from array import array
from collections import namedtuple
from itertools import permutations, product

from .errors import CapExceeded, NotTqBa, UnassignedAtom
from .lattice import Lattice, lattice_isomorphism, relabel_leq
from .sweep import sweep
from .syntax import D, KC, KI, Sequent, Term, interpret, interpret_sequent, metavars, atoms

DEFAULT_CAP = 6

SINGLE_CLASSES = ("tqBa", "tqBa5", "IA1", "IA2", "IA3", "pra")
HETERO_CLASSES = tuple("h" + c for c in SINGLE_CLASSES)


def class_name(label):
    """Canonical single-type label for spellings like ``htqba5`` or ``IA1``."""
    key = label.strip()
    low = key.lower()
    if low.startswith("h") and low[1:] in {c.lower() for c in SINGLE_CLASSES}:
        low = low[1:]
    for c in SINGLE_CLASSES:
        if c.lower() == low:
            return c
    raise ValueError(f"unknown algebra class: {label}")


class FiniteRoughAlgebra:
    """Single-type algebra: De Morgan lattice plus interior operator ``interior``."""

    def __init__(self, lattice, interior):
        if lattice.neg is None:
            raise ValueError("a rough algebra needs a negation table")
        self.lattice = lattice
        self.interior = tuple(interior)
        neg = lattice.neg
        self.closure = tuple(neg[self.interior[neg[a]]] for a in range(lattice.n))
        self._labels = None

    n = property(lambda self: self.lattice.n)
    neg = property(lambda self: self.lattice.neg)
    names = property(lambda self: self.lattice.names)

    def validate(self):
        """Raise NotTqBa with a witness unless the tqBa axioms hold."""
        L, I = self.lattice, self.interior
        if not L.is_distributive():
            raise NotTqBa("lattice is not distributive")
        if not L.is_de_morgan():
            raise NotTqBa("negation is not an order-reversing involution")
        r = range(L.n)
        for a in r:
            if I[I[a]] != I[a]:
                raise NotTqBa(("T2", a))
            if not L.leq[I[a]][a]:
                raise NotTqBa(("T3", a))
            for b in r:
                if I[L.meet[a][b]] != L.meet[I[a]][I[b]]:
                    raise NotTqBa(("T1", a, b))
        if I[L.top] != L.top:
            raise NotTqBa(("T4",))
        return self

    def axiom_failures(self):
        """First counterexample per extension axiom T5..T8 (absent when it holds)."""
        L, I, C, neg = self.lattice, self.interior, self.closure, self.lattice.neg
        out = {}
        r = range(L.n)
        for a in r:
            if C[I[a]] != I[a]:
                out.setdefault("T5", (a,))
            if L.join[I[a]][neg[I[a]]] != L.top:
                out.setdefault("T6", (a,))
            for b in r:
                if L.join[I[a]][I[b]] != I[L.join[a][b]]:
                    out.setdefault("T7", (a, b))
                if L.leq[I[a]][I[b]] and L.leq[C[a]][C[b]] and not L.leq[a][b]:
                    out.setdefault("T8", (a, b))
        return out

    def classify(self):
        if self._labels is None:
            self.validate()
            fail = self.axiom_failures()
            labels = {"tqBa"}
            if "T5" not in fail:
                labels.add("tqBa5")
                for ax, lab in (("T6", "IA1"), ("T7", "IA2"), ("T8", "IA3")):
                    if ax not in fail:
                        labels.add(lab)
                if not {"T6", "T7", "T8"} & set(fail):
                    labels.add("pra")
            self._labels = frozenset(labels)
        return self._labels

    def __eq__(self, other):
        return (isinstance(other, FiniteRoughAlgebra) and self.lattice == other.lattice
                and self.interior == other.interior)

    def __hash__(self):
        return hash((self.lattice, self.interior))

    def __repr__(self):
        return f"FiniteRoughAlgebra(n={self.n}, interior={self.interior})"


def classify(T):
    """Set of class labels of a single-type algebra."""
    return T.classify()


# ---------------------------------------------------------------- kernels

Kernels = namedtuple("Kernels", "KI KC iota gamma eI eC")


def kernels(T):
    """Left and right kernels with the maps between them and ``T``.

    Kernel elements are numbered in the order of the carrier elements they
    embed as.  Lattice operations follow the induced definitions
    (``alpha cup beta = iota(eI alpha \\/ eI beta)`` and so on); the kernel
    negations are filled in when ``T`` satisfies T5.
    """
    L = T.lattice
    I, C = T.interior, T.closure
    ki = sorted(set(I))
    kc = sorted(set(C))
    idx_i = {a: k for k, a in enumerate(ki)}
    idx_c = {a: k for k, a in enumerate(kc)}
    iota = tuple(idx_i[I[a]] for a in range(L.n))
    gamma = tuple(idx_c[C[a]] for a in range(L.n))
    eI = tuple(ki)
    eC = tuple(kc)
    leq_i = [[L.leq[x][y] for y in ki] for x in ki]
    leq_c = [[L.leq[x][y] for y in kc] for x in kc]
    sim = minus = None
    if "T5" not in T.axiom_failures():
        sim = [iota[L.neg[eI[k]]] for k in range(len(ki))]
        minus = [gamma[L.neg[eC[k]]] for k in range(len(kc))]
    KIlat = Lattice(leq_i, [L.names[a] for a in ki], sim)
    KClat = Lattice(leq_c, [L.names[a] for a in kc], minus)
    return Kernels(KIlat, KClat, iota, gamma, eI, eC)


def kernel_operations(T):
    """Kernel operations computed literally from the induced definitions.

    Returned as a dict of tables, used to cross-check the tables obtained from
    the inherited order.
    """
    k = kernels(T)
    L = T.lattice
    ni, nc = k.KI.n, k.KC.n
    ops = {
        "cup": [[k.iota[L.join[k.eI[a]][k.eI[b]]] for b in range(ni)] for a in range(ni)],
        "cap": [[k.iota[L.meet[k.eI[a]][k.eI[b]]] for b in range(ni)] for a in range(ni)],
        "1I": k.iota[L.top], "0I": k.iota[L.bot],
        "sqcup": [[k.gamma[L.join[k.eC[a]][k.eC[b]]] for b in range(nc)] for a in range(nc)],
        "sqcap": [[k.gamma[L.meet[k.eC[a]][k.eC[b]]] for b in range(nc)] for a in range(nc)],
        "1C": k.gamma[L.top], "0C": k.gamma[L.bot],
        "sim": [k.iota[L.neg[k.eI[a]]] for a in range(ni)],
        "minus": [k.gamma[L.neg[k.eC[a]]] for a in range(nc)],
    }
    return ops


# ---------------------------------------------------------------- heterogeneous

class HeterogeneousAlgebra:
    """Carriers D, L_I, L_C with embeddings, their adjoints and optional negations.

    ``iotaL`` (least alpha with a <= eI(alpha)) and ``gammaR`` (greatest xi
    with eC(xi) <= a) are tabulated on construction; they exist because every
    finite lattice is complete.
    """

    def __init__(self, D_, LI, LC, eI, eC, iota, gamma, sim=None, minus=None):
        self.D = D_
        self.LI = LI
        self.LC = LC
        self.eI = tuple(eI)
        self.eC = tuple(eC)
        self.iota = tuple(iota)
        self.gamma = tuple(gamma)
        self.sim = tuple(sim) if sim is not None else None
        self.minus = tuple(minus) if minus is not None else None
        self.iotaL = tuple(self._least(LI, lambda al, a=a: D_.leq[a][self.eI[al]])
                           for a in range(D_.n))
        self.gammaR = tuple(self._greatest(LC, lambda xi, a=a: D_.leq[self.eC[xi]][a])
                            for a in range(D_.n))
        self._flat = None
        self._labels = None

    @staticmethod
    def _least(L, pred):
        cands = [x for x in range(L.n) if pred(x)]
        best = [x for x in cands if all(L.leq[x][y] for y in cands)]
        return best[0] if best else None

    @staticmethod
    def _greatest(L, pred):
        cands = [x for x in range(L.n) if pred(x)]
        best = [x for x in cands if all(L.leq[y][x] for y in cands)]
        return best[0] if best else None

    def carrier(self, sort):
        return {D: self.D, KI: self.LI, KC: self.LC}[sort]

    # -- validation

    def failures(self):
        """First violated condition among H1..H10, keyed by condition name."""
        Dl, LI, LC = self.D, self.LI, self.LC
        eI, eC, iota, gamma = self.eI, self.eC, self.iota, self.gamma
        out = {}
        rd, ri, rc = range(Dl.n), range(LI.n), range(LC.n)
        if not (Dl.is_distributive() and Dl.is_de_morgan()):
            out["H1"] = "D is not a De Morgan algebra"
        if not (LI.is_distributive() and LC.is_distributive()):
            out["H2"] = "kernel lattice not distributive"
        for (L, e, r) in ((LI, eI, ri), (LC, eC, rc)):
            for a in r:
                for b in r:
                    if (e[L.meet[a][b]] != Dl.meet[e[a]][e[b]]
                            or e[L.join[a][b]] != Dl.join[e[a]][e[b]]):
                        out.setdefault("H3", (a, b))
            if e[L.top] != Dl.top or e[L.bot] != Dl.bot:
                out.setdefault("H3", "bounds")
        for a in rd:
            for b in rd:
                if iota[Dl.meet[a][b]] != LI.meet[iota[a]][iota[b]]:
                    out.setdefault("H4", ("iota", a, b))
                if gamma[Dl.join[a][b]] != LC.join[gamma[a]][gamma[b]]:
                    out.setdefault("H4", ("gamma", a, b))
        if (iota[Dl.top] != LI.top or iota[Dl.bot] != LI.bot
                or gamma[Dl.top] != LC.top or gamma[Dl.bot] != LC.bot):
            out.setdefault("H4", "bounds")
        for a in rd:
            for al in ri:
                if Dl.leq[eI[al]][a] != LI.leq[al][iota[a]]:
                    out.setdefault("H5", ("eI -| iota", al, a))
            for xi in rc:
                if LC.leq[gamma[a]][xi] != Dl.leq[a][eC[xi]]:
                    out.setdefault("H5", ("gamma -| eC", a, xi))
        if any(iota[eI[al]] != al for al in ri) or any(gamma[eC[xi]] != xi for xi in rc):
            out.setdefault("H5", "retraction")
        neg = Dl.neg
        for a in rd:
            if eC[gamma[a]] != neg[eI[iota[neg[a]]]]:
                out.setdefault("H6", a)
        # H7: one kernel, De Morgan, embedded by a De Morgan homomorphism
        if (set(eI) != set(eC) or self.sim is None or self.minus is None
                or not Lattice(LI.leq, neg=self.sim).is_de_morgan()
                or any(eI[self.sim[al]] != neg[eI[al]] for al in ri)
                or any(eC[self.minus[xi]] != neg[eC[xi]] for xi in rc)):
            out["H7"] = "kernels not identified as a De Morgan algebra"
        if self.sim is None or not Lattice(LI.leq, neg=self.sim).is_boolean():
            out["H8"] = "kernel not Boolean"
        for a in rd:
            for b in rd:
                if iota[Dl.join[a][b]] != LI.join[iota[a]][iota[b]]:
                    out.setdefault("H9", (a, b))
                if (LI.leq[iota[a]][iota[b]] and LC.leq[gamma[a]][gamma[b]]
                        and not Dl.leq[a][b]):
                    out.setdefault("H10", (a, b))
        return out

    def classify(self):
        """Heterogeneous class labels (empty set if H1..H6 fail)."""
        if self._labels is None:
            f = self.failures()
            labels = set()
            if not {"H1", "H2", "H3", "H4", "H5", "H6"} & set(f):
                labels.add("htqBa")
                if "H7" not in f:
                    labels.add("htqBa5")
                    for h, lab in (("H8", "hIA1"), ("H9", "hIA2"), ("H10", "hIA3")):
                        if h not in f:
                            labels.add(lab)
                    if not {"H8", "H9", "H10"} & set(f):
                        labels.add("hpra")
            self._labels = frozenset(labels)
        return self._labels

    # -- evaluation tables

    def op_table(self, op):
        """``(arity, table, ncol)`` for an operation name used by ``interpret``."""
        sort, _, name = op.rpartition(".")
        if sort:
            L = self.carrier(sort)
            if name == "top":
                return 0, L.top, 0
            if name == "bot":
                return 0, L.bot, 0
            if name == "meet":
                return 2, L.meet, L.n
            if name == "join":
                return 2, L.join, L.n
            if name == "imp":
                return 2, L.imp, L.n
            if name == "coimp":
                return 2, L.coimp, L.n
            if name == "leq":
                return 2, L.leq, L.n
            if name == "neg":
                table = {D: self.D.neg, KI: self.sim, KC: self.minus}[sort]
                if table is None:
                    raise ValueError(f"no negation on {sort} in this algebra")
                return 1, table, 0
        tables = {"eI": self.eI, "eC": self.eC, "iota": self.iota, "gamma": self.gamma,
                  "iotaL": self.iotaL, "gammaR": self.gammaR}
        if op in tables:
            return 1, tables[op], 0
        raise ValueError(f"unknown operation {op}")

    def flat(self):
        """Concatenated integer tables plus the offset of each operation."""
        if self._flat is None:
            tab = array("i")
            offsets = {}
            ops = ["eI", "eC", "iota", "gamma", "iotaL", "gammaR"]
            for s in (D, KI, KC):
                ops += [f"{s}.meet", f"{s}.join", f"{s}.imp", f"{s}.coimp", f"{s}.leq"]
                if (s == D) or (s == KI and self.sim) or (s == KC and self.minus):
                    ops.append(f"{s}.neg")
            for op in ops:
                arity, table, ncol = self.op_table(op)
                offsets[op] = (len(tab), ncol)
                if arity == 1:
                    tab.extend(table)
                else:
                    for row in table:
                        tab.extend(int(x) for x in row)
            self._flat = (tab, offsets)
        return self._flat

    def __repr__(self):
        return f"HeterogeneousAlgebra(|D|={self.D.n}, |LI|={self.LI.n}, |LC|={self.LC.n})"


def to_heterogeneous(T):
    """The heterogeneous algebra built from the kernels of ``T``."""
    k = kernels(T)
    return HeterogeneousAlgebra(T.lattice, k.KI, k.KC, k.eI, k.eC, k.iota, k.gamma,
                                k.KI.neg, k.KC.neg)


def to_single(H):
    """Single-type algebra with interior ``eI . iota``."""
    I = tuple(H.eI[H.iota[a]] for a in range(H.D.n))
    return FiniteRoughAlgebra(H.D, I)


# ---------------------------------------------------------------- isomorphism

def is_isomorphic(A, B):
    """First structure-preserving bijection, or None.

    Lattices (with optional negation), single-type algebras and heterogeneous
    algebras are supported; for heterogeneous algebras the witness is a triple
    of bijections on D, L_I and L_C.
    """
    if isinstance(A, Lattice):
        return lattice_isomorphism(A, B)
    if isinstance(A, FiniteRoughAlgebra):
        if A.n != B.n:
            return None
        for perm in permutations(range(A.n)):
            if _preserves(A.lattice, B.lattice, perm) and all(
                    perm[A.interior[a]] == B.interior[perm[a]] for a in range(A.n)):
                return perm
        return None
    if isinstance(A, HeterogeneousAlgebra):
        if (A.D.n, A.LI.n, A.LC.n) != (B.D.n, B.LI.n, B.LC.n):
            return None
        invI = {e: k for k, e in enumerate(B.eI)}
        invC = {e: k for k, e in enumerate(B.eC)}
        for perm in permutations(range(A.D.n)):
            if not _preserves(A.D, B.D, perm):
                continue
            try:
                fi = tuple(invI[perm[e]] for e in A.eI)
                fc = tuple(invC[perm[e]] for e in A.eC)
            except KeyError:
                continue
            if (all(fi[A.iota[a]] == B.iota[perm[a]] for a in range(A.D.n))
                    and all(fc[A.gamma[a]] == B.gamma[perm[a]] for a in range(A.D.n))
                    and _preserves(A.LI, B.LI, fi) and _preserves(A.LC, B.LC, fc)
                    and _maps_unary(A.sim, B.sim, fi) and _maps_unary(A.minus, B.minus, fc)):
                return perm, fi, fc
        return None
    raise TypeError(f"cannot compare {type(A).__name__}")


def _preserves(LA, LB, f):
    n = LA.n
    if any(LA.leq[a][b] != LB.leq[f[a]][f[b]] for a in range(n) for b in range(n)):
        return False
    return _maps_unary(LA.neg, LB.neg, f)


def _maps_unary(ta, tb, f):
    if ta is None or tb is None:
        return ta is None and tb is None
    return all(f[ta[a]] == tb[f[a]] for a in range(len(ta)))


# ---------------------------------------------------------------- evaluation

def _value(H, sort, v, names):
    if isinstance(v, int):
        return v
    return H.carrier(sort).names.index(v)


def eval_term(term, H, asg):
    """Value of a formula, structure (read in precedent position) or algebraic term."""
    if isinstance(term, Term):
        term = interpret(term)
    return _eval(term, H, asg)


def _eval(t, H, asg):
    op = t[0]
    if op == "var":
        name, sort = t[1], t[2]
        if name not in asg:
            raise UnassignedAtom(name)
        return _value(H, sort, asg[name], None)
    arity, table, _ = H.op_table(op)
    if arity == 0:
        return table
    args = [_eval(a, H, asg) for a in t[1:]]
    if arity == 1:
        return table[args[0]]
    return table[args[0]][args[1]]


def result_sort(t):
    op = t[0]
    if op == "var":
        return t[2]
    if "." in op:
        return op.split(".")[0]
    return {"eI": D, "eC": D, "iota": KI, "iotaL": KI, "gamma": KC, "gammaR": KC}[op]


class _Program:
    """Register program for a batch of inequalities over shared variables."""

    def __init__(self, H, var_sorts):
        self.H = H
        self.tab, self.offsets = H.flat()
        self.vars = list(var_sorts)
        self.reg = {("var", n, s): i for i, (n, s) in enumerate(self.vars)}
        self.nregs = len(self.vars)
        self.code = array("i")
        self.checks = array("i")

    def emit(self, t):
        if t in self.reg:
            return self.reg[t]
        if t[0] == "var":
            raise UnassignedAtom(t[1])
        arity, table, ncol = self.H.op_table(t[0])
        args = [self.emit(a) for a in t[1:]]
        dst = self.nregs
        self.nregs += 1
        if arity == 0:
            self.code.extend((0, dst, 0, 0, table, 0))
        else:
            off, ncol = self.offsets[t[0]]
            b = args[1] if arity == 2 else 0
            self.code.extend((arity, dst, args[0], b, off, ncol))
        self.reg[t] = dst
        return dst

    def check(self, lhs, rhs, premise):
        sort = result_sort(lhs)
        a, b = self.emit(lhs), self.emit(rhs)
        off, ncol = self.offsets[f"{sort}.leq"]
        self.checks.extend((1 if premise else 0, a, b, off, ncol))

    def run(self):
        sizes = array("i", [self.H.carrier(s).n for _, s in self.vars])
        idx = sweep(self.code, self.nregs, sizes, self.checks, self.tab)
        if idx < 0:
            return None
        asg = {}
        for (name, sort), size in reversed(list(zip(self.vars, sizes))):
            asg[name] = idx % size
            idx //= size
        return dict(sorted(asg.items()))


def _term_vars(t, acc):
    if t[0] == "var":
        acc[(t[1], t[2])] = None
    else:
        for a in t[1:]:
            _term_vars(a, acc)
    return acc


def falsify(premises, conclusion, H):
    """First assignment satisfying every premise inequality but not the conclusion.

    Inequalities are ``(lhs, rhs)`` pairs of algebraic terms.  Returns a dict
    from variable names to element ids, or None when the quasi-inequality
    holds.
    """
    acc = {}
    for lhs, rhs in list(premises) + [conclusion]:
        _term_vars(lhs, acc)
        _term_vars(rhs, acc)
    prog = _Program(H, sorted(acc))
    for lhs, rhs in premises:
        prog.check(lhs, rhs, True)
    prog.check(conclusion[0], conclusion[1], False)
    return prog.run()


def holds(seq, H):
    """True iff the sequent's inequality holds under every assignment."""
    return falsify([], interpret_sequent(seq), H) is None


def counter_assignment(seq, H):
    return falsify([], interpret_sequent(seq), H)


def check_rule_soundness(rule, H):
    """None if the rule's quasi-inequality holds in ``H``, else a counterexample."""
    prems = [interpret_sequent(p) for p in rule.premises]
    return falsify(prems, interpret_sequent(rule.conclusion), H)


def eval_single(T, f, asg):
    """Evaluate a single-type formula (see ``translate.LFormula``) in ``T``."""
    L = T.lattice
    tag = f.tag
    if tag == "atom":
        if f.name not in asg:
            raise UnassignedAtom(f.name)
        v = asg[f.name]
        return v if isinstance(v, int) else L.names.index(v)
    if tag == "top":
        return L.top
    if tag == "bot":
        return L.bot
    args = [eval_single(T, a, asg) for a in f.args]
    if tag == "neg":
        return L.neg[args[0]]
    if tag == "I":
        return T.interior[args[0]]
    if tag == "C":
        return T.closure[args[0]]
    if tag == "and":
        return L.meet[args[0]][args[1]]
    if tag == "or":
        return L.join[args[0]][args[1]]
    raise ValueError(f"unknown connective {tag}")


# ---------------------------------------------------------------- enumeration

_LETTERS = "abcdefghij"


def _element_names(n):
    return ("0",) + tuple(_LETTERS[:n - 2]) + ("1",)


def distributive_lattices(n):
    """Distributive lattices on ``n >= 2`` elements up to isomorphism.

    Bottom is element 0 and top is element n-1.  Each lattice is returned as
    the lexicographically least order matrix over relabelings of the middle
    elements, and the list is sorted.
    """
    if n < 2:
        return []
    k = n - 2
    mids = list(range(1, n - 1))
    pairs = [(i, j) for i in mids for j in mids if i < j]
    found = set()
    for bits in range(1 << len(pairs)):
        leq = [[i == j or i == 0 or j == n - 1 for j in range(n)] for i in range(n)]
        for t, (i, j) in enumerate(pairs):
            if bits >> t & 1:
                leq[i][j] = True
        if not _transitive(leq, n):
            continue
        try:
            L = Lattice(leq)
        except ValueError:
            continue
        if not L.is_distributive():
            continue
        best = None
        for p in permutations(mids):
            perm = (0,) + p + (n - 1,)
            enc = relabel_leq(leq, perm)
            if best is None or enc < best:
                best = enc
        found.add(best)
    del k
    return sorted(found)


def _transitive(leq, n):
    return all(not (leq[a][b] and leq[b][c]) or leq[a][c]
               for a in range(n) for b in range(n) for c in range(n))


def _automorphisms(leq, n):
    mids = list(range(1, n - 1))
    out = []
    for p in permutations(mids):
        perm = (0,) + p + (n - 1,)
        if all(leq[a][b] == leq[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            out.append(perm)
    return out


def de_morgan_negations(L):
    """All order-reversing involutions of ``L`` (labelled, not up to iso)."""
    out = []
    n = L.n
    for perm in permutations(range(n)):
        if all(perm[perm[a]] == a for a in range(n)) and all(
                L.leq[perm[b]][perm[a]] for a in range(n) for b in range(n) if L.leq[a][b]):
            out.append(perm)
    return out


def interior_tables(L):
    """Interior operators satisfying T1..T4, via their images.

    Such an operator is determined by its image, which must be a sublattice
    containing both bounds; the operator sends ``a`` to the largest image
    element below ``a``.
    """
    n = L.n
    mids = list(range(1, n - 1))
    out = []
    for bits in range(1 << len(mids)):
        K = {L.bot, L.top} | {m for t, m in enumerate(mids) if bits >> t & 1}
        if any(L.meet[a][b] not in K or L.join[a][b] not in K for a in K for b in K):
            continue
        table = []
        for a in range(n):
            below = [k for k in K if L.leq[k][a]]
            table.append(max(below, key=lambda k: sum(L.leq[x][k] for x in range(n))))
        out.append(tuple(table))
    return out


def interior_tables_brute(L):
    """Every unary table satisfying T1..T4, found by exhaustive search."""
    n = L.n
    out = []
    for table in product(range(n), repeat=n):
        if table[L.top] != L.top:
            continue
        if any(not L.leq[table[a]][a] or table[table[a]] != table[a] for a in range(n)):
            continue
        if any(table[L.meet[a][b]] != L.meet[table[a]][table[b]]
               for a in range(n) for b in range(n)):
            continue
        out.append(table)
    return out


def _conj(table, perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(perm[table[inv[x]]] for x in range(len(perm)))


def _enumerate_size(n):
    algebras = []
    names = _element_names(n)
    for leq in distributive_lattices(n):
        auts = _automorphisms(leq, n)
        base = Lattice(leq, names)
        negs = sorted({min(_conj(neg, a) for a in auts) for neg in de_morgan_negations(base)})
        for neg in negs:
            L = Lattice(leq, names, neg)
            auts_neg = [a for a in auts if _conj(neg, a) == neg]
            tables = sorted({min(_conj(t, a) for a in auts_neg) for t in interior_tables(L)})
            for t in tables:
                algebras.append(FiniteRoughAlgebra(L, t).validate())
    return algebras


_ENUM_CACHE = {}


def enumerate_algebras(max_size, cls="tqBa", cap=DEFAULT_CAP, min_size=2):
    """All algebras of class ``cls`` with carrier size in ``[min_size, max_size]``.

    One representative per isomorphism class, in a fixed order (size, then
    lattice, negation and interior encodings).  The one-element algebra is
    not included.
    """
    if max_size > cap:
        raise CapExceeded(f"size {max_size} exceeds the enumeration cap {cap}")
    label = class_name(cls)
    out = []
    for n in range(max(min_size, 2), max_size + 1):
        if n not in _ENUM_CACHE:
            _ENUM_CACHE[n] = _load_cached(n) or _enumerate_size(n)
            _store_cached(n, _ENUM_CACHE[n])
        out.extend(T for T in _ENUM_CACHE[n] if label in T.classify())
    return out


def enumerate_heterogeneous(max_size, cls="tqBa", cap=DEFAULT_CAP):
    return [to_heterogeneous(T) for T in enumerate_algebras(max_size, cls, cap)]


def _cache_path(n):
    root = os.environ.get("ROUGHPROOF_CACHE")
    if not root:
        return None
    key = hashlib.sha256(f"roughproof-enum-v1:size={n}:class=all".encode()).hexdigest()[:16]
    return os.path.join(root, f"enum-{key}.alg")


def _load_cached(n):
    path = _cache_path(n)
    if path is None or not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as fh:
        return [A.validate() for A in loads_many(fh.read())]


def _store_cached(n, algebras):
    path = _cache_path(n)
    if path is None or os.path.exists(path):
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(dumps(A) for A in algebras))
    os.replace(tmp, path)


def countermodel(seq, cls="tqBa", max_size=4, cap=DEFAULT_CAP):
    """First heterogeneous algebra of the class and assignment falsifying ``seq``."""
    for T in enumerate_algebras(max_size, cls, cap):
        H = to_heterogeneous(T)
        asg = counter_assignment(seq, H)
        if asg is not None:
            return H, asg
    return None


# ---------------------------------------------------------------- .alg files

def _fmt_lattice(prefix, L):
    lines = [f"{prefix}size: {L.n}", f"{prefix}names: {' '.join(L.names)}"]
    pairs = [f"{L.names[a]}<{L.names[b]}" for a in range(L.n) for b in range(L.n)
             if a != b and L.leq[a][b]]
    lines.append(f"{prefix}leq: {' '.join(pairs)}".rstrip())
    return lines


def _fmt_map(key, table, names):
    return f"{key}: {' '.join(names[x] for x in table)}"


def dumps(A):
    """Text of the ``.alg`` format for a single-type or heterogeneous algebra."""
    if isinstance(A, FiniteRoughAlgebra):
        L = A.lattice
        lines = ["kind: single"] + _fmt_lattice("", L)
        lines.append(_fmt_map("neg", L.neg, L.names))
        lines.append(_fmt_map("interior", A.interior, L.names))
        return "\n".join(lines) + "\n"
    H = A
    lines = ["kind: heterogeneous"]
    lines += _fmt_lattice("D.", H.D)
    lines.append(_fmt_map("D.neg", H.D.neg, H.D.names))
    lines += _fmt_lattice("KI.", H.LI)
    lines += _fmt_lattice("KC.", H.LC)
    lines.append(_fmt_map("eI", H.eI, H.D.names))
    lines.append(_fmt_map("eC", H.eC, H.D.names))
    lines.append(_fmt_map("iota", H.iota, H.LI.names))
    lines.append(_fmt_map("gamma", H.gamma, H.LC.names))
    if H.sim is not None:
        lines.append(_fmt_map("sim", H.sim, H.LI.names))
    if H.minus is not None:
        lines.append(_fmt_map("minus", H.minus, H.LC.names))
    return "\n".join(lines) + "\n"


def _parse_block(text):
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        fields[key.strip()] = val.split()
    return fields


def _read_lattice(fields, prefix, neg_key=None):
    n = int(fields[f"{prefix}size"][0])
    names = fields.get(f"{prefix}names") or [str(i) for i in range(n)]
    if len(names) != n:
        raise ValueError(f"{prefix}names lists {len(names)} elements, expected {n}")
    idx = {nm: i for i, nm in enumerate(names)}
    leq = [[i == j for j in range(n)] for i in range(n)]
    for pair in fields.get(f"{prefix}leq", []):
        a, sep, b = pair.partition("<")
        if not sep or a not in idx or b not in idx:
            raise ValueError(f"bad order pair {pair!r}")
        leq[idx[a]][idx[b]] = True
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if leq[a][b] and leq[b][c]:
                    leq[a][c] = True
    neg = None
    if neg_key and neg_key in fields:
        neg = [idx[x] for x in fields[neg_key]]
    return Lattice(leq, names, neg), idx


def loads(text):
    """Parse one algebra from ``.alg`` text."""
    f = _parse_block(text)
    kind = f.get("kind", ["single"])[0]
    if kind == "single":
        L, idx = _read_lattice(f, "", "neg")
        return FiniteRoughAlgebra(L, [idx[x] for x in f["interior"]])
    if kind != "heterogeneous":
        raise ValueError(f"unknown kind {kind}")
    Dl, di = _read_lattice(f, "D.", "D.neg")
    LI, ii = _read_lattice(f, "KI.")
    LC, ci = _read_lattice(f, "KC.")
    sim = [ii[x] for x in f["sim"]] if "sim" in f else None
    minus = [ci[x] for x in f["minus"]] if "minus" in f else None
    if sim:
        LI = Lattice(LI.leq, LI.names, sim)
    if minus:
        LC = Lattice(LC.leq, LC.names, minus)
    return HeterogeneousAlgebra(
        Dl, LI, LC, [di[x] for x in f["eI"]], [di[x] for x in f["eC"]],
        [ii[x] for x in f["iota"]], [ci[x] for x in f["gamma"]], sim, minus)


def loads_many(text):
    """Parse a file holding several algebras separated by blank lines."""
    blocks, cur = [], []
    for line in text.splitlines():
        if line.strip().startswith("kind:") and cur:
            blocks.append("\n".join(cur))
            cur = []
        cur.append(line)
    if any(x.strip() for x in cur):
        blocks.append("\n".join(cur))
    return [loads(b) for b in blocks]


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(A))


def describe(A):
    """Human-readable table dump."""
    return dumps(A)


__all__ = [
    "FiniteRoughAlgebra", "HeterogeneousAlgebra", "Kernels", "classify", "kernels",
    "to_heterogeneous", "to_single", "is_isomorphic", "eval_term", "holds",
    "counter_assignment", "check_rule_soundness", "enumerate_algebras",
    "enumerate_heterogeneous", "countermodel", "dumps", "loads", "load", "save",
    "falsify", "eval_single", "Sequent", "metavars", "atoms",
]


# ---------------------------------------------------------------- batched evaluation

class ModelBank:
    """Evaluate structures over many algebras and all assignments at once.

    The algebras are laid side by side: each sort gets one id space holding
    every algebra's carrier, operations become global lookup tables, and an
    atom is a vector listing its value under every assignment in every
    algebra.  Values are memoized per (term, polarity), so sequents that
    share substructures share the work.
    """

    def __init__(self, algebras, atom_names):
        import numpy as np
        self.np = np
        self.algebras = list(algebras)
        self.atoms = sorted(atom_names)
        off = {s: [] for s in (D, KI, KC)}
        total = {s: 0 for s in (D, KI, KC)}
        for H in self.algebras:
            for s in (D, KI, KC):
                off[s].append(total[s])
                total[s] += H.carrier(s).n
        self.total = total
        segments = []
        vecs = {a: [] for a in self.atoms}
        for k, H in enumerate(self.algebras):
            n = H.D.n
            m = len(self.atoms)
            count = n ** m
            segments.append(count)
            grid = np.indices((n,) * m).reshape(m, -1) if m else np.zeros((0, 1), dtype=int)
            for i, a in enumerate(self.atoms):
                vecs[a].append(grid[i] + off[D][k])
        self.owner = np.repeat(np.arange(len(self.algebras)), segments)
        self.atom_vec = {a: np.concatenate(v).astype(np.intp) for a, v in vecs.items()}
        self.tables = {}
        for s in (D, KI, KC):
            for name in ("meet", "join", "imp", "coimp", "leq", "neg", "top", "bot"):
                self.tables[f"{s}.{name}"] = self._build(f"{s}.{name}", s, s, off)
        src = {"eI": (KI, D), "eC": (KC, D), "iota": (D, KI), "gamma": (D, KC),
               "iotaL": (D, KI), "gammaR": (D, KC)}
        for op, (a, b) in src.items():
            self.tables[op] = self._build(op, a, b, off)
        self._memo = {}

    def _build(self, op, src, dst, off):
        np = self.np
        name = op.rpartition(".")[2]
        if name in ("top", "bot"):
            vals = [off[dst][k] + self.algebras[k].op_table(op)[1]
                    for k in range(len(self.algebras))]
            return ("const", np.asarray(vals, dtype=np.intp)[self.owner])
        if name in ("meet", "join", "imp", "coimp", "leq"):
            n = self.total[src]
            tab = np.zeros((n, n), dtype=np.intp)
            for k, H in enumerate(self.algebras):
                L = H.carrier(src)
                o = off[src][k]
                block = np.asarray(L.leq if name == "leq" else getattr(L, name), dtype=np.intp)
                tab[o:o + L.n, o:o + L.n] = block if name == "leq" else block + o
            return ("binary", tab)
        tab = np.zeros(self.total[src], dtype=np.intp)
        for k, H in enumerate(self.algebras):
            try:
                table = H.op_table(op)[1]
            except ValueError:
                continue
            o = off[src][k]
            tab[o:o + len(table)] = np.asarray(table, dtype=np.intp) + off[dst][k]
        return ("unary", tab)

    def value(self, term, side="precedent"):
        from .syntax import FORMULA_SIGS, _FORMULA_OPS, _STRUCT_OPS, child_sides
        key = (term, side if term.is_structural else None)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if term.tag == "atom":
            out = self.atom_vec[term.name]
        else:
            if term.tag in FORMULA_SIGS:
                op = _FORMULA_OPS[term.tag]
                args = [self.value(a) for a in term.args]
            else:
                op = _STRUCT_OPS[term.tag]
                args = [self.value(a, s) for a, s in zip(term.args, child_sides(term.tag, side))]
            kind, tab = self.tables[op]
            if kind == "const":
                out = tab
            elif kind == "unary":
                out = tab[args[0]]
            else:
                out = tab[args[0], args[1]]
        self._memo[key] = out
        return out

    def valid(self, seq):
        """True iff ``seq`` holds in every algebra of the bank."""
        lhs = self.value(seq.left, "precedent")
        rhs = self.value(seq.right, "succedent")
        _, leq = self.tables[f"{seq.left.sort}.leq"]
        return bool(leq[lhs, rhs].all())
