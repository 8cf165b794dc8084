"""The single-type language of rough algebras and its multi-type translation.

L-formulas are written as s-expressions: ``p``, ``top``, ``bot``,
``(neg A)``, ``(I A)``, ``(C A)``, ``(and A B)``, ``(or A B)``.
"""

import itertools
import random
from dataclasses import dataclass

from .algebra import eval_single, holds, to_heterogeneous
from .errors import ParseError
from .parser import SList, _read_one
from .syntax import Sequent, atom, mk

_ARITY = {"top": 0, "bot": 0, "neg": 1, "I": 1, "C": 1, "and": 2, "or": 2}


@dataclass(frozen=True)
class LFormula:
    tag: str
    args: tuple = ()
    name: str = None

    def __repr__(self):
        return render_lformula(self)


def latom(name):
    return LFormula("atom", (), name)


def lmk(tag, *args):
    if _ARITY.get(tag) != len(args):
        raise ValueError(f"{tag} takes {_ARITY.get(tag)} arguments")
    return LFormula(tag, tuple(args))


def render_lformula(f):
    if f.tag == "atom":
        return f.name
    if not f.args:
        return f.tag
    return "(" + " ".join([f.tag] + [render_lformula(a) for a in f.args]) + ")"


def parse_lformula(text, origin="<string>"):
    """Parse an L-formula such as ``(I p)`` or ``(C (and p q))``."""
    return _to_lformula(_read_one(text, origin), origin)


def _to_lformula(node, origin):
    if not isinstance(node, SList):
        word = node.text
        if word in ("top", "bot"):
            return LFormula(word)
        if word in _ARITY or not (word[:1].islower() and word.replace("_", "").isalnum()):
            raise ParseError(node.line, node.col, f"not an L-formula: {word}", origin)
        return latom(word)
    if not node.items or isinstance(node.items[0], SList):
        raise ParseError(node.line, node.col, "expected an operator", origin)
    op = node.items[0].text
    args = node.items[1:]
    if op not in _ARITY or _ARITY[op] == 0:
        raise ParseError(node.line, node.col, f"unknown L-operator: {op}", origin)
    if len(args) != _ARITY[op]:
        raise ParseError(node.line, node.col,
                         f"{op} takes {_ARITY[op]} arguments, got {len(args)}", origin)
    return LFormula(op, tuple(_to_lformula(a, origin) for a in args))


def t_translate(f):
    """Multi-type formula of sort D: I becomes circI boxI and C becomes circC diamC."""
    if f.tag == "atom":
        return atom(f.name)
    if f.tag in ("top", "bot"):
        return mk(f.tag)
    args = [t_translate(a) for a in f.args]
    if f.tag == "I":
        return mk("circI", mk("boxI", args[0]))
    if f.tag == "C":
        return mk("circC", mk("diamC", args[0]))
    return mk(f.tag, *args)


def translate_sequent(left, right):
    return Sequent(t_translate(left), t_translate(right))


# ---------------------------------------------------------------- Hilbert systems

@dataclass(frozen=True)
class HilbertGoal:
    """One axiom (or rule) of a Hilbert system with its proof-search target.

    ``calculus`` is the smallest calculus in which the target is expected to
    be derivable.  A rule keeps its L-premises in ``premises`` and uses the
    equivalent single sequent as ``target``.
    """

    label: str
    left: LFormula
    right: LFormula
    calculus: str
    target: Sequent
    premises: tuple = ()


_P, _Q = latom("p"), latom("q")
_I = lambda a: lmk("I", a)  # noqa: E731
_C = lambda a: lmk("C", a)  # noqa: E731
_NEG = lambda a: lmk("neg", a)  # noqa: E731


def _axiom(label, left, right, calculus):
    return HilbertGoal(label, left, right, calculus, translate_sequent(left, right))


def _base_goals():
    top = LFormula("top")
    return [
        _axiom("i", _I(_P), _P, "D.TQBA"),
        _axiom("ii", top, _I(top), "D.TQBA"),
        _axiom("iii", _I(lmk("and", _P, _Q)), lmk("and", _I(_P), _I(_Q)), "D.TQBA"),
        _axiom("iv", lmk("and", _I(_P), _I(_Q)), _I(lmk("and", _P, _Q)), "D.TQBA"),
        _axiom("v", _I(_P), _I(_I(_P)), "D.TQBA"),
        _axiom("viii", lmk("or", _I(_P), _I(_Q)), _I(lmk("or", _P, _Q)), "D.TQBA"),
        _axiom("C-def-1", _C(_P), _NEG(_I(_NEG(_P))), "D.TQBA"),
        _axiom("C-def-2", _NEG(_I(_NEG(_P))), _C(_P), "D.TQBA"),
        _axiom("C-def-3", _NEG(_C(_NEG(_P))), _I(_P), "D.TQBA"),
        _axiom("C-def-4", _I(_P), _NEG(_C(_NEG(_P))), "D.TQBA"),
    ]


def _t5():
    return _axiom("vi", _C(_I(_P)), _I(_P), "D.TQBA5")


def _t6():
    top = LFormula("top")
    return _axiom("ix", top, lmk("or", _I(_P), _NEG(_I(_P))), "D.IA1")


def _t7():
    return _axiom("vii", _I(lmk("or", _P, _Q)), lmk("or", _I(_P), _I(_Q)), "D.IA2")


def _t8():
    # the rule IA |- IB, CA |- CB / A |- B, as the sequent a and CB |- IA or b
    left = lmk("and", _P, _C(_Q))
    right = lmk("or", _I(_P), _Q)
    prem = ((_I(_P), _I(_Q)), (_C(_P), _C(_Q)))
    return HilbertGoal("x", _P, _Q, "D.IA3", translate_sequent(left, right), prem)


_EXTRA = {
    "H.TQBA": [],
    "H.TQBA5": [_t5],
    "H.IA1": [_t5, _t6],
    "H.IA2": [_t5, _t7],
    "H.IA3": [_t5, _t8],
    "H.PRA": [_t5, _t6, _t7, _t8],
}

LOGICS = tuple(_EXTRA)


def translate_hilbert(logic):
    """Proof-search goals for every axiom and rule of the Hilbert system ``logic``."""
    key = logic.upper()
    if not key.startswith("H."):
        key = "H." + key
    if key not in _EXTRA:
        raise ValueError(f"unknown logic {logic!r}; expected one of {', '.join(LOGICS)}")
    return _base_goals() + [make() for make in _EXTRA[key]]


def regression_targets():
    """The distinct goals of all logics, keyed by label."""
    out = {}
    for logic in LOGICS:
        for g in translate_hilbert(logic):
            out.setdefault(g.label, g)
    return out


# ---------------------------------------------------------------- preservation sweep

def random_lformula(rng, depth, atoms=("p", "q")):
    """Random L-formula of depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.2:
        pick = rng.randrange(len(atoms) + 2)
        if pick < len(atoms):
            return latom(atoms[pick])
        return LFormula(("top", "bot")[pick - len(atoms)])
    tag = rng.choice(["neg", "I", "C", "and", "or"])
    args = [random_lformula(rng, depth - 1, atoms) for _ in range(_ARITY[tag])]
    return LFormula(tag, tuple(args))


def single_valid(T, left, right, atoms=("p", "q")):
    """Does ``left <= right`` hold in ``T`` under every assignment?"""
    L = T.lattice
    for values in itertools.product(range(L.n), repeat=len(atoms)):
        asg = dict(zip(atoms, values))
        if not L.leq[eval_single(T, left, asg)][eval_single(T, right, asg)]:
            return False
    return True


def preservation_failures(T, count=200, depth=4, seed=0):
    """Pairs of L-formulas on which validity in ``T`` and in its heterogeneous form differ."""
    rng = random.Random(seed)
    H = to_heterogeneous(T)
    bad = []
    for _ in range(count):
        a, b = random_lformula(rng, depth), random_lformula(rng, depth)
        if rng.random() < 0.3:
            # bias towards valid pairs so both directions get exercised
            b = lmk("or", a, b) if depth else a
        if single_valid(T, a, b) != holds(translate_sequent(a, b), H):
            bad.append((a, b))
    return bad
