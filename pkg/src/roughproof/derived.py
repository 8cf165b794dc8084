"""Derived rules expanded into primitive inferences.

Every helper takes finished proof trees for its premises and returns the
proof tree of the derived conclusion, built forward with ``calculus.infer``.
The search uses them as single steps; the golden builders use them to keep
long derivations readable.
"""

from .calculus import infer
from .syntax import ProofTree, Sequent, mk

# hat (precedent) cluster, check (succedent) cluster and their units per sort
_HAT = {"D": "s-wedge", "KI": "s-cap", "KC": "s-sqcap"}
_CHECK = {"D": "s-vee", "KI": "s-cup", "KC": "s-sqcup"}
_TOP_UNIT = {"D": ("s-top", "top_D"), "KI": ("s-1I", "one_KI"), "KC": ("s-1C", "one_KC")}
_BOT_UNIT = {"D": ("s-bot", "bot_D"), "KI": ("s-0I", "zero_KI"), "KC": ("s-0C", "zero_KC")}
_TOP_AXIOM = {"D": ("top", "top_R"), "KI": ("1I", "oneI_R"), "KC": ("1C", "oneC_R")}
_BOT_AXIOM = {"D": ("bot", "bot_L"), "KI": ("0I", "zeroI_L"), "KC": ("0C", "zeroC_L")}
# metavariable standing for the weakened structure in W_<sort>
_W_VAR = {"D": "Z", "KI": "Lambda", "KC": "Omega"}


def leaf(rule, seq):
    return ProofTree(rule, seq, [])


def step(name, *kids, pick=None, **extra):
    """One forward inference; keyword arguments bind conclusion-only metavariables."""
    return infer(name, list(kids), extra=extra or None, pick=pick)


def left_is(tag):
    return lambda s: s.left.tag == tag


def right_is(tag):
    return lambda s: s.right.tag == tag


def weaken_left(tree, extra):
    l, r = tree.conclusion
    want = Sequent(mk(_HAT[l.sort], l, extra), r)
    return step(f"W_{l.sort}", tree, pick=lambda s: s == want, **{_W_VAR[l.sort]: extra})


def weaken_right(tree, extra):
    l, r = tree.conclusion
    want = Sequent(l, mk(_CHECK[l.sort], r, extra))
    return step(f"W_{l.sort}", tree, pick=lambda s: s == want, **{_W_VAR[l.sort]: extra})


def swap_left(tree):
    l, r = tree.conclusion
    want = Sequent(mk(l.tag, l.args[1], l.args[0]), r)
    return step(f"E_{l.sort}", tree, pick=lambda s: s == want)


def swap_right(tree):
    l, r = tree.conclusion
    want = Sequent(l, mk(r.tag, r.args[1], r.args[0]))
    return step(f"E_{l.sort}", tree, pick=lambda s: s == want)


# ---------------------------------------------------------------- axioms

def top_right(left):
    """``left |- top`` (or the kernel unit formula) for any precedent structure."""
    sort = left.sort
    unit, unit_rule = _TOP_UNIT[sort]
    formula, axiom = _TOP_AXIOM[sort]
    base = leaf(axiom, Sequent(mk(unit), mk(formula)))
    if left == mk(unit):
        return base
    t = weaken_left(base, left)
    t = swap_left(t)
    return step(unit_rule, t, pick=lambda s: s.left == left)


def bot_left(right):
    """``bot |- right`` for any succedent structure."""
    sort = right.sort
    unit, unit_rule = _BOT_UNIT[sort]
    formula, axiom = _BOT_AXIOM[sort]
    base = leaf(axiom, Sequent(mk(formula), mk(unit)))
    if right == mk(unit):
        return base
    t = weaken_right(base, right)
    t = swap_right(t)
    return step(unit_rule, t, pick=lambda s: s.right == right)


# ---------------------------------------------------------------- contraction macros

def and_right(left_proof, right_proof):
    """From ``X |- A`` and ``X |- B`` derive ``X |- A and B`` (and the kernel meets)."""
    sort = left_proof.conclusion.sort
    name = {"D": "and_R", "KI": "cap_R", "KC": "sqcap_R"}[sort]
    t = step(name, left_proof, right_proof)
    return step(f"C_{sort}", t)


def or_left(left_proof, right_proof):
    """From ``A |- Y`` and ``B |- Y`` derive ``A or B |- Y`` (and the kernel joins)."""
    sort = left_proof.conclusion.sort
    name = {"D": "or_L", "KI": "cup_L", "KC": "sqcup_L"}[sort]
    t = step(name, left_proof, right_proof)
    return step(f"C_{sort}", t)


# ---------------------------------------------------------------- modal macros

def to(name, tree, left, right, **extra):
    """Apply ``name`` forward, selecting the conclusion ``left |- right``."""
    want = Sequent(left, right)
    return step(name, tree, pick=lambda s: s == want, **extra)


def box_i_left(tree, target):
    """From ``A |- circI(Delta)`` derive ``boxI A |- Delta``."""
    a = tree.conclusion.left
    boxed = mk("boxI", a)
    t = step("boxI_L", tree)
    t = to("ad_DKI", t, mk("s-circI", boxed), mk("s-circI", target))
    return to("circI-emb", t, boxed, target)


def diam_i_right(tree, target):
    """From ``circI(Gamma) |- A`` derive ``Gamma |- diamI A``."""
    dia = mk("diamI", tree.conclusion.right)
    t = step("diamI_R", tree)
    t = to("ad_DKI", t, mk("s-circI", target), mk("s-circI", dia))
    return to("circI-emb", t, target, dia)


def diam_c_right(tree, target):
    """From ``circC(Pi) |- A`` derive ``Pi |- diamC A``."""
    dia = mk("diamC", tree.conclusion.right)
    t = step("diamC_R", tree)
    t = to("ad_DKC", t, mk("s-circC", target), mk("s-circC", dia))
    return to("circC-emb", t, target, dia)


def box_c_left(tree, target):
    """From ``A |- circC(Pi)`` derive ``boxC A |- Pi``."""
    boxed = mk("boxC", tree.conclusion.left)
    t = step("boxC_L", tree)
    t = to("ad_DKC", t, mk("s-circC", boxed), mk("s-circC", target))
    return to("circC-emb", t, boxed, target)


def box_wrap(tree):
    """From ``Gamma |- Lambda`` derive ``Gamma |- boxI(circI Lambda)``."""
    g, lam = tree.conclusion
    t = to("circI-emb", tree, mk("s-circI", g), mk("s-circI", lam))
    return to("ad_DKI", t, g, mk("s-boxI", mk("s-circI", lam)))


def split_kernel_join(tree):
    """From ``Gamma |- Delta cup Lambda`` derive ``Gamma |- boxI(circI Delta vee circI Lambda)``.

    Each kernel component is wrapped as ``boxI circI``, weakened at type D
    up to the common join and the two copies are contracted.
    """
    gamma = tree.conclusion.left
    delta, lam = tree.conclusion.right.args
    c_delta, c_lam = mk("s-circI", delta), mk("s-circI", lam)
    joined = mk("s-vee", c_delta, c_lam)
    b_lam, b_join = mk("s-boxI", c_lam), mk("s-boxI", joined)
    cup, sup = (lambda a, b: mk("s-cup", a, b)), (lambda a, b: mk("s-supL", a, b))

    # Lambda becomes boxI circI Lambda
    t = to("res_KI", tree, sup(delta, gamma), lam)
    t = box_wrap(t)
    t = to("res_KI", t, gamma, cup(delta, b_lam))
    t = swap_right(t)
    # Delta becomes circI Delta, raised to the join
    t = to("res_KI", t, sup(b_lam, gamma), delta)
    t = to("circI-emb", t, mk("s-circI", sup(b_lam, gamma)), c_delta)
    t = weaken_right(t, c_lam)
    t = to("ad_DKI", t, sup(b_lam, gamma), b_join)
    t = to("res_KI", t, gamma, cup(b_lam, b_join))
    t = swap_right(t)
    # boxI circI Lambda, raised to the join
    t = to("res_KI", t, sup(b_join, gamma), b_lam)
    t = to("ad_DKI", t, mk("s-circI", sup(b_join, gamma)), c_lam)
    t = weaken_right(t, c_delta)
    t = swap_right(t)
    t = to("ad_DKI", t, sup(b_join, gamma), b_join)
    t = to("res_KI", t, gamma, cup(b_join, b_join))
    return to("C_KI", t, gamma, b_join)


def circ_i_join(tree):
    """From ``X |- circI(Delta cup Lambda)`` derive ``X |- circI Delta vee circI Lambda``."""
    x, right = tree.conclusion
    inner = right.args[0]
    t = to("ad_DKI", tree, mk("s-diamI", x), inner)
    t = split_kernel_join(t)
    joined = t.conclusion.right.args[0]
    return to("diamI-boxI", t, x, joined)
