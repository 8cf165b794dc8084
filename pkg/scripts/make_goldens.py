"""Write the hand-transcribed golden derivations to src/roughproof/data/.

Each derivation is built forward, one inference at a time, and checked in
its calculus before it is written.  Run from the repository root:

    python3 scripts/make_goldens.py
"""

import pathlib

from roughproof.calculus import check_proof
from roughproof.derived import leaf, split_kernel_join, step, swap_right, to
from roughproof.parser import parse_term, render_proof
from roughproof.search import derive_identity
from roughproof.syntax import mk

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "roughproof" / "data"

T = parse_term
p, q = T("p"), T("q")
box_p, box_q = T("(boxI p)"), T("(boxI q)")
ib_p, ib_q = T("(circI (boxI p))"), T("(circI (boxI q))")
cd_p = T("(circC (diamC p))")


def ident(f):
    return derive_identity(f, "D.PRA")


def s(tag, *args):
    return mk(tag, *args)


def golden_t6():
    """T6 in D.IA1: top |- circI boxI p  or  neg circI boxI p."""
    t = step("boxI_L", leaf("Id_D", ident(p).conclusion))
    t = step("boxI_R", t)
    t = to("one_KI", t, s("s-cap", box_p, s("s-1I")), box_p)
    t = step("cgri", t, pick=0)
    # the dashed step: kernel join to D-type join under circI
    t = split_kernel_join(t)
    joined = t.conclusion.right.args[0]
    t = to("ad_DKI", t, s("s-circI", s("s-1I")), joined)
    c_sim, c_box = joined.args
    one = s("s-circI", s("s-1I"))
    t = to("res_D", t, s("s-excl", c_sim, one), c_box)
    t = step("circI_R", t)
    t = to("res_D", t, one, s("s-vee", c_sim, ib_p))
    t = swap_right(t)
    t = to("circI-oneI", t, s("s-top"), s("s-vee", ib_p, c_sim))
    t = step("top_L", t)
    t = to("res_D", t, s("s-excl", ib_p, T("top")), c_sim)
    t = step("circI-sim", t, pick=lambda x: x.right.tag == "s-neg")
    ctx = s("s-excl", ib_p, T("top"))
    t = to("gal_D", t, c_box, s("s-neg", ctx))
    t = step("circI_L", t)
    t = to("gal_D", t, ctx, s("s-neg", ib_p))
    t = step("neg_R", t)
    t = to("res_D", t, T("top"), s("s-vee", ib_p, T("(neg (circI (boxI p)))")))
    return step("or_R", t)


def _box_succedent(t, formula_left, formula_right):
    """Turn the two boxI structures of ``G |- boxI p cup boxI q`` into formulas."""
    g = t.conclusion.left
    bl, br = s("s-boxI", formula_left), s("s-boxI", formula_right)
    fl, fr = mk("boxI", formula_left), mk("boxI", formula_right)
    t = to("res_KI", t, s("s-supL", bl, g), br)
    t = step("boxI_R", t)
    t = to("res_KI", t, g, s("s-cup", bl, fr))
    t = swap_right(t)
    t = to("res_KI", t, s("s-supL", fr, g), bl)
    t = step("boxI_R", t)
    t = to("res_KI", t, g, s("s-cup", fr, fl))
    return swap_right(t)


def _circ_succedent(t):
    """Turn ``X |- circI~a vee circI~b`` into ``X |- circI a vee circI b`` (formulas)."""
    x = t.conclusion.left
    ca, cb = t.conclusion.right.args
    fa, fb = mk("circI", ca.args[0]), mk("circI", cb.args[0])
    t = to("res_D", t, s("s-excl", ca, x), cb)
    t = step("circI_R", t)
    t = to("res_D", t, x, s("s-vee", ca, fb))
    t = swap_right(t)
    t = to("res_D", t, s("s-excl", fb, x), ca)
    t = step("circI_R", t)
    t = to("res_D", t, x, s("s-vee", fb, fa))
    return swap_right(t)


def golden_t7_lr():
    """T7, left to right, in D.IA2."""
    t = step("or_L", ident(p), ident(q))
    t = step("boxI_L", t)
    t = step("boxI-cup", t)
    t = _box_succedent(t, p, q)
    t = split_kernel_join(t)
    t = to("ad_DKI", t, s("s-circI", T("(boxI (or p q))")), t.conclusion.right.args[0])
    t = step("circI_L", t)
    t = _circ_succedent(t)
    return step("or_R", t)


def _lift_disjunct(t):
    """From ``a |- p or q`` derive ``circI boxI a |- circI boxI (p or q)``."""
    t = step("boxI_L", t)
    t = step("boxI_R", t)
    t = step("circI-emb", t, pick=lambda x: x.left.tag == "s-circI")
    t = step("circI_L", t)
    return step("circI_R", t)


def golden_t7_rl():
    """T7, right to left, in D.IA2."""
    left = to("W_D", ident(p), p, s("s-vee", p, q), Z=q)
    left = _lift_disjunct(step("or_R", left))
    right = to("W_D", ident(q), q, s("s-vee", q, p), Z=p)
    right = swap_right(right)
    right = _lift_disjunct(step("or_R", right))
    t = step("or_L", left, right)
    return step("C_D", t)


def golden_t8_closed():
    """T8 in D.IA3 with A = B = p, hypotheses closed by identity proofs."""
    hyp_c = ident(cd_p)
    hyp_i = ident(ib_p)
    dia = T("(diamC p)")
    # left branch: p |- p and circC diamC p
    a = step("diamC_R", ident(p))
    a = step("circC-emb", a, pick=lambda x: x.left.tag == "s-circC")
    a = step("circC_R", a)
    b = step("Cut_D", a, hyp_c)
    c = step("circC-emb", ident(dia), pick=lambda x: x.left.tag == "s-circC")
    c = step("circC_L", c)
    t = step("Cut_D", b, c)
    t = to("circC-emb", t, s("s-diamC", p), dia)
    t = to("ad_DKC", t, p, s("s-circC", dia))
    t = step("circC_R", t)
    t = step("and_R", ident(p), t)
    left = step("C_D", t)

    # middle branch: p and circC diamC p |- circI boxI p or p
    t = step("ia3", ident(p), ident(p))
    rest = t.conclusion.right
    t = to("res_D", t, s("s-circC", s("s-diamC", p)), s("s-arrow", p, rest))
    t = to("ad_DKC", t, s("s-diamC", p), s("s-boxC", s("s-arrow", p, rest)))
    t = step("diamC_L", t)
    t = to("ad_DKC", t, s("s-circC", dia), s("s-arrow", p, rest))
    t = step("circC_L", t)
    t = to("res_D", t, s("s-wedge", p, cd_p), rest)
    t = step("and_L", t)
    conj = t.conclusion.left
    t = swap_right(t)
    cbox = s("s-circI", s("s-boxI", p))
    t = to("res_D", t, s("s-excl", p, conj), cbox)
    t = to("ad_DKI", t, s("s-diamI", s("s-excl", p, conj)), s("s-boxI", p))
    t = step("boxI_R", t)
    t = to("ad_DKI", t, s("s-excl", p, conj), s("s-circI", box_p))
    t = step("circI_R", t)
    t = to("res_D", t, conj, s("s-vee", p, ib_p))
    t = swap_right(t)
    middle = step("or_R", t)

    # right branch: circI boxI p or p |- p
    r = step("circI-emb", ident(box_p), pick=lambda x: x.left.tag == "s-circI")
    r = step("circI_R", r)
    r = step("Cut_D", r, hyp_i)
    u = step("boxI_L", ident(p))
    u = step("circI-emb", u, pick=lambda x: x.left.tag == "s-circI")
    u = step("circI_L", u)
    r = step("Cut_D", r, u)
    r = to("circI-emb", r, box_p, s("s-boxI", p))
    r = to("ad_DKI", r, s("s-circI", box_p), p)
    r = step("circI_L", r)
    r = step("or_L", r, ident(p))
    right = step("C_D", r)

    t = step("Cut_D", left, middle)
    return step("Cut_D", t, right)


GOLDENS = {
    "golden_t6.mtp": ("D.IA1", golden_t6, "T6: top |- I p or not I p"),
    "golden_t7_lr.mtp": ("D.IA2", golden_t7_lr, "T7: I(p or q) |- I p or I q"),
    "golden_t7_rl.mtp": ("D.IA2", golden_t7_rl, "T7: I p or I q |- I(p or q)"),
    "golden_t8_closed.mtp": ("D.IA3", golden_t8_closed,
                             "T8 with A = B = p, hypotheses closed by identities"),
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for name, (calc, build, note) in GOLDENS.items():
        tree = build()
        check_proof(tree, calc)
        text = f"; {note}\n; calculus: {calc}\n{render_proof(tree)}\n"
        (DATA / name).write_text(text, encoding="utf-8")
        print(f"{name}: {tree.size()} nodes, height {tree.height()}, checked in {calc}")


if __name__ == "__main__":
    main()
