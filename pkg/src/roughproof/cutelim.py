"""Cut elimination for the display calculi.

A single cut with cut-free premises ``X |- A`` and ``A |- Y`` is removed in
two passes.  The left pass follows the occurrences of ``A`` that are
congruent to the cut formula up the left proof, inheriting positions
through the rule schemas, and replaces them by ``Y``; where such an
occurrence is introduced as principal formula a new cut against the right
proof is placed.  The right pass does the same inside the right proof,
replacing ``A`` by the left context, and stops at cuts where the formula is
principal on both sides.  Those are rewritten by ``reduce_principal`` into
cuts on smaller formulas, which are eliminated recursively.
"""

from collections import Counter

from .calculus import check_proof, expanded_rules, match_sequent
from .derived import step, swap_left, swap_right, to
from .errors import InvalidProof, NotPrincipal, StuckCut
from .syntax import ProofTree, formula_leaves, mk, replace_at, size, subformulas

CUTS = frozenset(["Cut_D", "Cut_KI", "Cut_KC"])
_CUT_OF_SORT = {"D": "Cut_D", "KI": "Cut_KI", "KC": "Cut_KC"}

# connective -> (rule introducing it on the right, rule introducing it on the left)
INTRODUCTIONS = {
    "top": ("top_R", "top_L"), "bot": ("bot_R", "bot_L"),
    "neg": ("neg_R", "neg_L"), "and": ("and_R", "and_L"), "or": ("or_R", "or_L"),
    "circI": ("circI_R", "circI_L"), "circC": ("circC_R", "circC_L"),
    "boxI": ("boxI_R", "boxI_L"), "diamI": ("diamI_R", "diamI_L"),
    "diamC": ("diamC_R", "diamC_L"), "boxC": ("boxC_R", "boxC_L"),
    "1I": ("oneI_R", "oneI_L"), "0I": ("zeroI_R", "zeroI_L"),
    "cap": ("cap_R", "cap_L"), "cup": ("cup_R", "cup_L"), "simK": ("sim_R", "sim_L"),
    "1C": ("oneC_R", "oneC_L"), "0C": ("zeroC_R", "zeroC_L"),
    "sqcap": ("sqcap_R", "sqcap_L"), "sqcup": ("sqcup_R", "sqcup_L"),
    "minusK": ("minus_R", "minus_L"),
}


class CutMeasure:
    """Multiset of cut-formula complexities (constructor counts) in a tree."""

    def __init__(self, tree):
        self.counts = Counter(size(n.children[0].conclusion.right)
                              for _, n in tree.walk() if n.rule in CUTS)

    def __lt__(self, other):
        # Dershowitz-Manna order on multisets of naturals
        if self.counts == other.counts:
            return False
        for k in sorted(set(self.counts) | set(other.counts), reverse=True):
            a, b = self.counts.get(k, 0), other.counts.get(k, 0)
            if a != b:
                return a < b
        return False

    def __eq__(self, other):
        return self.counts == other.counts

    def __repr__(self):
        return f"CutMeasure({sorted(self.counts.elements(), reverse=True)})"

    @property
    def total(self):
        return sum(self.counts.values())


def has_cut(tree):
    return any(n.rule in CUTS for _, n in tree.walk())


# ---------------------------------------------------------------- principal reductions

def _cut(left, right):
    return step(_CUT_OF_SORT[left.conclusion.sort], left, right)


def _principal_on(tree, formula, side):
    """Is ``formula`` principal in the last rule of ``tree`` on ``side`` (0 left, 1 right)?"""
    if tree.rule == "Id_D":
        return True
    intro = INTRODUCTIONS.get(formula.tag)
    return intro is not None and tree.rule == intro[1 - side] and (
        tree.conclusion.side(side) == formula)


def reduce_principal(node):
    """Replace a cut whose formula is principal in both premises by smaller cuts."""
    if node.rule not in CUTS:
        raise NotPrincipal("not a cut")
    left, right = node.children
    a = left.conclusion.right
    if not (_principal_on(left, a, 1) and _principal_on(right, a, 0)):
        raise NotPrincipal(f"cut formula {a!r} is parametric in a premise")
    x, y = node.conclusion
    if left.rule == "Id_D":
        return right
    if right.rule == "Id_D":
        return left
    tag = a.tag
    if tag in ("top", "1I", "1C"):
        return right.children[0]
    if tag in ("bot", "0I", "0C"):
        return left.children[0]
    rho = left.children
    sigma = right.children
    if tag in ("neg", "simK", "minusK"):
        gal, cont = {"neg": ("gal_D", "cont"), "simK": ("gal_KI", "cont_I"),
                     "minusK": ("gal_KC", "cont_C")}[tag]
        neg = {"neg": "s-neg", "simK": "s-sim", "minusK": "s-minus"}[tag]
        b = a.args[0]
        lhs = to(gal, sigma[0], mk(neg, y), b)
        rhs = to(gal, rho[0], b, mk(neg, x))
        t = _cut(lhs, rhs)
        return to(cont, t, x, y)
    if tag in ("and", "cap", "sqcap"):
        return _reduce_meet(a, rho, sigma[0], x, y)
    if tag in ("or", "cup", "sqcup"):
        return _reduce_join(a, rho[0], sigma, x, y)
    if tag == "boxI":
        t = to("ad_DKI", rho[0], mk("s-circI", x), a.args[0])
        t = _cut(t, sigma[0])
        return to("ad_DKI", t, x, y)
    if tag == "boxC":
        t = to("ad_DKC", rho[0], mk("s-circC", x), a.args[0])
        t = _cut(t, sigma[0])
        return to("ad_DKC", t, x, y)
    if tag in ("diamI", "diamC"):
        ad, circ = ("ad_DKI", "s-circI") if tag == "diamI" else ("ad_DKC", "s-circC")
        t = to(ad, sigma[0], a.args[0], mk(circ, y))
        t = _cut(rho[0], t)
        return to(ad, t, x, y)
    if tag in ("circI", "circC"):
        ad, dia, box, link = {
            "circI": ("ad_DKI", "s-diamI", "s-boxI", "diamI-boxI"),
            "circC": ("ad_DKC", "s-diamC", "s-boxC", "diamC-boxC")}[tag]
        alpha = a.args[0]
        lhs = to(ad, rho[0], mk(dia, x), alpha)
        rhs = to(ad, sigma[0], alpha, mk(box, y))
        t = _cut(lhs, rhs)
        return to(link, t, x, y)
    raise NotPrincipal(f"no reduction for {tag}")


_RES = {"D": ("res_D", "s-wedge", "s-arrow", "s-vee", "s-excl"),
        "KI": ("res_KI", "s-cap", "s-supR", "s-cup", "s-supL"),
        "KC": ("res_KC", "s-sqcap", "s-sqsupR", "s-sqcup", "s-sqsupL")}


def _reduce_meet(a, rho, sigma, x, y):
    """``X1 hat X2 |- A and B`` against ``A hat B |- Y``."""
    res, hat, arrow, _, _ = _RES[a.sort]
    fa, fb = a.args
    x1, x2 = rho[0].conclusion.left, rho[1].conclusion.left
    t = to(res, sigma, fb, mk(arrow, fa, y))
    t = _cut(rho[1], t)
    t = to(res, t, mk(hat, fa, x2), y)
    t = swap_left(t)
    t = to(res, t, fa, mk(arrow, x2, y))
    t = _cut(rho[0], t)
    t = to(res, t, mk(hat, x2, x1), y)
    return swap_left(t)


def _reduce_join(a, rho, sigma, x, y):
    """``X |- A check B`` against ``A or B |- Y1 check Y2``."""
    res, _, _, check, excl = _RES[a.sort]
    fa, fb = a.args
    y1, y2 = sigma[0].conclusion.right, sigma[1].conclusion.right
    t = to(res, rho, mk(excl, fa, x), fb)
    t = _cut(t, sigma[1])
    t = to(res, t, x, mk(check, fa, y2))
    t = swap_right(t)
    t = to(res, t, mk(excl, y2, x), fa)
    t = _cut(t, sigma[0])
    t = to(res, t, x, mk(check, y2, y1))
    return swap_right(t)


# ---------------------------------------------------------------- parametric moves

class _Engine:
    def __init__(self, calculus, trace=None):
        self.calculus = calculus
        self.rules = expanded_rules(calculus)
        self.trace = trace if trace is not None else []

    def instance(self, node, path):
        """Rule form and substitution that make ``node`` a correct inference."""
        kids = [c.conclusion for c in node.children]
        for form in self.rules.get(node.rule, ()):
            if form.arity != len(kids):
                continue
            sub = match_sequent(form.conclusion, node.conclusion)
            if sub is None:
                continue
            for prem, kid in zip(form.premises, kids):
                sub = match_sequent(prem, kid, sub)
                if sub is None:
                    break
            if sub is not None:
                return form, sub
        raise StuckCut(path, f"{node.rule} does not match its premises")

    @staticmethod
    def _meta_paths(schema):
        out = {}

        def walk(t, path):
            if t.tag == "meta":
                out.setdefault(t.name, []).append(path)
            for i, a in enumerate(t.args):
                walk(a, path + (i,))

        walk(schema.left, (0,))
        walk(schema.right, (1,))
        return out

    def inherit(self, form, occ):
        """Premise positions congruent to conclusion position ``occ``; None if principal."""
        node = form.conclusion.side(occ[0])
        k = 1
        while node.tag != "meta":
            if k == len(occ):
                return None
            node = node.args[occ[k]]
            k += 1
        rest = occ[k:]
        out = []
        for prem in form.premises:
            paths = self._meta_paths(prem).get(node.name, [])
            out.append([p + rest for p in paths])
        return out

    def substitute(self, tree, occs, repl, at_principal, path=()):
        """Replace the congruent occurrences ``occs`` of a formula in ``tree`` by ``repl``.

        ``at_principal(node)`` supplies the proof of the rewritten conclusion
        where an occurrence is principal.
        """
        if not occs:
            return tree
        concl = tree.conclusion
        for o in occs:
            concl = replace_at(concl, o, repl)
        if tree.rule == "Id_D":
            return at_principal(tree)
        form, _ = self.instance(tree, path)
        per_premise = [[] for _ in tree.children]
        for o in occs:
            inherited = self.inherit(form, o)
            if inherited is None:
                result = at_principal(tree)
                if result.conclusion != concl:
                    raise StuckCut(path, "principal replacement changed the end-sequent")
                return result
            for i, ps in enumerate(inherited):
                per_premise[i].extend(ps)
        kids = [self.substitute(c, per_premise[i], repl, at_principal, path + (i,))
                for i, c in enumerate(tree.children)]
        return ProofTree(tree.rule, concl, kids)

    def eliminate(self, left, right, path=()):
        """Cut-free proof of ``X |- Y`` from cut-free ``X |- A`` and ``A |- Y``."""
        y = right.conclusion.right

        def left_principal(node):
            if node.rule == "Id_D":
                self.trace.append(("identity", "Id_D", path))
                return right
            return self.eliminate_right(node, right, path)

        return self.substitute(left, [(1,)], y, left_principal, path)

    def eliminate_right(self, left, right, path):
        """``left`` ends with the cut formula principal on its right."""
        x = left.conclusion.left

        def both_principal(node):
            if node.rule == "Id_D":
                self.trace.append(("identity", "Id_D", path))
                return left
            self.trace.append(("principal", node.conclusion.left.tag, path))
            reduct = reduce_principal(_cut(left, node))
            return self.clean(reduct, path)

        return self.substitute(right, [(0,)], x, both_principal, path)

    def clean(self, tree, path=()):
        """Remove every cut of ``tree``, innermost first."""
        if tree.rule in CUTS:
            left = self.clean(tree.children[0], path + (0,))
            right = self.clean(tree.children[1], path + (1,))
            self.trace.append(("cut", tree.rule, path))
            return self.eliminate(left, right, path)
        if not tree.children:
            return tree
        kids = [self.clean(c, path + (i,)) for i, c in enumerate(tree.children)]
        if all(k is c for k, c in zip(kids, tree.children)):
            return tree
        return ProofTree(tree.rule, tree.conclusion, kids)


def eliminate_cuts(tree, calculus, trace=None):
    """Cut-free proof of the end-sequent of ``tree`` (which must check in ``calculus``).

    When ``trace`` is a list, ``(kind, rule or connective, path)`` entries
    are appended for every cut removed and every reduction applied.
    """
    check_proof(tree, calculus)
    if not has_cut(tree):
        return tree
    out = _Engine(calculus, trace).clean(tree)
    try:
        check_proof(out, calculus)
    except InvalidProof as exc:
        raise StuckCut(exc.path, f"reduct does not check: {exc.reason}") from None
    return out


def subformula_violations(tree):
    """Operational formulas of a proof that are not subformulas of its end-sequent."""
    allowed = set()
    for f in formula_leaves(tree.conclusion):
        subformulas(f, allowed)
    bad = set()
    for _, node in tree.walk():
        for f in formula_leaves(node.conclusion):
            for g in subformulas(f):
                if g not in allowed:
                    bad.add(g)
    return bad


__all__ = ["CutMeasure", "reduce_principal", "eliminate_cuts", "has_cut",
           "subformula_violations", "CUTS"]
