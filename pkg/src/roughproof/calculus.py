"""Rule catalog of the six display calculi, schema matching and proof checking.

Rules are stored once as schemas over sorted metavariables (see
``syntax.META_KINDS``).  A double-line rule is stored with
``bidirectional=True`` and expands into both directions when checked or
applied.  Calculus identifiers are ``D.TQBA``, ``D.TQBA5``, ``D.IA1``,
``D.IA2``, ``D.IA3`` and ``D.PRA``.
"""

from collections import deque
from functools import lru_cache

from .errors import IllSorted, InvalidProof, NotDisplayable, PolarityError, UnknownCalculus
from .parser import parse_sequent, read_sexprs, render_sequent
from .syntax import (D, KC, KI, Sequent, Term, check_sequent, connectives, meta,
                     meta_info, replace_at, side_at, subterm)

CALCULI = ("D.TQBA", "D.TQBA5", "D.IA1", "D.IA2", "D.IA3", "D.PRA")

# single-type class whose heterogeneous counterparts each calculus is sound for
CLASS_OF = {"D.TQBA": "tqBa", "D.TQBA5": "tqBa5", "D.IA1": "IA1",
            "D.IA2": "IA2", "D.IA3": "IA3", "D.PRA": "pra"}

# level at which a rule enters -> calculi containing it
_LEVELS = {
    "TQBA": frozenset(CALCULI),
    "TQBA5": frozenset(CALCULI[1:]),
    "IA1": frozenset(["D.IA1", "D.PRA"]),
    "IA2": frozenset(["D.IA2", "D.PRA"]),
    "IA3": frozenset(["D.IA3", "D.PRA"]),
}

ALIASES = {"pra": "ia3", "boxI-vee": "boxI-cup"}

# connectives that only the TQBA5 family may use
TQBA5_ONLY = frozenset(["simK", "minusK", "s-sim", "s-minus"])
# operational connectives whose rules can be switched off
STRUCTURAL_ONLY_CANDIDATES = frozenset(["diamI", "boxC"])

KINDS = ("identity", "cut", "display", "structural", "operational")


def canonical_calculus(name):
    key = name.strip().upper()
    if not key.startswith("D."):
        key = "D." + key
    for c in CALCULI:
        if c.upper() == key:
            return c
    raise UnknownCalculus(f"unknown calculus: {name}")


class Rule:
    """One rule schema (one direction of a double-line rule when ``inverted``)."""

    __slots__ = ("name", "kind", "calculi", "premises", "conclusion", "bidirectional",
                 "inverted", "level")

    def __init__(self, name, kind, level, premises, conclusion, bidirectional=False,
                 inverted=False):
        self.name = name
        self.kind = kind
        self.level = level
        self.calculi = _LEVELS[level]
        self.premises = tuple(premises)
        self.conclusion = conclusion
        self.bidirectional = bidirectional
        self.inverted = inverted

    @property
    def arity(self):
        return len(self.premises)

    def directions(self):
        """This rule, plus its converse when it is a double-line rule."""
        if not self.bidirectional:
            return [self]
        return [self, Rule(self.name, self.kind, self.level, [self.conclusion],
                           self.premises[0], True, True)]

    def __repr__(self):
        prem = ", ".join(render_sequent(p) for p in self.premises)
        arrow = "<=>" if self.bidirectional else "=>"
        return f"Rule({self.name}: {prem} {arrow} {render_sequent(self.conclusion)})"


_S = lambda text: parse_sequent(text, schema=True)  # noqa: E731

# name, kind, level, premises, conclusion, bidirectional
_TABLE = [
    # identity and cut
    ("Id_D", "identity", "TQBA", [], "(seq P P)", False),
    ("Cut_D", "cut", "TQBA", ["(seq X A)", "(seq A Y)"], "(seq X Y)", False),
    ("Cut_KI", "cut", "TQBA", ["(seq Gamma Alpha)", "(seq Alpha Delta)"],
     "(seq Gamma Delta)", False),
    ("Cut_KC", "cut", "TQBA", ["(seq Pi Xi)", "(seq Xi Sigma)"], "(seq Pi Sigma)", False),

    # pure D display
    ("res_D", "display", "TQBA", ["(seq Y (s-arrow X Z))"], "(seq (s-wedge X Y) Z)", True),
    ("res_D", "display", "TQBA", ["(seq X (s-vee Y Z))"], "(seq (s-excl Y X) Z)", True),
    ("gal_D", "display", "TQBA", ["(seq (s-neg X) Y)"], "(seq (s-neg Y) X)", True),
    ("gal_D", "display", "TQBA", ["(seq X (s-neg Y))"], "(seq Y (s-neg X))", True),
    # pure kernel display
    ("res_KI", "display", "TQBA", ["(seq (s-cap Gamma Delta) Lambda)"],
     "(seq Delta (s-supR Gamma Lambda))", True),
    ("res_KI", "display", "TQBA", ["(seq Gamma (s-cup Delta Lambda))"],
     "(seq (s-supL Delta Gamma) Lambda)", True),
    ("res_KC", "display", "TQBA", ["(seq (s-sqcap Pi Sigma) Omega)"],
     "(seq Sigma (s-sqsupR Pi Omega))", True),
    ("res_KC", "display", "TQBA", ["(seq Pi (s-sqcup Sigma Omega))"],
     "(seq (s-sqsupL Sigma Pi) Omega)", True),
    # multi-type display
    ("ad_DKI", "display", "TQBA", ["(seq (s-circI Gamma) Y)"], "(seq Gamma (s-boxI Y))", True),
    ("ad_DKI", "display", "TQBA", ["(seq Y (s-circI Gamma))"], "(seq (s-diamI Y) Gamma)", True),
    ("ad_DKC", "display", "TQBA", ["(seq Y (s-circC Pi))"], "(seq (s-diamC Y) Pi)", True),
    ("ad_DKC", "display", "TQBA", ["(seq (s-circC Pi) X)"], "(seq Pi (s-boxC X))", True),

    # pure-type structural
    ("cont", "structural", "TQBA", ["(seq X Y)"], "(seq (s-neg Y) (s-neg X))", True),
    ("top_D", "structural", "TQBA", ["(seq X Y)"], "(seq (s-wedge X s-top) Y)", True),
    ("bot_D", "structural", "TQBA", ["(seq X Y)"], "(seq X (s-vee Y s-bot))", True),
    ("one_KI", "structural", "TQBA", ["(seq Gamma Delta)"],
     "(seq (s-cap Gamma s-1I) Delta)", True),
    ("zero_KI", "structural", "TQBA", ["(seq Gamma Delta)"],
     "(seq Gamma (s-cup Delta s-0I))", True),
    ("one_KC", "structural", "TQBA", ["(seq Pi Sigma)"],
     "(seq (s-sqcap Pi s-1C) Sigma)", True),
    ("zero_KC", "structural", "TQBA", ["(seq Pi Sigma)"],
     "(seq Pi (s-sqcup Sigma s-0C))", True),

    # multi-type structural
    ("circI-oneI", "structural", "TQBA", ["(seq s-top Y)"], "(seq (s-circI s-1I) Y)", True),
    ("boxI-top", "structural", "TQBA", ["(seq Gamma (s-boxI s-bot))"], "(seq Gamma s-0I)", True),
    ("diamC-top", "structural", "TQBA", ["(seq (s-diamC s-top) Pi)"], "(seq s-1C Pi)", True),
    ("circC-zeroC", "structural", "TQBA", ["(seq X s-bot)"], "(seq X (s-circC s-0C))", True),
    ("circI-emb", "structural", "TQBA", ["(seq (s-circI Gamma) (s-circI Delta))"],
     "(seq Gamma Delta)", True),
    ("circC-emb", "structural", "TQBA", ["(seq (s-circC Pi) (s-circC Sigma))"],
     "(seq Pi Sigma)", True),
    ("diamC-boxC", "structural", "TQBA", ["(seq (s-diamC X) (s-boxC Y))"], "(seq X Y)", False),
    ("diamI-boxI", "structural", "TQBA", ["(seq (s-diamI X) (s-boxI Y))"], "(seq X Y)", False),
    ("IC", "structural", "TQBA", ["(seq X (s-circI (s-boxI (s-neg Y))))"],
     "(seq X (s-neg (s-circC (s-diamC Y))))", True),
    ("IC", "structural", "TQBA", ["(seq X (s-circC (s-boxC (s-neg Y))))"],
     "(seq X (s-neg (s-circI (s-diamI Y))))", True),
    ("CI", "structural", "TQBA", ["(seq (s-circC (s-diamC (s-neg X))) Y)"],
     "(seq (s-neg (s-circI (s-boxI X))) Y)", True),
    ("CI", "structural", "TQBA", ["(seq (s-circI (s-diamI (s-neg X))) Y)"],
     "(seq (s-neg (s-circC (s-boxC X))) Y)", True),

    # multi-type operational
    ("diamI_L", "operational", "TQBA", ["(seq (s-diamI A) Gamma)"], "(seq (diamI A) Gamma)", False),
    ("diamI_R", "operational", "TQBA", ["(seq X A)"], "(seq (s-diamI X) (diamI A))", False),
    ("boxI_R", "operational", "TQBA", ["(seq Gamma (s-boxI A))"], "(seq Gamma (boxI A))", False),
    ("boxI_L", "operational", "TQBA", ["(seq A X)"], "(seq (boxI A) (s-boxI X))", False),
    ("diamC_L", "operational", "TQBA", ["(seq (s-diamC A) Pi)"], "(seq (diamC A) Pi)", False),
    ("diamC_R", "operational", "TQBA", ["(seq X A)"], "(seq (s-diamC X) (diamC A))", False),
    ("boxC_R", "operational", "TQBA", ["(seq Pi (s-boxC A))"], "(seq Pi (boxC A))", False),
    ("boxC_L", "operational", "TQBA", ["(seq A X)"], "(seq (boxC A) (s-boxC X))", False),
    ("circI_R", "operational", "TQBA", ["(seq X (s-circI Alpha))"], "(seq X (circI Alpha))", False),
    ("circI_L", "operational", "TQBA", ["(seq (s-circI Alpha) X)"], "(seq (circI Alpha) X)", False),
    ("circC_R", "operational", "TQBA", ["(seq X (s-circC Xi))"], "(seq X (circC Xi))", False),
    ("circC_L", "operational", "TQBA", ["(seq (s-circC Xi) X)"], "(seq (circC Xi) X)", False),

    # pure D operational
    ("top_L", "operational", "TQBA", ["(seq s-top X)"], "(seq top X)", False),
    ("top_R", "operational", "TQBA", [], "(seq s-top top)", False),
    ("bot_L", "operational", "TQBA", [], "(seq bot s-bot)", False),
    ("bot_R", "operational", "TQBA", ["(seq X s-bot)"], "(seq X bot)", False),
    ("and_L", "operational", "TQBA", ["(seq (s-wedge A B) X)"], "(seq (and A B) X)", False),
    ("and_R", "operational", "TQBA", ["(seq X A)", "(seq Y B)"],
     "(seq (s-wedge X Y) (and A B))", False),
    ("or_L", "operational", "TQBA", ["(seq A X)", "(seq B Y)"],
     "(seq (or A B) (s-vee X Y))", False),
    ("or_R", "operational", "TQBA", ["(seq X (s-vee A B))"], "(seq X (or A B))", False),
    ("neg_L", "operational", "TQBA", ["(seq (s-neg A) X)"], "(seq (neg A) X)", False),
    ("neg_R", "operational", "TQBA", ["(seq X (s-neg A))"], "(seq X (neg A))", False),
    # pure K_I operational
    ("oneI_L", "operational", "TQBA", ["(seq s-1I Gamma)"], "(seq 1I Gamma)", False),
    ("oneI_R", "operational", "TQBA", [], "(seq s-1I 1I)", False),
    ("zeroI_L", "operational", "TQBA", [], "(seq 0I s-0I)", False),
    ("zeroI_R", "operational", "TQBA", ["(seq Gamma s-0I)"], "(seq Gamma 0I)", False),
    ("cap_L", "operational", "TQBA", ["(seq (s-cap Alpha Beta) Gamma)"],
     "(seq (cap Alpha Beta) Gamma)", False),
    ("cap_R", "operational", "TQBA", ["(seq Gamma Alpha)", "(seq Delta Beta)"],
     "(seq (s-cap Gamma Delta) (cap Alpha Beta))", False),
    ("cup_L", "operational", "TQBA", ["(seq Alpha Gamma)", "(seq Beta Delta)"],
     "(seq (cup Alpha Beta) (s-cup Gamma Delta))", False),
    ("cup_R", "operational", "TQBA", ["(seq Gamma (s-cup Alpha Beta))"],
     "(seq Gamma (cup Alpha Beta))", False),
    # pure K_C operational
    ("oneC_L", "operational", "TQBA", ["(seq s-1C Pi)"], "(seq 1C Pi)", False),
    ("oneC_R", "operational", "TQBA", [], "(seq s-1C 1C)", False),
    ("zeroC_L", "operational", "TQBA", [], "(seq 0C s-0C)", False),
    ("zeroC_R", "operational", "TQBA", ["(seq Pi s-0C)"], "(seq Pi 0C)", False),
    ("sqcap_L", "operational", "TQBA", ["(seq (s-sqcap Xi Chi) Pi)"],
     "(seq (sqcap Xi Chi) Pi)", False),
    ("sqcap_R", "operational", "TQBA", ["(seq Pi Xi)", "(seq Sigma Chi)"],
     "(seq (s-sqcap Pi Sigma) (sqcap Xi Chi))", False),
    ("sqcup_L", "operational", "TQBA", ["(seq Xi Pi)", "(seq Chi Sigma)"],
     "(seq (sqcup Xi Chi) (s-sqcup Pi Sigma))", False),
    ("sqcup_R", "operational", "TQBA", ["(seq Pi (s-sqcup Xi Chi))"],
     "(seq Pi (sqcup Xi Chi))", False),

    # TQBA5 additions
    ("gal_KI", "display", "TQBA5", ["(seq (s-sim Gamma) Delta)"], "(seq (s-sim Delta) Gamma)", True),
    ("gal_KI", "display", "TQBA5", ["(seq Gamma (s-sim Delta))"], "(seq Delta (s-sim Gamma))", True),
    ("gal_KC", "display", "TQBA5", ["(seq (s-minus Pi) Sigma)"], "(seq (s-minus Sigma) Pi)", True),
    ("gal_KC", "display", "TQBA5", ["(seq Pi (s-minus Sigma))"], "(seq Sigma (s-minus Pi))", True),
    ("cont_I", "structural", "TQBA5", ["(seq Gamma Delta)"],
     "(seq (s-sim Delta) (s-sim Gamma))", True),
    ("cont_C", "structural", "TQBA5", ["(seq Pi Sigma)"],
     "(seq (s-minus Sigma) (s-minus Pi))", True),
    ("circI-boxI", "structural", "TQBA5", ["(seq X (s-circI (s-boxI Y)))"],
     "(seq X (s-circC (s-boxC Y)))", True),
    ("circI-sim", "structural", "TQBA5", ["(seq X (s-circI (s-sim Gamma)))"],
     "(seq X (s-neg (s-circI Gamma)))", True),
    ("circC-minus", "structural", "TQBA5", ["(seq X (s-circC (s-minus Pi)))"],
     "(seq X (s-neg (s-circC Pi)))", True),
    ("sim_R", "operational", "TQBA5", ["(seq Gamma (s-sim Alpha))"], "(seq Gamma (simK Alpha))", False),
    ("sim_L", "operational", "TQBA5", ["(seq (s-sim Alpha) Gamma)"], "(seq (simK Alpha) Gamma)", False),
    ("minus_R", "operational", "TQBA5", ["(seq Pi (s-minus Xi))"], "(seq Pi (minusK Xi))", False),
    ("minus_L", "operational", "TQBA5", ["(seq (s-minus Xi) Pi)"], "(seq (minusK Xi) Pi)", False),

    # axiomatic extensions
    ("cgri", "structural", "IA1", ["(seq (s-cap Gamma Delta) Lambda)"],
     "(seq Delta (s-cup (s-sim Gamma) Lambda))", False),
    ("cgri", "structural", "IA1", ["(seq (s-sqcap Pi Sigma) Omega)"],
     "(seq Sigma (s-sqcup (s-minus Pi) Omega))", False),
    ("boxI-cup", "structural", "IA2", ["(seq Gamma (s-boxI (s-vee X Y)))"],
     "(seq Gamma (s-cup (s-boxI X) (s-boxI Y)))", False),
    ("diamC-wedge", "structural", "IA2", ["(seq (s-diamC (s-wedge X Y)) Pi)"],
     "(seq (s-sqcap (s-diamC X) (s-diamC Y)) Pi)", False),
    ("ia3", "structural", "IA3", ["(seq X Y)", "(seq W Z)"],
     "(seq (s-wedge X (s-circC (s-diamC W))) (s-vee (s-circI (s-boxI Y)) Z))", False),
]

# weakening, contraction, exchange and associativity for each AC pair
_AC_PAIRS = [("D", "s-wedge", "s-vee", ("X", "Y", "Z", "W")),
             ("KI", "s-cap", "s-cup", ("Gamma", "Delta", "Lambda", "Theta")),
             ("KC", "s-sqcap", "s-sqcup", ("Pi", "Sigma", "Omega", "Psi"))]
for _sort, _hat, _check, (_a, _b, _c, _d) in _AC_PAIRS:
    _TABLE += [
        (f"W_{_sort}", "structural", "TQBA", [f"(seq {_a} {_b})"],
         f"(seq ({_hat} {_a} {_c}) {_b})", False),
        (f"W_{_sort}", "structural", "TQBA", [f"(seq {_a} {_b})"],
         f"(seq {_a} ({_check} {_b} {_c}))", False),
        (f"C_{_sort}", "structural", "TQBA", [f"(seq ({_hat} {_a} {_a}) {_b})"],
         f"(seq {_a} {_b})", False),
        (f"C_{_sort}", "structural", "TQBA", [f"(seq {_b} ({_check} {_a} {_a}))"],
         f"(seq {_b} {_a})", False),
        (f"E_{_sort}", "structural", "TQBA", [f"(seq ({_hat} {_a} {_b}) {_c})"],
         f"(seq ({_hat} {_b} {_a}) {_c})", False),
        (f"E_{_sort}", "structural", "TQBA", [f"(seq {_c} ({_check} {_a} {_b}))"],
         f"(seq {_c} ({_check} {_b} {_a}))", False),
        (f"A_{_sort}", "structural", "TQBA", [f"(seq ({_hat} {_a} ({_hat} {_b} {_c})) {_d})"],
         f"(seq ({_hat} ({_hat} {_a} {_b}) {_c}) {_d})", True),
        (f"A_{_sort}", "structural", "TQBA", [f"(seq {_d} ({_check} {_a} ({_check} {_b} {_c})))"],
         f"(seq {_d} ({_check} ({_check} {_a} {_b}) {_c}))", True),
    ]

EXCHANGE = frozenset(["E_D", "E_KI", "E_KC"])


@lru_cache(maxsize=None)
def catalog():
    """Every rule of every calculus, in catalog order."""
    return tuple(Rule(name, kind, level, [_S(p) for p in prems], _S(concl), bi)
                 for name, kind, level, prems, concl, bi in _TABLE)


def rule_names():
    seen = {}
    for r in catalog():
        seen.setdefault(r.name, None)
    return list(seen)


def rule_arities():
    """Rule name (and alias) -> number of premises."""
    out = {r.name: r.arity for r in catalog()}
    for alias, name in ALIASES.items():
        out[alias] = out[name]
    return out


def canonical_rule_name(name):
    return ALIASES.get(name, name)


def rule_set(calculus, operational_diamI_boxC=True):
    """Rules of ``calculus``, double-line rules listed once.

    With ``operational_diamI_boxC=False`` the four operational rules for
    ``diamI`` and ``boxC`` are left out, reading those connectives as
    structural only.
    """
    calc = canonical_calculus(calculus)
    out = []
    for r in catalog():
        if calc not in r.calculi:
            continue
        if not operational_diamI_boxC and r.name in ("diamI_L", "diamI_R", "boxC_L", "boxC_R"):
            continue
        out.append(r)
    return out


@lru_cache(maxsize=None)
def _expanded(calculus, operational_diamI_boxC=True):
    by_name = {}
    for r in rule_set(calculus, operational_diamI_boxC):
        for d in r.directions():
            by_name.setdefault(r.name, []).append(d)
    return by_name


def expanded_rules(calculus, operational_diamI_boxC=True):
    """Name -> list of single-direction rules available in ``calculus``."""
    return _expanded(canonical_calculus(calculus), operational_diamI_boxC)


# ---------------------------------------------------------------- matching

def _match(pat, t, sub):
    if pat.tag == "meta":
        sort, kind = meta_info(pat.name)
        if t.sort != sort:
            return False
        if kind == "formula" and not t.is_formula:
            return False
        if kind == "atom" and t.tag != "atom":
            return False
        bound = sub.get(pat.name)
        if bound is None:
            sub[pat.name] = t
            return True
        return bound == t
    if pat.tag != t.tag or pat.name != t.name or len(pat.args) != len(t.args):
        return False
    return all(_match(p, c, sub) for p, c in zip(pat.args, t.args))


def match_sequent(schema, target, sub=None):
    """Extend ``sub`` so that ``schema`` instantiates to ``target``; None if impossible."""
    sub = dict(sub) if sub else {}
    if schema.left.sort != target.left.sort:
        return None
    if _match(schema.left, target.left, sub) and _match(schema.right, target.right, sub):
        return sub
    return None


def match_schema(schema, target):
    """All substitutions taking ``schema`` to ``target`` (syntactic matching gives at most one)."""
    sub = match_sequent(schema, target)
    return [] if sub is None else [sub]


def substitute(term, sub):
    if isinstance(term, Sequent):
        return Sequent(substitute(term.left, sub), substitute(term.right, sub))
    if term.tag == "meta":
        return sub[term.name]
    if not term.args:
        return term
    return Term(term.tag, [substitute(a, sub) for a in term.args], term.name)


def apply_backward(rule, goal):
    """Premises obtained by reading ``rule`` upward from ``goal``, or None.

    Returns None as well when a premise mentions a metavariable absent from
    the conclusion (cuts), since the premise is then not determined.
    """
    sub = match_sequent(rule.conclusion, goal)
    if sub is None:
        return None
    try:
        return [substitute(p, sub) for p in rule.premises]
    except KeyError:
        return None


def _gen_match(pat, expr, bound, lines):
    if pat.tag == "meta":
        sort, kind = meta_info(pat.name)
        var = bound.get(pat.name)
        if var is not None:
            lines.append(f"if {expr} != {var}: return None")
            return
        var = bound[pat.name] = f"m_{pat.name}"
        lines.append(f"{var} = {expr}")
        if kind == "atom":
            lines.append(f"if {var}.tag != 'atom': return None")
        else:
            lines.append(f"if {var}.sort != {sort!r}: return None")
            if kind == "formula":
                lines.append(f"if not {var}.is_formula: return None")
        return
    lines.append(f"if {expr}.tag != {pat.tag!r}: return None")
    if pat.name is not None:
        lines.append(f"if {expr}.name != {pat.name!r}: return None")
    for i, a in enumerate(pat.args):
        _gen_match(a, f"{expr}.args[{i}]", bound, lines)


def _gen_build(t, bound):
    if t.tag == "meta":
        return bound[t.name]
    if not t.args:
        return f"Term({t.tag!r}, (), {t.name!r})"
    inner = ", ".join(_gen_build(a, bound) for a in t.args)
    return f"Term({t.tag!r}, ({inner},))"


def compile_backward(rule):
    """Specialized ``apply_backward`` for one rule form (None when premises are undetermined)."""
    bound, lines = {}, []
    _gen_match(rule.conclusion.left, "goal.left", bound, lines)
    _gen_match(rule.conclusion.right, "goal.right", bound, lines)
    free = {m for p in rule.premises for m in _meta_names(p)} - set(bound)
    if free:
        return lambda goal: None
    prems = ", ".join(f"Sequent({_gen_build(p.left, bound)}, {_gen_build(p.right, bound)})"
                      for p in rule.premises)
    body = "\n    ".join(lines + [f"return [{prems}]"])
    src = f"def backward(goal):\n    {body}\n"
    env = {"Term": Term, "Sequent": Sequent}
    exec(src, env)  # noqa: S102 - generated from the rule table
    return env["backward"]


def _meta_names(seq):
    from .syntax import metavars
    return metavars(seq)


def infer(name, kids, calculus="D.PRA", extra=None, pick=None):
    """Forward application: the conclusion of rule ``name`` over ``kids``.

    ``kids`` are proof trees.  ``extra`` binds metavariables that occur only
    in the conclusion (the weakened structure of W, say).  When several
    rule forms fit, ``pick`` selects among the distinct conclusions, either
    by index or by a predicate on the candidate sequent.
    """
    from .syntax import ProofTree
    prems = [k.conclusion for k in kids]
    found = []
    for form in expanded_rules(calculus).get(canonical_rule_name(name), []):
        if form.arity != len(prems):
            continue
        sub = {}
        for schema, seq in zip(form.premises, prems):
            sub = match_sequent(schema, seq, sub)
            if sub is None:
                break
        if sub is None:
            continue
        sub.update(extra or {})
        try:
            concl = substitute(form.conclusion, sub)
        except KeyError:
            continue
        if concl not in found:
            found.append(concl)
    if not found:
        raise InvalidProof((), f"{name} does not apply to the given premises")
    if callable(pick):
        found = [c for c in found if pick(c)]
    elif pick is not None:
        found = [found[pick]]
    if len(found) != 1:
        raise InvalidProof((), f"{name}: {len(found)} candidate conclusions")
    return ProofTree(name, found[0], kids)


# ---------------------------------------------------------------- checking

def _uses_tqba5_only(seq):
    return bool(connectives(seq) & TQBA5_ONLY)


def check_node(node, calculus, path=(), operational_diamI_boxC=True):
    """Check one inference; raise InvalidProof naming ``path`` on failure."""
    calc = canonical_calculus(calculus)
    seq = node.conclusion
    try:
        check_sequent(seq)
    except (IllSorted, PolarityError) as exc:
        raise InvalidProof(path, f"malformed conclusion: {exc}") from None
    if calc == "D.TQBA" and _uses_tqba5_only(seq):
        raise InvalidProof(path, "sim/minus connectives are not available in D.TQBA")
    name = canonical_rule_name(node.rule)
    forms = expanded_rules(calc, operational_diamI_boxC).get(name)
    if not forms:
        if name in rule_arities():
            raise InvalidProof(path, f"rule {node.rule} is not part of {calc}")
        raise InvalidProof(path, f"unknown rule {node.rule}")
    if name == "Id_D":
        if node.children:
            raise InvalidProof(path, "Id_D has no premises")
        if not (seq.left.tag == "atom" and seq.left == seq.right):
            raise InvalidProof(path, "Id_D requires identical atoms")
        return
    kids = [c.conclusion for c in node.children]
    reason = None
    for form in forms:
        if form.arity != len(kids):
            reason = reason or f"{node.rule} expects {form.arity} premises, got {len(kids)}"
            continue
        sub = match_sequent(form.conclusion, seq)
        if sub is None:
            reason = reason or f"conclusion is not an instance of {node.rule}"
            continue
        ok = True
        for i, (prem, kid) in enumerate(zip(form.premises, kids)):
            sub = match_sequent(prem, kid, sub)
            if sub is None:
                reason = f"premise {i} does not match {node.rule}"
                ok = False
                break
        if ok:
            return
    raise InvalidProof(path, reason)


def check_proof(tree, calculus, operational_diamI_boxC=True):
    """Return True if every node is a correct rule instance of ``calculus``.

    Raises InvalidProof carrying the path (child indices from the root) of
    the first offending node in preorder.
    """
    for path, node in tree.walk():
        check_node(node, calculus, path, operational_diamI_boxC)
    return True


def is_valid(tree, calculus):
    try:
        return check_proof(tree, calculus)
    except InvalidProof:
        return False


def open_leaves(tree):
    """Paths of nodes whose rule is the placeholder ``?`` (incomplete derivations)."""
    return [p for p, n in tree.walk() if n.rule == "?"]


# ---------------------------------------------------------------- display

_MARKERS = {D: "V9999", KI: "Theta9999", KC: "Psi9999"}


def display_moves(calculus):
    """Single-direction display and exchange rules used to move occurrences."""
    out = []
    for name, forms in expanded_rules(calculus).items():
        if forms[0].kind == "display" or name in EXCHANGE:
            out.extend(forms)
    return out


def display_occurrence(seq, pos, calculus="D.PRA", max_steps=16):
    """Display the structure at ``pos`` as a whole side of the sequent.

    ``pos`` is a sequent path (first index 0 for the antecedent, 1 for the
    succedent).  Returns ``(displayed, steps)`` where each step is
    ``(rule_name, premise)``: reading the steps in order gives a chain of
    display inferences whose bottom conclusion is ``seq`` and whose top
    premise is ``displayed``.  The chain is a shortest one, found by
    breadth-first search over display and exchange rules.
    """
    try:
        side_at(seq, pos)
        target = subterm(seq, pos)
    except (ValueError, IndexError, AttributeError):
        raise NotDisplayable(pos) from None
    if len(pos) == 1:
        return seq, []
    marker = meta(_MARKERS[target.sort])
    start = replace_at(seq, pos, marker)
    moves = display_moves(calculus)
    parent = {start: None}
    queue = deque([(start, 0)])
    found = None
    while queue:
        cur, depth = queue.popleft()
        if cur.left == marker or cur.right == marker:
            found = cur
            break
        if depth >= max_steps:
            continue
        for rule in moves:
            prem = apply_backward(rule, cur)
            if prem is None:
                continue
            nxt = prem[0]
            if nxt not in parent:
                parent[nxt] = (cur, rule.name)
                queue.append((nxt, depth + 1))
    if found is None:
        raise NotDisplayable(pos)
    chain = []
    cur = found
    while parent[cur] is not None:
        prev, name = parent[cur]
        chain.append((name, cur))
        cur = prev
    chain.reverse()
    fill = {marker.name: target}
    steps = [(name, substitute(s, fill)) for name, s in chain]
    return substitute(found, fill), steps


def chain_tree(bottom, steps, top_tree):
    """Proof of ``bottom`` from ``top_tree`` through the given display steps."""
    from .syntax import ProofTree
    tree = top_tree
    seqs = [bottom] + [s for _, s in steps]
    for i in reversed(range(len(steps))):
        tree = ProofTree(steps[i][0], seqs[i], [tree])
    return tree


# ---------------------------------------------------------------- export

def export_rules(calculus=None):
    """Catalog as ``.rules`` text: one ``(schema ...)`` form per stored rule."""
    lines = ["; name kind level direction premises conclusion"]
    calc = canonical_calculus(calculus) if calculus else None
    for r in catalog():
        if calc and calc not in r.calculi:
            continue
        prems = " ".join(render_sequent(p) for p in r.premises)
        direction = "both" if r.bidirectional else "down"
        lines.append(f"(schema {r.name} {r.kind} {r.level} {direction} (premises {prems}) "
                     f"{render_sequent(r.conclusion)})".replace("(premises )", "(premises)"))
    return "\n".join(lines) + "\n"


def load_rules(text):
    """Parse ``.rules`` text back into Rule objects."""
    from .parser import _to_sequent
    out = []
    for node in read_sexprs(text):
        items = node.items
        name, kind, level, direction = (t.text for t in items[1:5])
        prems = [_to_sequent(p, "<rules>", True) for p in items[5].items[1:]]
        concl = _to_sequent(items[6], "<rules>", True)
        out.append(Rule(name, kind, level, prems, concl, direction == "both"))
    return out


__all__ = [
    "CALCULI", "CLASS_OF", "Rule", "catalog", "rule_set", "rule_arities", "match_schema",
    "match_sequent", "substitute", "apply_backward", "check_proof", "check_node",
    "display_occurrence", "chain_tree", "export_rules", "load_rules", "canonical_calculus",
    "expanded_rules",
]
