"""Sorted terms of the three-typed language.

A single immutable ``Term`` class covers operational formulas, structural
terms and rule-schema metavariables.  The constructor tag is the ASCII token
used by the concrete syntax, so ``Term("circI", (alpha,))`` prints as
``(circI ...)`` and structural connectives carry the ``s-`` prefix.

Sorts are ``"D"``, ``"KI"`` and ``"KC"``.
"""

import re
from functools import lru_cache

from .errors import IllSorted, PolarityError

D, KI, KC = "D", "KI", "KC"
SORTS = (D, KI, KC)

PRECEDENT = "precedent"
SUCCEDENT = "succedent"

# tag -> (result sort, child sorts)
FORMULA_SIGS = {
    "top": (D, ()),
    "bot": (D, ()),
    "neg": (D, (D,)),
    "and": (D, (D, D)),
    "or": (D, (D, D)),
    "circI": (D, (KI,)),
    "circC": (D, (KC,)),
    "boxI": (KI, (D,)),
    "diamI": (KI, (D,)),
    "1I": (KI, ()),
    "0I": (KI, ()),
    "cap": (KI, (KI, KI)),
    "cup": (KI, (KI, KI)),
    "simK": (KI, (KI,)),
    "diamC": (KC, (D,)),
    "boxC": (KC, (D,)),
    "1C": (KC, ()),
    "0C": (KC, ()),
    "sqcap": (KC, (KC, KC)),
    "sqcup": (KC, (KC, KC)),
    "minusK": (KC, (KC,)),
}

STRUCT_SIGS = {
    "s-top": (D, ()),
    "s-bot": (D, ()),
    "s-wedge": (D, (D, D)),
    "s-vee": (D, (D, D)),
    "s-neg": (D, (D,)),
    "s-excl": (D, (D, D)),
    "s-arrow": (D, (D, D)),
    "s-circI": (D, (KI,)),
    "s-circC": (D, (KC,)),
    "s-boxI": (KI, (D,)),
    "s-diamI": (KI, (D,)),
    "s-1I": (KI, ()),
    "s-0I": (KI, ()),
    "s-cap": (KI, (KI, KI)),
    "s-cup": (KI, (KI, KI)),
    "s-supL": (KI, (KI, KI)),
    "s-supR": (KI, (KI, KI)),
    "s-sim": (KI, (KI,)),
    "s-diamC": (KC, (D,)),
    "s-boxC": (KC, (D,)),
    "s-1C": (KC, ()),
    "s-0C": (KC, ()),
    "s-sqcap": (KC, (KC, KC)),
    "s-sqcup": (KC, (KC, KC)),
    "s-sqsupL": (KC, (KC, KC)),
    "s-sqsupR": (KC, (KC, KC)),
    "s-minus": (KC, (KC,)),
}

SIGNATURES = {**FORMULA_SIGS, **STRUCT_SIGS}

# structural connectives that may only stand in one position
PRECEDENT_ONLY = frozenset(
    ["s-top", "s-wedge", "s-excl", "s-1I", "s-cap", "s-supL", "s-diamI",
     "s-1C", "s-sqcap", "s-sqsupL", "s-diamC"])
SUCCEDENT_ONLY = frozenset(
    ["s-bot", "s-vee", "s-arrow", "s-0I", "s-cup", "s-supR", "s-boxI",
     "s-0C", "s-sqcup", "s-sqsupR", "s-boxC"])
ANTITONE = frozenset(["s-neg", "s-sim", "s-minus"])
# binary residuals, antitone in their first argument
LEFT_ANTITONE = frozenset(
    ["s-excl", "s-arrow", "s-supL", "s-supR", "s-sqsupL", "s-sqsupR"])

# associative-commutative structural clusters and their units
AC_UNITS = {
    "s-wedge": "s-top",
    "s-vee": "s-bot",
    "s-cap": "s-1I",
    "s-cup": "s-0I",
    "s-sqcap": "s-1C",
    "s-sqcup": "s-0C",
}

TAG_ORDER = ["atom", "meta"] + list(FORMULA_SIGS) + list(STRUCT_SIGS)
TAG_RANK = {t: i for i, t in enumerate(TAG_ORDER)}

# metavariable name prefixes -> (sort, kind)
# kind: "struct" matches any term of the sort, "formula" only formulas,
# "atom" only atoms
META_KINDS = {
    "X": (D, "struct"), "Y": (D, "struct"), "W": (D, "struct"),
    "Z": (D, "struct"), "U": (D, "struct"), "V": (D, "struct"),
    "Gamma": (KI, "struct"), "Delta": (KI, "struct"),
    "Lambda": (KI, "struct"), "Theta": (KI, "struct"),
    "Pi": (KC, "struct"), "Sigma": (KC, "struct"),
    "Omega": (KC, "struct"), "Psi": (KC, "struct"),
    "A": (D, "formula"), "B": (D, "formula"), "E": (D, "formula"),
    "Alpha": (KI, "formula"), "Beta": (KI, "formula"),
    "Xi": (KC, "formula"), "Chi": (KC, "formula"),
    "P": (D, "atom"),
}

_META_RE = re.compile(r"^([A-Z][a-z]*)(\d*)$")


@lru_cache(maxsize=None)
def meta_info(name):
    """Return ``(sort, kind)`` for a metavariable name such as ``Gamma2``."""
    m = _META_RE.match(name)
    if not m or m.group(1) not in META_KINDS:
        raise ValueError(f"not a metavariable name: {name}")
    return META_KINDS[m.group(1)]


def is_meta_name(name):
    m = _META_RE.match(name)
    return bool(m) and m.group(1) in META_KINDS


class Term:
    """Immutable node.  ``name`` is only set for atoms and metavariables."""

    __slots__ = ("tag", "args", "name", "sort", "_hash", "_key")

    def __init__(self, tag, args=(), name=None):
        self.tag = tag
        self.args = tuple(args)
        self.name = name
        if tag == "atom":
            self.sort = D
        elif tag == "meta":
            self.sort = meta_info(name)[0]
        else:
            self.sort = SIGNATURES[tag][0]
        self._hash = hash((tag, name, self.args))
        self._key = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term) or self._hash != other._hash:
            return False
        return self.tag == other.tag and self.name == other.name and self.args == other.args

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .parser import render
        return f"Term({render(self)})"

    @property
    def is_formula(self):
        return self.tag == "atom" or self.tag in FORMULA_SIGS or (
            self.tag == "meta" and meta_info(self.name)[1] != "struct")

    @property
    def is_structural(self):
        return self.tag in STRUCT_SIGS

    def order_key(self):
        """Total order used by normalization: tag rank, then name, then children."""
        if self._key is None:
            self._key = (TAG_RANK[self.tag], self.name or "",
                         tuple(a.order_key() for a in self.args))
        return self._key


def atom(name):
    return Term("atom", (), name)


def meta(name):
    return Term("meta", (), name)


def mk(tag, *args):
    return Term(tag, args)


TOP = mk("top")
BOT = mk("bot")


class Sequent:
    __slots__ = ("left", "right", "_hash")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self._hash = hash((left, right))

    @property
    def sort(self):
        return self.left.sort

    def side(self, i):
        return self.left if i == 0 else self.right

    def __eq__(self, other):
        return (isinstance(other, Sequent) and self._hash == other._hash
                and self.left == other.left and self.right == other.right)

    def __hash__(self):
        return self._hash

    def __iter__(self):
        return iter((self.left, self.right))

    def __repr__(self):
        from .parser import render
        return f"Sequent({render(self)})"


def sort_of(term, _path=()):
    """Return the sort of ``term`` after checking every constructor signature."""
    if isinstance(term, Sequent):
        ls = sort_of(term.left, (0,))
        rs = sort_of(term.right, (1,))
        if ls != rs:
            raise IllSorted((1,), f"sequent sides have sorts {ls} and {rs}")
        return ls
    if term.tag in ("atom", "meta"):
        return term.sort
    result, wanted = SIGNATURES[term.tag]
    if len(term.args) != len(wanted):
        raise IllSorted(_path, f"{term.tag} takes {len(wanted)} arguments")
    operational = term.tag in FORMULA_SIGS
    for i, (child, want) in enumerate(zip(term.args, wanted)):
        got = sort_of(child, _path + (i,))
        if got != want:
            raise IllSorted(_path + (i,), f"{term.tag} expects {want}, got {got}")
        if operational and not child.is_formula:
            raise IllSorted(_path + (i,), f"structure inside formula {term.tag}")
    return result


def child_sides(tag, side):
    """Polarity of each argument of a structural connective at ``side``."""
    flip = SUCCEDENT if side == PRECEDENT else PRECEDENT
    n = len(SIGNATURES[tag][1])
    if tag in ANTITONE:
        return (flip,)
    if tag in LEFT_ANTITONE:
        return (flip, side)
    return (side,) * n


def check_positions(term, side, _path=()):
    """Raise PolarityError if a one-sided connective stands on the wrong side."""
    if not term.is_structural:
        return
    if side == PRECEDENT and term.tag in SUCCEDENT_ONLY:
        raise PolarityError(_path, f"{term.tag} in precedent position")
    if side == SUCCEDENT and term.tag in PRECEDENT_ONLY:
        raise PolarityError(_path, f"{term.tag} in succedent position")
    for i, (child, s) in enumerate(zip(term.args, child_sides(term.tag, side))):
        check_positions(child, s, _path + (i,))


def check_sequent(seq):
    """Sort and position check for a whole sequent."""
    sort_of(seq)
    check_positions(seq.left, PRECEDENT, (0,))
    check_positions(seq.right, SUCCEDENT, (1,))


def well_formed(seq):
    try:
        check_sequent(seq)
    except (IllSorted, PolarityError):
        return False
    return True


# ---------------------------------------------------------------- positions

def subterm(root, path):
    """Follow ``path`` from a term or sequent (sequent paths start with 0/1)."""
    node = root
    for i in path:
        node = node.side(i) if isinstance(node, Sequent) else node.args[i]
    return node


def replace_at(root, path, new):
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(root, Sequent):
        if i == 0:
            return Sequent(replace_at(root.left, rest, new), root.right)
        return Sequent(root.left, replace_at(root.right, rest, new))
    args = list(root.args)
    args[i] = replace_at(args[i], rest, new)
    return Term(root.tag, args, root.name)


def side_at(seq, path):
    """Polarity of the occurrence at ``path`` (structural part only)."""
    side = PRECEDENT if path[0] == 0 else SUCCEDENT
    node = seq.side(path[0])
    for i in path[1:]:
        if not node.is_structural:
            raise ValueError("path enters an operational formula")
        side = child_sides(node.tag, side)[i]
        node = node.args[i]
    return side


def structural_positions(seq):
    """All structural-level occurrences as (path, term, side), preorder."""
    out = []

    def walk(node, path, side):
        out.append((path, node, side))
        if node.is_structural:
            for i, (child, s) in enumerate(zip(node.args, child_sides(node.tag, side))):
                walk(child, path + (i,), s)

    walk(seq.left, (0,), PRECEDENT)
    walk(seq.right, (1,), SUCCEDENT)
    return out


# ---------------------------------------------------------------- utilities

def size(term):
    """Constructor count."""
    return 1 + sum(size(a) for a in term.args)


def atoms(term, acc=None):
    acc = set() if acc is None else acc
    if isinstance(term, Sequent):
        atoms(term.left, acc)
        return atoms(term.right, acc)
    if term.tag == "atom":
        acc.add(term.name)
    for a in term.args:
        atoms(a, acc)
    return acc


def metavars(term, acc=None):
    acc = set() if acc is None else acc
    if isinstance(term, Sequent):
        metavars(term.left, acc)
        return metavars(term.right, acc)
    if term.tag == "meta":
        acc.add(term.name)
    for a in term.args:
        metavars(a, acc)
    return acc


def formula_leaves(term):
    """Operational formulas occurring as leaves of a structure."""
    if isinstance(term, Sequent):
        return formula_leaves(term.left) + formula_leaves(term.right)
    if term.is_structural:
        return [f for a in term.args for f in formula_leaves(a)]
    return [term]


def subformulas(f, acc=None):
    acc = set() if acc is None else acc
    acc.add(f)
    for a in f.args:
        subformulas(a, acc)
    return acc


def connectives(term, acc=None):
    acc = set() if acc is None else acc
    if isinstance(term, Sequent):
        connectives(term.left, acc)
        return connectives(term.right, acc)
    acc.add(term.tag)
    for a in term.args:
        connectives(a, acc)
    return acc


# ---------------------------------------------------------------- normalize

def _flatten(tag, term, out):
    if term.tag == tag:
        for a in term.args:
            _flatten(tag, a, out)
    else:
        out.append(term)


def normalize(term):
    """AC-flatten, sort, deduplicate and drop units in structural clusters.

    Clusters are rebuilt right-nested.  Operational formulas are left alone.
    """
    if isinstance(term, Sequent):
        return Sequent(normalize(term.left), normalize(term.right))
    if not term.is_structural or not term.args:
        return term
    if term.tag in AC_UNITS:
        unit = AC_UNITS[term.tag]
        parts = []
        _flatten(term.tag, term, parts)
        seen = {}
        for p in parts:
            p = normalize(p)
            if p.tag == term.tag:
                flat = []
                _flatten(term.tag, p, flat)
            else:
                flat = [p]
            for q in flat:
                if q.tag != unit:
                    seen.setdefault(q, None)
        items = sorted(seen, key=Term.order_key)
        if not items:
            return mk(unit)
        result = items[-1]
        for q in reversed(items[:-1]):
            result = Term(term.tag, (q, result))
        return result
    return Term(term.tag, [normalize(a) for a in term.args])


# ---------------------------------------------------------------- interpret

_FORMULA_OPS = {
    "top": "D.top", "bot": "D.bot", "neg": "D.neg", "and": "D.meet",
    "or": "D.join", "circI": "eI", "circC": "eC",
    "boxI": "iota", "diamI": "iotaL", "1I": "KI.top", "0I": "KI.bot",
    "cap": "KI.meet", "cup": "KI.join", "simK": "KI.neg",
    "diamC": "gamma", "boxC": "gammaR", "1C": "KC.top", "0C": "KC.bot",
    "sqcap": "KC.meet", "sqcup": "KC.join", "minusK": "KC.neg",
}

_STRUCT_OPS = {
    "s-top": "D.top", "s-bot": "D.bot", "s-wedge": "D.meet", "s-vee": "D.join",
    "s-neg": "D.neg", "s-excl": "D.coimp", "s-arrow": "D.imp",
    "s-circI": "eI", "s-circC": "eC",
    "s-boxI": "iota", "s-diamI": "iotaL", "s-1I": "KI.top", "s-0I": "KI.bot",
    "s-cap": "KI.meet", "s-cup": "KI.join", "s-supL": "KI.coimp",
    "s-supR": "KI.imp", "s-sim": "KI.neg",
    "s-diamC": "gamma", "s-boxC": "gammaR", "s-1C": "KC.top", "s-0C": "KC.bot",
    "s-sqcap": "KC.meet", "s-sqcup": "KC.join", "s-sqsupL": "KC.coimp",
    "s-sqsupR": "KC.imp", "s-minus": "KC.neg",
}


def interpret(term, side=PRECEDENT, _path=()):
    """Algebraic term (nested tuples) read off a structure at ``side``.

    Operations are named ``"<sort>.<op>"`` for the lattice signature of each
    sort, ``eI``/``eC`` for the embeddings, ``iota``/``gamma`` for their
    adjoints, ``iotaL`` for the left adjoint of ``eI`` and ``gammaR`` for the
    right adjoint of ``eC``.  ``X.imp(a, b)`` is the greatest ``y`` with
    ``a /\\ y <= b``; ``X.coimp(a, b)`` the least ``z`` with ``b <= a \\/ z``.
    Atoms and metavariables become ``("var", name, sort)``.
    """
    if term.tag in ("atom", "meta"):
        return ("var", term.name, term.sort)
    if term.tag in FORMULA_SIGS:
        return (_FORMULA_OPS[term.tag],) + tuple(interpret(a) for a in term.args)
    if side == PRECEDENT and term.tag in SUCCEDENT_ONLY:
        raise PolarityError(_path, f"{term.tag} in precedent position")
    if side == SUCCEDENT and term.tag in PRECEDENT_ONLY:
        raise PolarityError(_path, f"{term.tag} in succedent position")
    sides = child_sides(term.tag, side)
    return (_STRUCT_OPS[term.tag],) + tuple(
        interpret(a, s, _path + (i,)) for i, (a, s) in enumerate(zip(term.args, sides)))


def interpret_sequent(seq):
    """Pair ``(lhs, rhs)`` of algebraic terms; the sequent reads ``lhs <= rhs``."""
    return interpret(seq.left, PRECEDENT, (0,)), interpret(seq.right, SUCCEDENT, (1,))



class ProofTree:
    """Node of a derivation: rule name, conclusion and premise subtrees."""

    __slots__ = ("rule", "conclusion", "children", "_hash")

    def __init__(self, rule, conclusion, children=()):
        self.rule = rule
        self.conclusion = conclusion
        self.children = tuple(children)
        self._hash = hash((rule, conclusion, self.children))

    def __eq__(self, other):
        return (isinstance(other, ProofTree) and self._hash == other._hash
                and self.rule == other.rule and self.conclusion == other.conclusion
                and self.children == other.children)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ProofTree({self.rule}, {self.conclusion!r}, {len(self.children)} children)"

    def walk(self, path=()):
        """Yield ``(path, node)`` in preorder; child ``i`` extends the path by ``i``."""
        stack = [(path, self)]
        while stack:
            p, node = stack.pop()
            yield p, node
            for i in reversed(range(len(node.children))):
                stack.append((p + (i,), node.children[i]))

    def at(self, path):
        node = self
        for i in path:
            node = node.children[i]
        return node

    def replace(self, path, new):
        if not path:
            return new
        kids = list(self.children)
        kids[path[0]] = kids[path[0]].replace(path[1:], new)
        return ProofTree(self.rule, self.conclusion, kids)

    def size(self):
        return sum(1 for _ in self.walk())

    def height(self):
        if not self.children:
            return 1
        return 1 + max(c.height() for c in self.children)

    def rules_used(self):
        return {n.rule for _, n in self.walk()}
