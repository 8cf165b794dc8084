"""Reader and printer for the ASCII s-expression syntax.

Terms::

    p                      atom (lowercase identifier)
    top  s-top  1I  s-0C   nullary connectives, written bare
    (circI (boxI p))       operational formula
    (s-vee (s-circI X) Z)  structure; capitals are metavariables (schemas only)

Sequents are ``(seq L R)`` and proofs ``(rule NAME (seq L R) SUB...)``.
A ``;`` starts a comment that runs to the end of the line.
"""

import re

from .errors import AritySmash, ParseError, UnknownRule
from .syntax import (
    SIGNATURES, ProofTree, Sequent, Term, atom, is_meta_name, meta, sort_of,
)

_IDENT = re.compile(r"^[a-z][A-Za-z0-9_']*$")
NULLARY = frozenset(t for t, (_, args) in SIGNATURES.items() if not args)
RESERVED = frozenset(SIGNATURES) | {"seq", "rule"}


class Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text, line, col):
        self.text = text
        self.line = line
        self.col = col


class SList:
    __slots__ = ("items", "line", "col")

    def __init__(self, items, line, col):
        self.items = items
        self.line = line
        self.col = col


def _tokenize(text, origin):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
        elif c in " \t\r":
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield Tok(c, line, col)
            i += 1
            col += 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            yield Tok(text[i:j], line, col)
            col += j - i
            i = j


def read_sexprs(text, origin="<string>"):
    """Parse all top-level s-expressions in ``text``."""
    stack = [SList([], 1, 1)]
    last = None
    for tok in _tokenize(text, origin):
        last = tok
        if tok.text == "(":
            stack.append(SList([], tok.line, tok.col))
        elif tok.text == ")":
            if len(stack) == 1:
                raise ParseError(tok.line, tok.col, "unbalanced ')'", origin)
            done = stack.pop()
            stack[-1].items.append(done)
        else:
            stack[-1].items.append(tok)
    if len(stack) > 1:
        open_ = stack[-1]
        raise ParseError(open_.line, open_.col, "unclosed '('", origin)
    if last is None:
        raise ParseError(1, 1, "empty input", origin)
    return stack[0].items


def _read_one(text, origin):
    items = read_sexprs(text, origin)
    if len(items) != 1:
        extra = items[1]
        raise ParseError(extra.line, extra.col, "trailing input", origin)
    return items[0]


def _to_term(node, origin, schema):
    if isinstance(node, Tok):
        t = node.text
        if t in NULLARY:
            return Term(t)
        if t not in RESERVED and _IDENT.match(t):
            return atom(t)
        if is_meta_name(t):
            if not schema:
                raise ParseError(node.line, node.col,
                                 f"metavariable {t} outside a rule schema", origin)
            return meta(t)
        raise ParseError(node.line, node.col, f"unexpected token {t!r}", origin)
    if not node.items:
        raise ParseError(node.line, node.col, "empty list", origin)
    head = node.items[0]
    if not isinstance(head, Tok):
        raise ParseError(head.line, head.col, "expected a connective", origin)
    if head.text not in SIGNATURES or head.text in NULLARY:
        raise ParseError(head.line, head.col, f"unknown connective {head.text!r}", origin)
    want = len(SIGNATURES[head.text][1])
    args = node.items[1:]
    if len(args) != want:
        raise ParseError(head.line, head.col,
                         f"{head.text} takes {want} arguments, got {len(args)}", origin)
    return Term(head.text, [_to_term(a, origin, schema) for a in args])


def _expect_sort(term, expected):
    got = sort_of(term)
    if expected not in (None, "any") and got != expected:
        from .errors import IllSorted
        raise IllSorted((), f"expected sort {expected}, got {got}")
    return term


def parse_term(text, expected=None, schema=False, origin="<string>"):
    """Parse one formula or structure and check its sort."""
    return _expect_sort(_to_term(_read_one(text, origin), origin, schema), expected)


def _to_sequent(node, origin, schema):
    if (not isinstance(node, SList) or len(node.items) != 3
            or not isinstance(node.items[0], Tok) or node.items[0].text != "seq"):
        raise ParseError(node.line, node.col, "expected (seq L R)", origin)
    left = _to_term(node.items[1], origin, schema)
    right = _to_term(node.items[2], origin, schema)
    seq = Sequent(left, right)
    sort_of(seq)
    return seq


def parse_sequent(text, schema=False, origin="<string>"):
    return _to_sequent(_read_one(text, origin), origin, schema)


def _to_proof(node, origin, arities):
    if (not isinstance(node, SList) or len(node.items) < 3
            or not isinstance(node.items[0], Tok) or node.items[0].text != "rule"):
        raise ParseError(node.line, node.col, "expected (rule NAME (seq L R) ...)", origin)
    name_tok = node.items[1]
    if not isinstance(name_tok, Tok):
        raise ParseError(name_tok.line, name_tok.col, "expected a rule name", origin)
    name = name_tok.text
    conclusion = _to_sequent(node.items[2], origin, False)
    subs = node.items[3:]
    if arities is not None:
        if name not in arities:
            raise UnknownRule(name)
        if arities[name] != len(subs):
            raise AritySmash(name, arities[name], len(subs))
    return ProofTree(name, conclusion, [_to_proof(s, origin, arities) for s in subs])


def parse_proof(text, origin="<string>", check_names=True):
    """Parse a proof tree.  Rule names and arities are checked against the catalog."""
    arities = None
    if check_names:
        from .calculus import rule_arities
        arities = rule_arities()
    return _to_proof(_read_one(text, origin), origin, arities)


def parse_any(text, origin="<string>"):
    """Parse a term, a sequent or a proof, whichever the text holds."""
    node = _read_one(text, origin)
    if isinstance(node, SList) and node.items and isinstance(node.items[0], Tok):
        head = node.items[0].text
        if head == "seq":
            return _to_sequent(node, origin, False)
        if head == "rule":
            from .calculus import rule_arities
            return _to_proof(node, origin, rule_arities())
    return _expect_sort(_to_term(node, origin, False), None)


# ---------------------------------------------------------------- printing

def render_term(term):
    if term.tag == "atom" or term.tag == "meta":
        return term.name
    if not term.args:
        return term.tag
    return "(" + term.tag + " " + " ".join(render_term(a) for a in term.args) + ")"


def render_sequent(seq):
    return f"(seq {render_term(seq.left)} {render_term(seq.right)})"


def render_proof(tree, indent=0):
    pad = "  " * indent
    head = f"{pad}(rule {tree.rule} {render_sequent(tree.conclusion)}"
    if not tree.children:
        return head + ")"
    kids = "\n".join(render_proof(c, indent + 1) for c in tree.children)
    return head + "\n" + kids + ")"


def render(value):
    """Canonical text for a term, sequent or proof tree."""
    if isinstance(value, ProofTree):
        return render_proof(value)
    if isinstance(value, Sequent):
        return render_sequent(value)
    return render_term(value)


def normalize_whitespace(text):
    """Collapse a text of s-expressions to single-space canonical spacing."""
    out = []
    for tok in _tokenize(text, "<string>"):
        out.append(tok.text)
    joined = " ".join(out)
    return joined.replace("( ", "(").replace(" )", ")")


def load(path):
    """Read a ``.mt`` or ``.mtp`` file."""
    with open(path, encoding="utf-8") as fh:
        return parse_any(fh.read(), origin=str(path))
