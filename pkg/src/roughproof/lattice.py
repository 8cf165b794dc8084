"""Finite bounded lattices given by their order relation."""

from itertools import permutations


class Lattice:
    """Finite lattice on elements ``0..n-1``.

    ``leq[a][b]`` is True iff a <= b.  Meets, joins, bounds and both relative
    pseudo-complements are tabulated on construction.  ``neg`` is an optional
    unary operation (a De Morgan negation) carried along for evaluation.
    """

    def __init__(self, leq, names=None, neg=None):
        self.n = n = len(leq)
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq)
        self.names = tuple(names) if names else tuple(str(i) for i in range(n))
        self.neg = tuple(neg) if neg is not None else None
        self.meet = tuple(tuple(self._glb((a, b)) for b in range(n)) for a in range(n))
        self.join = tuple(tuple(self._lub((a, b)) for b in range(n)) for a in range(n))
        self.bot = self._glb(tuple(range(n)))
        self.top = self._lub(tuple(range(n)))
        self._imp = None
        self._coimp = None

    def _glb(self, elems):
        lower = [x for x in range(self.n) if all(self.leq[x][e] for e in elems)]
        best = [x for x in lower if all(self.leq[y][x] for y in lower)]
        if len(best) != 1:
            raise ValueError(f"no greatest lower bound for {elems}")
        return best[0]

    def _lub(self, elems):
        upper = [x for x in range(self.n) if all(self.leq[e][x] for e in elems)]
        best = [x for x in upper if all(self.leq[x][y] for y in upper)]
        if len(best) != 1:
            raise ValueError(f"no least upper bound for {elems}")
        return best[0]

    @property
    def imp(self):
        """``imp[a][b]``: greatest y with a /\\ y <= b."""
        if self._imp is None:
            self._imp = tuple(
                tuple(self._lub(tuple(y for y in range(self.n)
                                      if self.leq[self.meet[a][y]][b]))
                      for b in range(self.n))
                for a in range(self.n))
        return self._imp

    @property
    def coimp(self):
        """``coimp[a][b]``: least z with b <= a \\/ z."""
        if self._coimp is None:
            self._coimp = tuple(
                tuple(self._glb(tuple(z for z in range(self.n)
                                      if self.leq[b][self.join[a][z]]))
                      for b in range(self.n))
                for a in range(self.n))
        return self._coimp

    def is_distributive(self):
        r = range(self.n)
        m, j = self.meet, self.join
        return all(m[a][j[b][c]] == j[m[a][b]][m[a][c]] for a in r for b in r for c in r)

    def is_de_morgan(self):
        """``neg`` is an order-reversing involution."""
        if self.neg is None:
            return False
        r = range(self.n)
        return (all(self.neg[self.neg[a]] == a for a in r)
                and all(self.leq[self.neg[b]][self.neg[a]]
                        for a in r for b in r if self.leq[a][b]))

    def is_boolean(self):
        """``neg`` is a complement."""
        if self.neg is None:
            return False
        return all(self.meet[a][self.neg[a]] == self.bot and self.join[a][self.neg[a]] == self.top
                   for a in range(self.n))

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.leq == other.leq
                and self.neg == other.neg)

    def __hash__(self):
        return hash((self.leq, self.neg))

    def __repr__(self):
        return f"Lattice(n={self.n}, names={' '.join(self.names)})"


def relabel_leq(leq, perm):
    """Order relation after sending element ``i`` to ``perm[i]``."""
    n = len(leq)
    out = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = leq[i][j]
    return tuple(tuple(r) for r in out)


def order_preserving_bijections(src, dst):
    """Bijections f with a <= b iff f(a) <= f(b), in lexicographic order."""
    if src.n != dst.n:
        return
    n = src.n
    for perm in permutations(range(n)):
        if all(src.leq[a][b] == dst.leq[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            yield perm


def lattice_isomorphism(src, dst):
    """First bijection preserving order (and ``neg`` when both carry one)."""
    for perm in order_preserving_bijections(src, dst):
        if src.neg is not None and dst.neg is not None:
            if any(perm[src.neg[a]] != dst.neg[perm[a]] for a in range(src.n)):
                continue
        elif (src.neg is None) != (dst.neg is None):
            return None
        return perm
    return None
