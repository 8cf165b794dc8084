"""Independent enumeration of finite rough algebras, straight from the axioms.

Used as an oracle for ``algebra.enumerate_algebras``: order relations are
generated as subsets of the index order (every finite poset has such a
labeling), then every negation and interior table is tried and the
survivors are deduplicated by minimizing over all relabelings.
"""

import itertools


def _bound(leq, r, a, b, upper):
    if upper:
        cands = [c for c in r if leq[a][c] and leq[b][c]]
    else:
        cands = [c for c in r if leq[c][a] and leq[c][b]]
    best = [c for c in cands if all((leq[c][d] if upper else leq[d][c]) for d in cands)]
    return best[0] if len(best) == 1 else None


def brute_algebras(n):
    """List of (leq, join, meet, neg, interior) tuples, one per isomorphism class."""
    r = range(n)
    pairs = [(i, j) for i in r for j in r if i < j]
    seen, out = set(), []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        leq = [[i == j for j in r] for i in r]
        for (i, j), b in zip(pairs, bits):
            leq[i][j] = b
        if any(leq[i][j] and leq[j][k] and not leq[i][k] for i in r for j in r for k in r):
            continue
        join = [[_bound(leq, r, a, b, True) for b in r] for a in r]
        meet = [[_bound(leq, r, a, b, False) for b in r] for a in r]
        if any(v is None for row in join + meet for v in row):
            continue
        if any(meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]
               for a in r for b in r for c in r):
            continue
        top = next(a for a in r if all(leq[b][a] for b in r))
        for neg in itertools.permutations(r):
            if any(neg[neg[a]] != a for a in r):
                continue
            if any(leq[a][b] and not leq[neg[b]][neg[a]] for a in r for b in r):
                continue
            for interior in itertools.product(r, repeat=n):
                I = interior
                if I[top] != top or any(not leq[I[a]][a] or I[I[a]] != I[a] for a in r):
                    continue
                if any(I[meet[a][b]] != meet[I[a]][I[b]] for a in r for b in r):
                    continue
                key = min(_relabel(leq, neg, I, p, r) for p in itertools.permutations(r))
                if key not in seen:
                    seen.add(key)
                    out.append((leq, join, meet, neg, I))
    return out


def _relabel(leq, neg, I, p, r):
    q = {p[k]: k for k in r}
    order = tuple(sorted((q[a], q[b]) for a in r for b in r if leq[a][b]))
    return order, tuple(q[neg[p[x]]] for x in r), tuple(q[I[p[x]]] for x in r)


def brute_labels(alg):
    """Class labels computed directly from T5..T8."""
    leq, join, meet, neg, I = alg
    r = range(len(leq))
    C = [neg[I[neg[a]]] for a in r]
    top = next(a for a in r if all(leq[b][a] for b in r))
    t5 = all(C[I[a]] == I[a] for a in r)
    t6 = all(join[I[a]][neg[I[a]]] == top for a in r)
    t7 = all(I[join[a][b]] == join[I[a]][I[b]] for a in r for b in r)
    t8 = all(leq[a][b] for a in r for b in r if leq[I[a]][I[b]] and leq[C[a]][C[b]])
    labels = {"tqBa"}
    if t5:
        labels.add("tqBa5")
        for ok, name in ((t6, "IA1"), (t7, "IA2"), (t8, "IA3")):
            if ok:
                labels.add(name)
        if t6 and t7 and t8:
            labels.add("pra")
    return frozenset(labels)
