"""Exhaustive identity checks on finite rough algebras.

Each check returns a dict mapping a property name to the first witness that
violates it; an empty dict means the property holds everywhere.  Checks
whose statement is only claimed for a subclass are skipped outside it.
"""

from itertools import product

from .algebra import (
    is_isomorphic,
    kernel_operations,
    kernels,
    to_heterogeneous,
    to_single,
)


def interior_fixpoint_failures(T):
    """I(Ia or Ib) = Ia or Ib and its dual C(Ca and Cb) = Ca and Cb."""
    L, I, C = T.lattice, T.interior, T.closure
    out = {}
    for a, b in product(range(L.n), repeat=2):
        j = L.join[I[a]][I[b]]
        if I[j] != j:
            out.setdefault("interior-join-fixpoint", (a, b))
        m = L.meet[C[a]][C[b]]
        if C[m] != m:
            out.setdefault("closure-meet-fixpoint", (a, b))
    return out


def kernel_map_failures(T):
    """Homomorphism laws of iota, gamma, eI and eC with the induced kernel operations."""
    L = T.lattice
    k = kernels(T)
    ops = kernel_operations(T)
    out = {}
    rd = range(L.n)
    ri, rc = range(k.KI.n), range(k.KC.n)
    iota, gamma, eI, eC = k.iota, k.gamma, k.eI, k.eC
    if set(iota) != set(ri):
        out["iota-surjective"] = sorted(set(ri) - set(iota))
    if set(gamma) != set(rc):
        out["gamma-surjective"] = sorted(set(rc) - set(gamma))
    if len(set(eI)) != len(eI):
        out["eI-injective"] = eI
    if len(set(eC)) != len(eC):
        out["eC-injective"] = eC
    for a, b in product(rd, repeat=2):
        if ops["cap"][iota[a]][iota[b]] != iota[L.meet[a][b]]:
            out.setdefault("iota-meet", (a, b))
        if ops["sqcup"][gamma[a]][gamma[b]] != gamma[L.join[a][b]]:
            out.setdefault("gamma-join", (a, b))
    if iota[L.top] != ops["1I"] or iota[L.bot] != ops["0I"]:
        out["iota-bounds"] = (iota[L.top], iota[L.bot])
    if gamma[L.top] != ops["1C"] or gamma[L.bot] != ops["0C"]:
        out["gamma-bounds"] = (gamma[L.top], gamma[L.bot])
    for x, y in product(ri, repeat=2):
        if L.meet[eI[x]][eI[y]] != eI[ops["cap"][x][y]]:
            out.setdefault("eI-meet", (x, y))
        if L.join[eI[x]][eI[y]] != eI[ops["cup"][x][y]]:
            out.setdefault("eI-join", (x, y))
    for x, y in product(rc, repeat=2):
        if L.meet[eC[x]][eC[y]] != eC[ops["sqcap"][x][y]]:
            out.setdefault("eC-meet", (x, y))
        if L.join[eC[x]][eC[y]] != eC[ops["sqcup"][x][y]]:
            out.setdefault("eC-join", (x, y))
    if (eI[ops["1I"]], eI[ops["0I"]], eC[ops["1C"]], eC[ops["0C"]]) != (
            L.top, L.bot, L.top, L.bot):
        out["embedding-bounds"] = True
    # the kernel lattices must carry exactly the induced operations
    for name, lat, n in (("cup", k.KI.join, k.KI.n), ("cap", k.KI.meet, k.KI.n),
                         ("sqcup", k.KC.join, k.KC.n), ("sqcap", k.KC.meet, k.KC.n)):
        for x, y in product(range(n), repeat=2):
            if lat[x][y] != ops[name][x][y]:
                out.setdefault(f"{name}-table", (x, y))
    return out


def kernel_iso_failures(T):
    """For tqBa5: gamma . eI is an isomorphism of kernels that respects the negations."""
    if "tqBa5" not in T.classify():
        return {}
    k = kernels(T)
    f = tuple(k.gamma[k.eI[x]] for x in range(k.KI.n))
    out = {}
    if sorted(f) != list(range(k.KC.n)):
        out["iso-bijective"] = f
        return out
    for x, y in product(range(k.KI.n), repeat=2):
        if k.KI.leq[x][y] != k.KC.leq[f[x]][f[y]]:
            out.setdefault("iso-order", (x, y))
    for x in range(k.KI.n):
        if f[k.KI.neg[x]] != k.KC.neg[f[x]]:
            out.setdefault("iso-negation", x)
    if is_isomorphic(k.KI, k.KC) is None:
        out["iso-search"] = "no witness found"
    return out


def kernel_negation_failures(T):
    """For tqBa5 the kernel is De Morgan and e(~a) = neg e(a); for IA1 it is Boolean."""
    labels = T.classify()
    if "tqBa5" not in labels:
        return {}
    L = T.lattice
    k = kernels(T)
    out = {}
    if not k.KI.is_de_morgan() or not k.KC.is_de_morgan():
        out["kernel-de-morgan"] = True
    for x in range(k.KI.n):
        if k.eI[k.KI.neg[x]] != L.neg[k.eI[x]]:
            out.setdefault("embedding-negation", x)
    if "IA1" in labels and not (k.KI.is_boolean() and k.KC.is_boolean()):
        out["kernel-boolean"] = True
    return out


def iota_join_failures(T):
    """Whether iota preserves joins.

    Reported only: the law is equivalent to T7 and fails in some IA1 algebras.
    """
    L = T.lattice
    k = kernels(T)
    for a, b in product(range(L.n), repeat=2):
        if k.iota[L.join[a][b]] != k.KI.join[k.iota[a]][k.iota[b]]:
            return {"iota-join": (a, b)}
    return {}


def round_trip_failures(T):
    """T ~ (T+)+ and H ~ (H+)+ for H = T+, with matching class labels."""
    out = {}
    H = to_heterogeneous(T)
    back = to_single(H)
    if is_isomorphic(T, back) is None:
        out["single-round-trip"] = True
    if is_isomorphic(H, to_heterogeneous(back)) is None:
        out["heterogeneous-round-trip"] = True
    if H.classify() != {"h" + c for c in T.classify()}:
        out["class-labels"] = (sorted(T.classify()), sorted(H.classify()))
    return out


CHECKS = {
    "interior fixpoints": interior_fixpoint_failures,
    "kernel maps": kernel_map_failures,
    "kernel isomorphism": kernel_iso_failures,
    "kernel negation": kernel_negation_failures,
    "round trips": round_trip_failures,
}


def all_failures(T):
    out = {}
    for name, check in CHECKS.items():
        for prop, witness in check(T).items():
            out[f"{name}: {prop}"] = witness
    return out

