"""Pure-Python quantifier sweep, used when the compiled core is unavailable.

A program is a flat list of 6-int instructions ``(op, dst, a, b, off, ncol)``:

* op 0: ``r[dst] = off`` (constant)
* op 1: ``r[dst] = tab[off + r[a]]``
* op 2: ``r[dst] = tab[off + r[a] * ncol + r[b]]``

Registers ``0..len(sizes)-1`` hold the variables.  ``checks`` is a flat list
of 5-int records ``(is_premise, lhs, rhs, off, ncol)`` testing
``tab[off + r[lhs] * ncol + r[rhs]] == 1``.  The sweep enumerates assignments
in mixed radix (last variable fastest) and returns the index of the first one
where every premise holds and some conclusion fails, or -1.
"""


def sweep(instrs, nregs, sizes, checks, tab):
    nv = len(sizes)
    code = [tuple(instrs[i:i + 6]) for i in range(0, len(instrs), 6)]
    prem = []
    concl = []
    for i in range(0, len(checks), 5):
        rec = tuple(checks[i + 1:i + 5])
        (prem if checks[i] else concl).append(rec)
    total = 1
    for s in sizes:
        total *= s
    if total == 0:
        return -1
    r = [0] * max(nregs, 1)
    digits = [0] * nv
    for idx in range(total):
        for k in range(nv):
            r[k] = digits[k]
        for op, dst, a, b, off, ncol in code:
            if op == 1:
                r[dst] = tab[off + r[a]]
            elif op == 2:
                r[dst] = tab[off + r[a] * ncol + r[b]]
            else:
                r[dst] = off
        ok = True
        for lhs, rhs, off, ncol in prem:
            if not tab[off + r[lhs] * ncol + r[rhs]]:
                ok = False
                break
        if ok:
            for lhs, rhs, off, ncol in concl:
                if not tab[off + r[lhs] * ncol + r[rhs]]:
                    return idx
        k = nv - 1
        while k >= 0:
            digits[k] += 1
            if digits[k] < sizes[k]:
                break
            digits[k] = 0
            k -= 1
    return -1
