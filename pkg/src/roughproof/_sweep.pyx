# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled quantifier sweep; same contract as ``_sweep_py.sweep``."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


def sweep(instrs, int nregs, sizes, checks, tab):
    cdef int[:] code = _as_ints(instrs)
    cdef int[:] sz = _as_ints(sizes)
    cdef int[:] chk = _as_ints(checks)
    cdef int[:] t = _as_ints(tab)
    cdef int nv = sz.shape[0]
    cdef int ncode = code.shape[0] // 6
    cdef int nchk = chk.shape[0] // 5
    cdef long long total = 1
    cdef long long idx
    cdef int i, k, op, ok
    cdef int *r
    cdef int *digits
    for k in range(nv):
        total *= sz[k]
    if total == 0:
        return -1
    r = <int *> PyMem_Malloc(sizeof(int) * (nregs + 1))
    digits = <int *> PyMem_Malloc(sizeof(int) * (nv + 1))
    try:
        for k in range(nv):
            digits[k] = 0
        for idx in range(total):
            for k in range(nv):
                r[k] = digits[k]
            for i in range(ncode):
                op = code[6 * i]
                if op == 1:
                    r[code[6 * i + 1]] = t[code[6 * i + 4] + r[code[6 * i + 2]]]
                elif op == 2:
                    r[code[6 * i + 1]] = t[code[6 * i + 4]
                                           + r[code[6 * i + 2]] * code[6 * i + 5]
                                           + r[code[6 * i + 3]]]
                else:
                    r[code[6 * i + 1]] = code[6 * i + 4]
            ok = 1
            for i in range(nchk):
                if chk[5 * i] and not t[chk[5 * i + 3] + r[chk[5 * i + 1]] * chk[5 * i + 4]
                                        + r[chk[5 * i + 2]]]:
                    ok = 0
                    break
            if ok:
                for i in range(nchk):
                    if not chk[5 * i] and not t[chk[5 * i + 3]
                                                + r[chk[5 * i + 1]] * chk[5 * i + 4]
                                                + r[chk[5 * i + 2]]]:
                        return idx
            k = nv - 1
            while k >= 0:
                digits[k] += 1
                if digits[k] < sz[k]:
                    break
                digits[k] = 0
                k -= 1
        return -1
    finally:
        PyMem_Free(r)
        PyMem_Free(digits)


cdef int[:] _as_ints(seq):
    from array import array
    if isinstance(seq, array) and seq.typecode == "i":
        return seq
    return array("i", seq)
