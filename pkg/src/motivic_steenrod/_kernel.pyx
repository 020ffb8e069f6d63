# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled product kernel; same contract as ``_kernel_py.mul_terms``.

Keys are split into two uint64 halves.  Exponent fields never carry (see
``_packing``), so both halves add independently.  Products are collected in a
flat buffer, sorted, and pairs of equal monomials cancel (characteristic 2).
"""

from libc.stdlib cimport malloc, free, qsort
from libc.stdint cimport uint64_t, int64_t

from . import _packing as pk
from ._kernel_py import tau_product

ctypedef struct key_t:
    uint64_t hi
    uint64_t lo

cdef uint64_t LO_MASK = 0xFFFFFFFFFFFFFFFF
cdef int EMASK_SHIFT = 16
cdef uint64_t EMASK_LO = (<uint64_t>0xFF) << 16


cdef int _cmp(const void* a, const void* b) noexcept nogil:
    cdef const key_t* x = <const key_t*>a
    cdef const key_t* y = <const key_t*>b
    if x.hi < y.hi:
        return -1
    if x.hi > y.hi:
        return 1
    if x.lo < y.lo:
        return -1
    if x.lo > y.lo:
        return 1
    return 0


cdef inline void _split(object k, key_t* out):
    out.lo = <uint64_t>(k & LO_MASK)
    out.hi = <uint64_t>(k >> 64)


def mul_terms(xs, ys):
    """F_2 product of two collections of packed keys, fully reduced."""
    if not xs or not ys:
        return frozenset()
    cdef list lx = list(xs)
    cdef list ly = list(ys)
    cdef Py_ssize_t n = len(lx), m = len(ly)
    cdef Py_ssize_t i, j, k, total, pos, nexp, nx, ny
    cdef key_t* X = <key_t*>malloc(n * sizeof(key_t))
    cdef key_t* Y = <key_t*>malloc(m * sizeof(key_t))
    cdef int* mxi = <int*>malloc(n * sizeof(int))
    cdef int* myi = <int*>malloc(m * sizeof(int))
    cdef key_t* out = NULL
    cdef key_t* exp_buf = NULL
    cdef int64_t* exp_off = NULL
    cdef int64_t* exp_len = NULL
    cdef uint64_t guard_lo = <uint64_t>(pk.GUARD & LO_MASK)
    cdef uint64_t guard_hi = <uint64_t>(pk.GUARD >> 64)
    cdef uint64_t bad = 0
    cdef uint64_t mx, my
    cdef key_t a, b
    cdef int64_t slot
    try:
        xmasks = {}
        ymasks = {}
        for i in range(n):
            _split(lx[i], &X[i])
            mx = (X[i].lo >> EMASK_SHIFT) & 0xFF
            mxi[i] = xmasks.setdefault(mx, len(xmasks))
        for j in range(m):
            _split(ly[j], &Y[j])
            my = (Y[j].lo >> EMASK_SHIFT) & 0xFF
            myi[j] = ymasks.setdefault(my, len(ymasks))
        nx = len(xmasks)
        ny = len(ymasks)
        exp_off = <int64_t*>malloc(nx * ny * sizeof(int64_t))
        exp_len = <int64_t*>malloc(nx * ny * sizeof(int64_t))
        expansions = []
        nexp = 0
        for mxv, ix in xmasks.items():
            for myv, iy in ymasks.items():
                slot = ix * ny + iy
                if mxv & myv:
                    terms = tau_product(mxv, myv)
                    exp_off[slot] = nexp
                    exp_len[slot] = len(terms)
                    expansions.extend(terms)
                    nexp += len(terms)
                else:
                    exp_off[slot] = -1
                    exp_len[slot] = 1
        exp_buf = <key_t*>malloc((nexp + 1) * sizeof(key_t))
        for k in range(nexp):
            _split(expansions[k], &exp_buf[k])
        total = 0
        for i in range(n):
            for j in range(m):
                total += exp_len[mxi[i] * ny + myi[j]]
        out = <key_t*>malloc((total + 1) * sizeof(key_t))
        pos = 0
        with nogil:
            for i in range(n):
                for j in range(m):
                    slot = mxi[i] * ny + myi[j]
                    if exp_off[slot] < 0:
                        out[pos].lo = X[i].lo + Y[j].lo
                        out[pos].hi = X[i].hi + Y[j].hi
                        bad |= (out[pos].lo & guard_lo) | (out[pos].hi & guard_hi)
                        pos += 1
                    else:
                        a.lo = (X[i].lo & ~EMASK_LO) + (Y[j].lo & ~EMASK_LO)
                        a.hi = X[i].hi + Y[j].hi
                        bad |= (a.lo & guard_lo) | (a.hi & guard_hi)
                        for k in range(exp_len[slot]):
                            b = exp_buf[exp_off[slot] + k]
                            out[pos].lo = a.lo + b.lo
                            out[pos].hi = a.hi + b.hi
                            bad |= (out[pos].lo & guard_lo) | (out[pos].hi & guard_hi)
                            pos += 1
            qsort(out, pos, sizeof(key_t), _cmp)
        if bad:
            raise pk.PackingOverflow("monomial exponent exceeds the packed field range")
        result = []
        i = 0
        while i < pos:
            j = i + 1
            while j < pos and out[j].hi == out[i].hi and out[j].lo == out[i].lo:
                j += 1
            if (j - i) & 1:
                result.append((<object>out[i].hi << 64) | <object>out[i].lo)
            i = j
        return frozenset(result)
    finally:
        free(X)
        free(Y)
        free(mxi)
        free(myi)
        free(out)
        free(exp_buf)
        free(exp_off)
        free(exp_len)
