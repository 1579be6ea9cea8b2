# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels; drop-in replacement for ``_pykernels``."""

from . import _pykernels

ctypedef unsigned long long u64

cdef enum:
    MAXN = 64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _load(object seq, u64* out) except -1:
    cdef Py_ssize_t n = len(seq)
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = <u64>seq[i]
    return 0


cdef inline u64 _closure(u64* rel, u64 mask) nogil:
    cdef u64 result = mask
    cdef u64 frontier = mask
    cdef u64 new, m
    cdef int i
    while frontier:
        new = 0
        m = frontier
        while m:
            i = __builtin_ctzll(m)
            new |= rel[i]
            m &= m - 1
        frontier = new & ~result
        result |= new
    return result


cdef u64 _reach(u64* par, u64* ch, u64 src, u64 cond) nogil:
    cdef u64 anc = _closure(par, cond)
    cdef u64 up = src & ~cond
    cdef u64 down = 0
    cdef u64 f_up = up
    cdef u64 f_down = 0
    cdef u64 nu, nd, m
    cdef int i
    while f_up or f_down:
        nu = 0
        nd = 0
        m = f_up & ~cond
        while m:
            i = __builtin_ctzll(m)
            nu |= par[i]
            nd |= ch[i]
            m &= m - 1
        m = f_down & ~cond
        while m:
            i = __builtin_ctzll(m)
            nd |= ch[i]
            m &= m - 1
        m = f_down & anc
        while m:
            i = __builtin_ctzll(m)
            nu |= par[i]
            m &= m - 1
        f_up = nu & ~up
        f_down = nd & ~down
        up |= nu
        down |= nd
    return (up | down) & ~cond


def ancestors(parents, mask):
    cdef u64 par[MAXN]
    if len(parents) > MAXN:
        return _pykernels.ancestors(parents, mask)
    _load(parents, par)
    return _closure(par, mask)


def descendants(children, mask):
    return ancestors(children, mask)


def reach(parents, children, src, cond):
    cdef u64 par[MAXN]
    cdef u64 ch[MAXN]
    if len(parents) > MAXN:
        return _pykernels.reach(parents, children, src, cond)
    _load(parents, par)
    _load(children, ch)
    return _reach(par, ch, src, cond)


def separated_mask(parents, children, triplets):
    cdef u64 par[MAXN]
    cdef u64 ch[MAXN]
    cdef u64 a, b, c
    cdef Py_ssize_t j
    if len(parents) > MAXN:
        return _pykernels.separated_mask(parents, children, triplets)
    _load(parents, par)
    _load(children, ch)
    result = 0
    for j in range(len(triplets)):
        a, b, c = triplets[j]
        if not (_reach(par, ch, a, c) & b):
            result |= (<object>1) << j
    return result


def is_acyclic(parents):
    cdef u64 par[MAXN]
    cdef Py_ssize_t n = len(parents)
    cdef u64 remaining, roots, m
    cdef int i
    if n > MAXN:
        return _pykernels.is_acyclic(parents)
    _load(parents, par)
    remaining = (<u64>1 << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    while remaining:
        roots = 0
        m = remaining
        while m:
            i = __builtin_ctzll(m)
            if not (par[i] & remaining):
                roots |= (<u64>1) << i
            m &= m - 1
        if not roots:
            return False
        remaining &= ~roots
    return True
