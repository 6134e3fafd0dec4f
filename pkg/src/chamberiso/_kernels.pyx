# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for exhaustive subset scans (graphs with at most 63 vertices).

Same contracts, visiting order and tie-breaking as ``_kernels_py``.
"""

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

DEF MAXV = 63
INF = 1 << 62


cdef int _load(object nbr, object deg, uint64_t* cn, int64_t* cd) except -1:
    cdef int nv = len(nbr)
    if nv > MAXV:
        raise ValueError("compiled kernels support at most 63 vertices")
    for v in range(nv):
        cn[v] = <uint64_t>nbr[v]
        cd[v] = <int64_t>deg[v]
    return nv


def gray_min_boundary(nbr, deg, bint fix_last=True):
    cdef uint64_t cn[MAXV]
    cdef int64_t cd[MAXV]
    cdef int nv = _load(nbr, deg, cn, cd)
    cdef int64_t minb[MAXV + 1]
    cdef uint64_t wit[MAXV + 1]
    cdef int free = nv - 1 if (fix_last and nv > 0) else nv
    cdef uint64_t full = (<uint64_t>1 << nv) - 1 if nv < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef uint64_t S = 0, m, i, limit = <uint64_t>1 << free
    cdef int64_t b = 0, x
    cdef int size = 0, v, cs, j
    cdef int64_t big = INF
    for j in range(nv + 1):
        minb[j] = big
        wit[j] = 0
    minb[0] = 0
    if fix_last:
        minb[nv] = 0
        wit[nv] = full
    with nogil:
        i = 1
        while i < limit:
            v = __builtin_ctzll(i)
            m = <uint64_t>1 << v
            x = __builtin_popcountll(cn[v] & S)
            if S & m:
                S ^= m
                size -= 1
                b -= cd[v] - 2 * x
            else:
                S |= m
                size += 1
                b += cd[v] - 2 * x
            if b < minb[size]:
                minb[size] = b
                wit[size] = S
            if fix_last:
                cs = nv - size
                if b < minb[cs]:
                    minb[cs] = b
                    wit[cs] = full ^ S
            i += 1
    return [minb[j] for j in range(nv + 1)], [int(wit[j]) for j in range(nv + 1)]


def combo_min_boundary(nbr, deg, int size):
    cdef uint64_t cn[MAXV]
    cdef int64_t cd[MAXV]
    cdef int nv = _load(nbr, deg, cn, cd)
    if size < 0 or size > nv:
        raise ValueError("size out of range")
    cdef int idx[MAXV]
    cdef int j, t
    cdef uint64_t S, best_set = 0
    cdef int64_t b, best = INF
    for j in range(size):
        idx[j] = j
    with nogil:
        while True:
            S = 0
            for j in range(size):
                S |= <uint64_t>1 << idx[j]
            b = 0
            for j in range(size):
                b += cd[idx[j]] - __builtin_popcountll(cn[idx[j]] & S)
            if b < best:
                best = b
                best_set = S
            j = size - 1
            while j >= 0 and idx[j] == nv - size + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for t in range(j + 1, size):
                idx[t] = idx[t - 1] + 1
    return int(best), int(best_set)


def gray_min_conductance(nbr, deg):
    cdef uint64_t cn[MAXV]
    cdef int64_t cd[MAXV]
    cdef int nv = _load(nbr, deg, cn, cd)
    cdef uint64_t full = (<uint64_t>1 << nv) - 1
    cdef int64_t total = 0
    cdef int v
    for v in range(nv):
        total += cd[v]
    cdef uint64_t S = 0, m, i, side, best_set = 0, limit = <uint64_t>1 << (nv - 1)
    cdef int64_t b = 0, vol = 0, x, sv, best_num = 1, best_den = 0
    with nogil:
        i = 1
        while i < limit:
            v = __builtin_ctzll(i)
            m = <uint64_t>1 << v
            x = __builtin_popcountll(cn[v] & S)
            if S & m:
                S ^= m
                b -= cd[v] - 2 * x
                vol -= cd[v]
            else:
                S |= m
                b += cd[v] - 2 * x
                vol += cd[v]
            if vol <= total - vol:
                side = S
                sv = vol
            else:
                side = full ^ S
                sv = total - vol
            if sv != 0:
                if best_den == 0 or b * best_den < best_num * 2 * sv:
                    best_num = b
                    best_den = 2 * sv
                    best_set = side
            i += 1
    return int(best_num), int(best_den), int(best_set)
