# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan kernels. Interface contract documented in _kernels_py."""

from libc.stdint cimport int64_t, uint64_t

import numpy as np

cdef extern from *:
    """
    #define POPCNT64(x) __builtin_popcountll(x)
    #define CTZ64(x) __builtin_ctzll(x)
    """
    int POPCNT64(unsigned long long) nogil
    int CTZ64(unsigned long long) nogil

__all__ = ["min_weight_scan", "windowed_scan"]


def _pack(rows, Py_ssize_t nwords):
    arr = np.zeros((max(len(rows), 1), nwords), dtype=np.uint64)
    lim = (1 << 64) - 1
    for i, r in enumerate(rows):
        for w in range(nwords):
            arr[i, w] = (r >> (64 * w)) & lim
    return arr


def min_weight_scan(gx, gz, n, seed_x=0, seed_z=0, start=1, stop=None,
                    early_stop=0):
    cdef Py_ssize_t q = len(gx)
    total = 1 << q
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise ValueError("bad scan range")
    cdef int nw = (n + 63) >> 6
    if nw < 1:
        nw = 1
    gxa = _pack(gx, nw)
    gza = _pack(gz, nw)
    cxa = _pack([seed_x], nw)[0].copy()
    cza = _pack([seed_z], nw)[0].copy()
    cdef uint64_t[:, ::1] gxv = gxa
    cdef uint64_t[:, ::1] gzv = gza
    cdef uint64_t[::1] cx = cxa
    cdef uint64_t[::1] cz = cza

    cdef int64_t i0 = start, i1 = stop
    cdef int64_t best_mask = -1, scanned = 0, mask, m, i
    cdef int best_w = n + 1, es = early_stop, w, j, k

    if i0 >= i1:
        return best_w, best_mask, 0

    mask = i0 ^ (i0 >> 1)
    m = mask
    with nogil:
        while m:
            j = CTZ64(<uint64_t>m)
            for k in range(nw):
                cx[k] ^= gxv[j, k]
                cz[k] ^= gzv[j, k]
            m &= m - 1
        w = 0
        for k in range(nw):
            w += POPCNT64(cx[k] | cz[k])
        scanned = 1
        best_w = w
        best_mask = mask
        if not (es and w <= es):
            for i in range(i0 + 1, i1):
                j = CTZ64(<uint64_t>i)
                mask ^= (<int64_t>1) << j
                for k in range(nw):
                    cx[k] ^= gxv[j, k]
                    cz[k] ^= gzv[j, k]
                w = 0
                for k in range(nw):
                    w += POPCNT64(cx[k] | cz[k])
                scanned += 1
                if w < best_w or (w == best_w and mask < best_mask):
                    best_w = w
                    best_mask = mask
                    if es and w <= es:
                        break
    return best_w, int(best_mask), int(scanned)


cdef struct WScan:
    uint64_t* gx
    uint64_t* gz
    uint64_t* balls
    uint64_t* cx        # (cap+2) * nw scratch, indexed by subset size
    uint64_t* cz
    uint64_t* rem       # (cap+2) * qw scratch
    int64_t* chosen
    int64_t* best_chosen
    int best_size
    int best_w
    int nw
    int qw
    int max_size
    int early_stop
    int max_drop
    int stop
    int64_t scanned


cdef inline bint _mask_less(int64_t* a, int na, int64_t* b, int nb) nogil:
    # compare subsets of ascending indices as bitmask integers
    cdef int ia = na - 1, ib = nb - 1
    while ia >= 0 and ib >= 0:
        if a[ia] != b[ib]:
            return a[ia] < b[ib]
        ia -= 1
        ib -= 1
    return ia < 0 and ib >= 0


cdef void _consider(WScan* s, int w, int size) nogil:
    cdef int k
    if w < s.best_w or (w == s.best_w and s.best_size > 0 and
                        _mask_less(s.chosen, size, s.best_chosen, s.best_size)):
        s.best_w = w
        s.best_size = size
        for k in range(size):
            s.best_chosen[k] = s.chosen[k]
        if s.early_stop and w <= s.early_stop:
            s.stop = 1


cdef void _wdfs(WScan* s, int size) nogil:
    cdef uint64_t* cx = s.cx + size * s.nw
    cdef uint64_t* cz = s.cz + size * s.nw
    cdef uint64_t* rem = s.rem + size * s.qw
    cdef uint64_t* ncx = s.cx + (size + 1) * s.nw
    cdef uint64_t* ncz = s.cz + (size + 1) * s.nw
    cdef uint64_t* nrem = s.rem + (size + 1) * s.qw
    cdef uint64_t* bj
    cdef uint64_t word
    cdef int w = 0, k, t, j, budget, need

    for k in range(s.nw):
        w += POPCNT64(cx[k] | cz[k])
    s.scanned += 1
    _consider(s, w, size)
    if s.stop or size >= s.max_size:
        return
    budget = s.best_w - 1 - size
    if budget < 1:
        return
    if w >= s.best_w:
        need = (w - s.best_w + s.max_drop) // s.max_drop
        if need > budget:
            return
    for t in range(s.qw):
        while rem[t]:
            if s.stop:
                return
            word = rem[t]
            j = (t << 6) + CTZ64(word)
            rem[t] = word & (word - 1)
            bj = s.balls + j * s.qw
            for k in range(s.nw):
                ncx[k] = cx[k] ^ s.gx[j * s.nw + k]
                ncz[k] = cz[k] ^ s.gz[j * s.nw + k]
            for k in range(s.qw):
                nrem[k] = rem[k] & bj[k]
            s.chosen[size] = j
            _wdfs(s, size + 1)
            if s.best_w - 1 - size < 1:
                return


def windowed_scan(gx, gz, n, balls, max_size, early_stop, init_best):
    cdef Py_ssize_t q = len(gx)
    cdef int nw = (n + 63) >> 6
    cdef int qw = (q + 63) >> 6
    if nw < 1:
        nw = 1
    if qw < 1:
        qw = 1
    cdef int cap = min(max_size, q) if max_size > 0 else 0
    if q == 0 or cap == 0:
        return init_best, -1, 0

    supports = [(gx[i] | gz[i]).bit_count() for i in range(q)]

    gxa = _pack(gx, nw)
    gza = _pack(gz, nw)
    ba = _pack(balls, qw)
    cxa = np.zeros((cap + 2) * nw, dtype=np.uint64)
    cza = np.zeros((cap + 2) * nw, dtype=np.uint64)
    rema = np.zeros((cap + 2) * qw, dtype=np.uint64)
    chosena = np.zeros(cap + 2, dtype=np.int64)
    besta = np.zeros(cap + 2, dtype=np.int64)
    abovea = np.zeros(qw, dtype=np.uint64)

    cdef uint64_t[:, ::1] gxv = gxa
    cdef uint64_t[:, ::1] gzv = gza
    cdef uint64_t[:, ::1] bv = ba
    cdef uint64_t[::1] cxv = cxa
    cdef uint64_t[::1] czv = cza
    cdef uint64_t[::1] remv = rema
    cdef int64_t[::1] chosenv = chosena
    cdef int64_t[::1] bestv = besta
    cdef uint64_t[::1] above = abovea

    cdef WScan s
    s.gx = &gxv[0, 0]
    s.gz = &gzv[0, 0]
    s.balls = &bv[0, 0]
    s.cx = &cxv[0]
    s.cz = &czv[0]
    s.rem = &remv[0]
    s.chosen = &chosenv[0]
    s.best_chosen = &bestv[0]
    s.best_size = 0
    s.best_w = init_best
    s.nw = nw
    s.qw = qw
    s.max_size = cap
    s.early_stop = early_stop
    s.max_drop = max(supports)
    s.stop = 0
    s.scanned = 0

    cdef Py_ssize_t v
    cdef int k, t
    with nogil:
        for t in range(s.qw):
            above[t] = 0
        for t in range(<int>q):
            above[t >> 6] |= (<uint64_t>1) << (t & 63)
        for v in range(q):
            if s.stop:
                break
            above[v >> 6] &= ~((<uint64_t>1) << (v & 63))
            for k in range(s.nw):
                s.cx[1 * s.nw + k] = s.gx[v * s.nw + k]
                s.cz[1 * s.nw + k] = s.gz[v * s.nw + k]
            for k in range(s.qw):
                s.rem[1 * s.qw + k] = s.balls[v * s.qw + k] & above[k]
            s.chosen[0] = v
            _wdfs(&s, 1)

    best_mask = -1
    if s.best_size > 0:
        best_mask = 0
        for k in range(s.best_size):
            best_mask |= 1 << int(besta[k])
    return int(s.best_w), best_mask, int(s.scanned)
