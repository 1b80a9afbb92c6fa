# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel; same contract as ``parcross._kernel_py``.

Masks are uint64 and coefficients int64. The Python wrapper guarantees at
most 63 local variables and coefficient sums that cannot overflow.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free as cfree


cdef struct Problem:
    int nterms
    uint64_t *masks
    int64_t *re
    int64_t *im
    int nkids
    uint64_t *kid_bit
    uint64_t *kid_par
    int nchecks
    uint64_t *chk_bit
    uint64_t *chk_par
    uint64_t top


cdef int _load(Problem *pb, masks, re, im, parent, uint64_t free) except -1:
    cdef int n = len(masks)
    cdef int k = len(parent)
    cdef int v, p, i
    pb.nterms = n
    pb.masks = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    pb.re = <int64_t *> malloc(max(n, 1) * sizeof(int64_t))
    pb.im = <int64_t *> malloc(max(n, 1) * sizeof(int64_t))
    pb.kid_bit = <uint64_t *> malloc(max(k, 1) * sizeof(uint64_t))
    pb.kid_par = <uint64_t *> malloc(max(k, 1) * sizeof(uint64_t))
    pb.chk_bit = <uint64_t *> malloc(max(k, 1) * sizeof(uint64_t))
    pb.chk_par = <uint64_t *> malloc(max(k, 1) * sizeof(uint64_t))
    for i in range(n):
        pb.masks[i] = masks[i]
        pb.re[i] = re[i]
        pb.im[i] = im[i]
    pb.nkids = 0
    pb.nchecks = 0
    pb.top = 0
    for v in range(k):
        p = parent[v]
        if p >= 0:
            pb.chk_bit[pb.nchecks] = (<uint64_t> 1) << v
            pb.chk_par[pb.nchecks] = (<uint64_t> 1) << p
            pb.nchecks += 1
        if not (free >> v) & 1:
            continue
        if p >= 0 and (free >> p) & 1:
            pb.kid_bit[pb.nkids] = (<uint64_t> 1) << v
            pb.kid_par[pb.nkids] = (<uint64_t> 1) << p
            pb.nkids += 1
        else:
            pb.top |= (<uint64_t> 1) << v
    return 0


cdef void _release(Problem *pb):
    cfree(pb.masks)
    cfree(pb.re)
    cfree(pb.im)
    cfree(pb.kid_bit)
    cfree(pb.kid_par)
    cfree(pb.chk_bit)
    cfree(pb.chk_par)


cdef inline bint _consistent(Problem *pb, uint64_t a0) nogil:
    cdef int c
    for c in range(pb.nchecks):
        if (a0 & pb.chk_bit[c]) and not (a0 & pb.chk_par[c]):
            return False
    return True


cdef inline uint64_t _allowed(Problem *pb, uint64_t a0) nogil:
    cdef uint64_t allowed = 0
    cdef int c
    for c in range(pb.nkids):
        if a0 & pb.kid_par[c]:
            allowed |= pb.kid_bit[c]
    return allowed


def scan(masks, re, im, parent, fixed_one, free, bint want_zero):
    cdef Problem pb
    cdef uint64_t fo = fixed_one
    cdef uint64_t fr = free
    cdef uint64_t P, a0, a, sub, allowed, m
    cdef uint64_t and_m = ~(<uint64_t> 0)
    cdef uint64_t or_m = 0
    cdef uint64_t n_cons = 0, n_sat = 0
    cdef int64_t vr, vi
    cdef int t
    cdef bint have_first = False
    cdef uint64_t first = 0
    _load(&pb, masks, re, im, parent, fr)
    try:
        with nogil:
            P = pb.top
            while True:
                a0 = fo | P
                if _consistent(&pb, a0):
                    allowed = _allowed(&pb, a0)
                    sub = allowed
                    while True:
                        a = a0 | sub
                        n_cons += 1
                        vr = 0
                        vi = 0
                        for t in range(pb.nterms):
                            m = pb.masks[t]
                            if (m & a) == m:
                                vr += pb.re[t]
                                vi += pb.im[t]
                        if (vr == 0 and vi == 0) == want_zero:
                            n_sat += 1
                            and_m &= a
                            or_m |= a
                            if not have_first:
                                have_first = True
                                first = a
                        if sub == 0:
                            break
                        sub = (sub - 1) & allowed
                if P == 0:
                    break
                P = (P - 1) & pb.top
    finally:
        _release(&pb)
    return int(n_cons), int(n_sat), int(and_m), int(or_m), (int(first) if have_first else -1)


def max_abs2(masks, re, im, parent, fixed_one, free):
    cdef Problem pb
    cdef uint64_t fo = fixed_one
    cdef uint64_t fr = free
    cdef uint64_t P, a0, a, sub, allowed, m
    cdef int64_t vr, vi, v
    cdef int64_t best = -1
    cdef uint64_t arg = 0
    cdef int t
    _load(&pb, masks, re, im, parent, fr)
    try:
        with nogil:
            P = pb.top
            while True:
                a0 = fo | P
                if _consistent(&pb, a0):
                    allowed = _allowed(&pb, a0)
                    sub = allowed
                    while True:
                        a = a0 | sub
                        vr = 0
                        vi = 0
                        for t in range(pb.nterms):
                            m = pb.masks[t]
                            if (m & a) == m:
                                vr += pb.re[t]
                                vi += pb.im[t]
                        v = vr * vr + vi * vi
                        if v > best:
                            best = v
                            arg = a
                        if sub == 0:
                            break
                        sub = (sub - 1) & allowed
                if P == 0:
                    break
                P = (P - 1) & pb.top
    finally:
        _release(&pb)
    return int(best), (int(arg) if best >= 0 else -1)
