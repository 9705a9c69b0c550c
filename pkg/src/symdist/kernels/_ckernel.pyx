# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernel.

Walks every sum of ``g`` rows drawn from ``g`` distinct packages (one member
each), keeping a stack of prefix sums so each candidate costs one row XOR.
The GIL is released for the whole walk; the shared upper bound is read and
lowered with atomics so concurrent workers prune against each other.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

cnp.import_array()

cdef extern from *:
    """
    static inline int sd_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline long long sd_load(long long *p) { return __atomic_load_n(p, __ATOMIC_RELAXED); }
    static inline void sd_min_store(long long *p, long long v) {
        long long cur = __atomic_load_n(p, __ATOMIC_RELAXED);
        while (v < cur && !__atomic_compare_exchange_n(p, &cur, v, 1, __ATOMIC_RELAXED, __ATOMIC_RELAXED)) {}
    }
    """
    int sd_popcount(uint64_t x) nogil
    long long sd_load(long long *p) nogil
    void sd_min_store(long long *p, long long v) nogil


cdef enum:
    SYMPLECTIC = 0
    HAMMING = 1

cdef long long NO_WEIGHT = (<long long> 1) << 62

BACKEND = "cython"


cdef class GammaKernel:
    """Enumeration state for one prepared generator matrix.

    ``rows`` are in block layout: ``n_blocks`` blocks of ``nw`` words each
    (a, b for symplectic mode; a, b, a+b for Hamming mode).  ``filter_rows``
    hold normalizer rows with their halves swapped, so the symplectic product
    with a candidate is the parity of ``popcount(c & f)`` over its first two
    blocks.
    """

    cdef readonly int n_p, nw, width, mode, n_filter
    cdef readonly bint use_filter
    cdef uint64_t[:, ::1] rows
    cdef int32_t[:, ::1] members
    cdef int32_t[::1] sizes
    cdef uint64_t[:, ::1] filter_rows

    def __init__(self, rows, members, sizes, int nw, int mode, filter_rows, bint use_filter):
        self.rows = np.ascontiguousarray(rows, dtype=np.uint64)
        self.members = np.ascontiguousarray(members, dtype=np.int32)
        self.sizes = np.ascontiguousarray(sizes, dtype=np.int32)
        self.filter_rows = np.ascontiguousarray(filter_rows, dtype=np.uint64)
        self.n_p = self.sizes.shape[0]
        self.nw = nw
        self.width = self.rows.shape[1]
        self.mode = mode
        self.n_filter = self.filter_rows.shape[0]
        self.use_filter = use_filter and self.n_filter > 0

    def run(self, int g, prefix, int64_t[::1] shared_upper):
        """Enumerate generation ``g`` restricted to the given leading packages.

        Returns ``(candidates, best_weight, best_words)``; ``best_words`` is
        ``None`` if nothing beat the shared bound.
        """
        cdef int32_t[::1] pre = np.ascontiguousarray(prefix, dtype=np.int32)
        cdef int t = pre.shape[0]
        if g < 1 or g > self.n_p:
            raise ValueError(f"generation {g} outside 1..{self.n_p}")
        if t > g:
            raise ValueError("prefix longer than the generation")
        best = np.zeros(self.width, dtype=np.uint64)
        cdef uint64_t[::1] best_view = best
        cdef long long best_w = NO_WEIGHT
        cdef long long count = 0
        cdef long long *upper = <long long *> &shared_upper[0]
        with nogil:
            count = self._walk(g, &pre[0] if t > 0 else NULL, t, upper, &best_view[0], &best_w)
        if count < 0:
            raise MemoryError()
        return count, best_w, (best if best_w < NO_WEIGHT else None)

    cdef inline bint _admissible(self, uint64_t *c) noexcept nogil:
        cdef int f, w
        cdef uint64_t acc
        cdef int two = 2 * self.nw
        if not self.use_filter:
            return True
        for f in range(self.n_filter):
            acc = 0
            for w in range(two):
                acc ^= c[w] & self.filter_rows[f, w]
            if sd_popcount(acc) & 1:
                return True
        return False

    cdef long long _walk(self, int g, int32_t *pre, int t, long long *upper,
                         uint64_t *best, long long *best_w) noexcept nogil:
        cdef int W = self.width
        cdef int nw = self.nw
        cdef int n_p = self.n_p
        cdef uint64_t *stack = <uint64_t *> malloc((g + 1) * W * sizeof(uint64_t))
        cdef uint64_t *cand = <uint64_t *> malloc(W * sizeof(uint64_t))
        cdef int *pkg = <int *> malloc(g * sizeof(int))
        cdef int *mem = <int *> malloc(g * sizeof(int))
        cdef long long count = 0
        cdef long long u, wt
        cdef int l, w, r
        cdef uint64_t *src
        cdef uint64_t *dst
        cdef uint64_t *row
        if stack == NULL or cand == NULL or pkg == NULL or mem == NULL:
            free(stack); free(cand); free(pkg); free(mem)
            return -1
        memset(stack, 0, W * sizeof(uint64_t))
        l = 0
        pkg[0] = pre[0] if t > 0 else 0
        mem[0] = 0
        while True:
            r = self.members[pkg[l], mem[l]]
            row = &self.rows[r, 0]
            src = stack + l * W
            if l < g - 1:
                dst = stack + (l + 1) * W
                for w in range(W):
                    dst[w] = src[w] ^ row[w]
                l += 1
                pkg[l] = pre[l] if l < t else pkg[l - 1] + 1
                mem[l] = 0
                continue
            # leaf: weight of src ^ row, abandoned as soon as it reaches the bound
            count += 1
            u = sd_load(upper)
            if best_w[0] < u:
                u = best_w[0]
            wt = 0
            if self.mode == SYMPLECTIC:
                for w in range(nw):
                    wt += sd_popcount((src[w] ^ row[w]) | (src[nw + w] ^ row[nw + w]))
                    if wt >= u:
                        break
            else:
                for w in range(W):
                    wt += sd_popcount(src[w] ^ row[w])
                    if wt >= u:
                        break
            if 0 < wt < u:
                for w in range(W):
                    cand[w] = src[w] ^ row[w]
                if self._admissible(cand):
                    best_w[0] = wt
                    memcpy(best, cand, W * sizeof(uint64_t))
                    sd_min_store(upper, wt)
            # advance to the next choice, backtracking as needed
            while True:
                mem[l] += 1
                if mem[l] < self.sizes[pkg[l]]:
                    break
                mem[l] = 0
                if l >= t and pkg[l] < n_p - (g - l):
                    pkg[l] += 1
                    break
                if l == 0:
                    free(stack); free(cand); free(pkg); free(mem)
                    return count
                l -= 1
