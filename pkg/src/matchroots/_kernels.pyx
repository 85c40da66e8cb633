# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset recurrence in checked 64-bit integers.

Same layout as the pure-Python kernel: row ``mask`` of the result holds the
coefficients (lowest degree first) of the matching polynomial of the
vertices selected by ``mask``.
"""

import numpy as np
cimport numpy as cnp

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline int mr_ctz(unsigned long long m) { return __builtin_ctzll(m); }
    /* acc += a * b, returning non-zero on signed 64-bit overflow */
    static inline int mr_fma_ovf(long long *acc, long long a, long long b) {
        long long t;
        if (__builtin_mul_overflow(a, b, &t)) return 1;
        return __builtin_add_overflow(*acc, t, acc);
    }
    """
    int mr_ctz(u64 m) nogil
    int mr_fma_ovf(long long *acc, long long a, long long b) nogil


def subset_table_i64(int n, long long[::1] neg_r, long long[:, ::1] lam):
    """Exact table in signed 64-bit integers.

    Returns ``(table, ok)``; ``ok`` is False as soon as any intermediate
    value overflows, in which case the table must be discarded.
    """
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t width = n + 1
    out = np.zeros((size, width), dtype=np.int64)
    cdef long long[:, ::1] t = out
    cdef u64[::1] adj = np.zeros(n, dtype=np.uint64)
    cdef int v, w, k, bad = 0
    cdef u64 mask, rest, nbrs, low, sub
    cdef long long c, acc
    for v in range(n):
        for w in range(n):
            if lam[v, w] != 0:
                adj[v] |= (<u64>1) << w
    t[0, 0] = 1
    with nogil:
        for mask in range(1, <u64>size):
            v = mr_ctz(mask)
            rest = mask ^ ((<u64>1) << v)
            c = neg_r[v]
            for k in range(1, width):
                t[mask, k] = t[rest, k - 1]
            if c != 0:
                for k in range(width - 1):
                    acc = t[mask, k]
                    bad |= mr_fma_ovf(&acc, c, t[rest, k])
                    t[mask, k] = acc
            nbrs = rest & adj[v]
            while nbrs:
                low = nbrs & (~nbrs + 1)
                w = mr_ctz(low)
                nbrs ^= low
                sub = rest ^ low
                c = lam[v, w]
                for k in range(width - 2):
                    acc = t[mask, k]
                    bad |= mr_fma_ovf(&acc, c, t[sub, k])
                    t[mask, k] = acc
            if bad:
                break
    return out, not bad
