# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.

Mirrors ``pykernels.py`` operation for operation (same splitmix64
stream, same Fenwick traversal, same float arithmetic order) so both
backends return bit-identical results.
"""

from libc.math cimport pow
from libc.stdlib cimport qsort
from libc.stdint cimport int64_t, uint64_t

import numpy as np


cdef int _cmp_int64(const void* a, const void* b) noexcept nogil:
    cdef int64_t x = (<const int64_t*> a)[0]
    cdef int64_t y = (<const int64_t*> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


cdef inline int64_t _crossing_from_asc(const int64_t* counts, int64_t m) noexcept nogil:
    # counts sorted ascending; rank r corresponds to counts[m - r].
    cdef int64_t r, crossing = 0
    for r in range(1, m + 1):
        if counts[m - r] >= r:
            crossing = r
        else:
            break
    return crossing


def crossing_from_sorted(counts) -> int:
    """Largest rank r (1-based) with counts[r - 1] >= r; counts non-increasing."""
    cdef const int64_t[::1] c = np.ascontiguousarray(counts, dtype=np.int64)
    cdef int64_t i, crossing = 0
    cdef int64_t m = c.shape[0]
    for i in range(m):
        if c[i] >= i + 1:
            crossing = i + 1
        else:
            break
    return crossing


def bulk_author_indices(
    in_degree,
    ap_indptr,
    ap_papers,
    cb_indptr,
    cb_flat,
    pa_indptr,
    pa_flat,
):
    """Per-author h, k, k_no_self, citing-article count, and paper count."""
    cdef const int64_t[::1] indeg = np.ascontiguousarray(in_degree, dtype=np.int64)
    cdef const int64_t[::1] ap_ptr = np.ascontiguousarray(ap_indptr, dtype=np.int64)
    cdef const int64_t[::1] ap = np.ascontiguousarray(ap_papers, dtype=np.int64)
    cdef const int64_t[::1] cb_ptr = np.ascontiguousarray(cb_indptr, dtype=np.int64)
    cdef const int64_t[::1] cb = np.ascontiguousarray(cb_flat, dtype=np.int64)
    cdef const int64_t[::1] pa_ptr = np.ascontiguousarray(pa_indptr, dtype=np.int64)
    cdef const int64_t[::1] pa = np.ascontiguousarray(pa_flat, dtype=np.int64)

    cdef int64_t n_papers = indeg.shape[0]
    cdef int64_t n_authors = ap_ptr.shape[0] - 1

    h_arr = np.zeros(n_authors, dtype=np.int64)
    k_arr = np.zeros(n_authors, dtype=np.int64)
    kns_arr = np.zeros(n_authors, dtype=np.int64)
    ca_arr = np.zeros(n_authors, dtype=np.int64)
    n_arr = np.zeros(n_authors, dtype=np.int64)
    stamp_arr = np.full(max(n_papers, 1), -1, dtype=np.int64)
    buf_arr = np.empty(max(n_papers, 1), dtype=np.int64)
    counts_arr = np.empty(max(n_papers, 1), dtype=np.int64)

    cdef int64_t[::1] h_out = h_arr
    cdef int64_t[::1] k_out = k_arr
    cdef int64_t[::1] kns_out = kns_arr
    cdef int64_t[::1] ca_out = ca_arr
    cdef int64_t[::1] n_out = n_arr
    cdef int64_t[::1] stamp = stamp_arr
    cdef int64_t[::1] buf = buf_arr
    cdef int64_t[::1] counts = counts_arr

    cdef int64_t a, t, u, p, q, m, n_citing, is_self
    with nogil:
        for a in range(n_authors):
            n_out[a] = ap_ptr[a + 1] - ap_ptr[a]

            m = 0
            for t in range(ap_ptr[a], ap_ptr[a + 1]):
                counts[m] = indeg[ap[t]]
                m += 1
            if m > 1:
                qsort(&counts[0], m, sizeof(int64_t), _cmp_int64)
            h_out[a] = _crossing_from_asc(&counts[0], m) if m > 0 else 0

            n_citing = 0
            for t in range(ap_ptr[a], ap_ptr[a + 1]):
                p = ap[t]
                for u in range(cb_ptr[p], cb_ptr[p + 1]):
                    q = cb[u]
                    if stamp[q] != a:
                        stamp[q] = a
                        buf[n_citing] = q
                        n_citing += 1
            ca_out[a] = n_citing

            for t in range(n_citing):
                counts[t] = indeg[buf[t]]
            if n_citing > 1:
                qsort(&counts[0], n_citing, sizeof(int64_t), _cmp_int64)
            k_out[a] = _crossing_from_asc(&counts[0], n_citing) if n_citing > 0 else 0

            m = 0
            for t in range(n_citing):
                q = buf[t]
                is_self = 0
                for u in range(pa_ptr[q], pa_ptr[q + 1]):
                    if pa[u] == a:
                        is_self = 1
                        break
                if not is_self:
                    counts[m] = indeg[q]
                    m += 1
            if m > 1:
                qsort(&counts[0], m, sizeof(int64_t), _cmp_int64)
            kns_out[a] = _crossing_from_asc(&counts[0], m) if m > 0 else 0

    return h_arr, k_arr, kns_arr, ca_arr, n_arr


cdef inline uint64_t _splitmix64_z(uint64_t* state) noexcept nogil:
    cdef uint64_t z
    state[0] = state[0] + <uint64_t> 0x9E3779B97F4A7C15
    z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t> 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t> 0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline void _fenwick_add(double* tree, int64_t n, int64_t i, double delta) noexcept nogil:
    i += 1
    while i <= n:
        tree[i] += delta
        i += i & (-i)


cdef inline int64_t _fenwick_find(const double* tree, int64_t n, int64_t size, double u) noexcept nogil:
    cdef int64_t idx = 0, nxt
    cdef int64_t bit = size
    while bit:
        nxt = idx + bit
        if nxt <= n and tree[nxt] <= u:
            idx = nxt
            u -= tree[nxt]
        bit >>= 1
    return idx


def sample_citation_structure(paper_count, ref_lo, ref_hi, exponent, seed):
    """Preferential-attachment reference lists; returns (indptr, targets)."""
    cdef int64_t n = paper_count
    cdef int64_t lo = ref_lo
    cdef int64_t hi = ref_hi
    cdef double gamma = exponent
    cdef uint64_t state = <uint64_t> (seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t span = <uint64_t> (hi - lo + 1)
    cdef double unit = 1.0 / 9007199254740992.0  # 2^-53

    # Exact upper bound on the edge total: paper i cites at most min(hi, i).
    cdef int64_t cap = 0
    cdef int64_t i
    for i in range(n):
        cap += hi if hi < i else i

    tree_arr = np.zeros(n + 1, dtype=np.float64)
    indeg_arr = np.zeros(n, dtype=np.int64)
    indptr_arr = np.zeros(n + 1, dtype=np.int64)
    targets_arr = np.empty(cap, dtype=np.int64)

    cdef double[::1] tree = tree_arr
    cdef int64_t[::1] indeg = indeg_arr
    cdef int64_t[::1] indptr = indptr_arr
    cdef int64_t[::1] targets = targets_arr

    cdef int64_t size = 1
    while size * 2 <= n:
        size *= 2

    cdef double total = 0.0
    cdef double u, w
    cdef int64_t pos = 0, n_refs, j, d, start, t, dup
    with nogil:
        for i in range(n):
            if i == 0:
                n_refs = 0
            else:
                n_refs = lo + <int64_t> (_splitmix64_z(&state) % span)
                if n_refs > i:
                    n_refs = i
            start = pos
            for d in range(n_refs):
                u = (_splitmix64_z(&state) >> 11) * unit * total
                j = _fenwick_find(&tree[0], n, size, u)
                # Float-residue guards, identical to the pure twin.
                if j >= i:
                    j = i - 1
                dup = 1
                while dup:
                    dup = 0
                    for t in range(start, pos):
                        if targets[t] == j:
                            dup = 1
                            j += 1
                            if j >= i:
                                j = 0
                            break
                targets[pos] = j
                pos += 1
                w = pow(<double> (indeg[j] + 1), gamma)
                _fenwick_add(&tree[0], n, j, -w)
                total += -w
            for t in range(start, pos):
                j = targets[t]
                indeg[j] += 1
                w = pow(<double> (indeg[j] + 1), gamma)
                _fenwick_add(&tree[0], n, j, w)
                total += w
            indptr[i + 1] = pos
            _fenwick_add(&tree[0], n, i, 1.0)
            total += 1.0

    return indptr_arr, targets_arr[:pos].copy()
