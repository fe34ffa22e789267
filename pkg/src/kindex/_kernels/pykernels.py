"""Pure-Python twins of the compiled kernels.

Every function here implements exactly the same algorithm as its
counterpart in ``_ckernels.pyx`` - including the inline splitmix64
generator and the Fenwick-tree sampler - so the two backends produce
bit-identical results and can be swapped freely at import time.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
# 2^-53, scales a 53-bit integer into [0, 1).
_DOUBLE_UNIT = 1.0 / (1 << 53)


def crossing_from_sorted(counts) -> int:
    """Largest rank r (1-based) with counts[r - 1] >= r.

    ``counts`` must already be sorted in non-increasing order.
    """
    seq = counts.tolist() if isinstance(counts, np.ndarray) else list(counts)
    crossing = 0
    for i, c in enumerate(seq):
        if c >= i + 1:
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
    """Per-author crossing indices over an integer-indexed corpus.

    Arguments are the CSR arrays of ``CitationGraph.arrays()``. Returns
    five int64 arrays indexed by author: h, k, k_no_self, citing-article
    count, and paper count. The citing-article set of an author is the
    deduplicated union of the citers of their papers; ``k_no_self`` drops
    citing papers the author co-wrote but never alters citation counts.
    """
    n_papers = len(in_degree)
    n_authors = len(ap_indptr) - 1

    indeg = _as_list(in_degree)
    ap_ptr = _as_list(ap_indptr)
    ap = _as_list(ap_papers)
    cb_ptr = _as_list(cb_indptr)
    cb = _as_list(cb_flat)
    pa_ptr = _as_list(pa_indptr)
    pa = _as_list(pa_flat)

    h_out = [0] * n_authors
    k_out = [0] * n_authors
    kns_out = [0] * n_authors
    ca_out = [0] * n_authors
    n_out = [0] * n_authors

    stamp = [-1] * n_papers
    for a in range(n_authors):
        own = ap[ap_ptr[a] : ap_ptr[a + 1]]
        n_out[a] = len(own)
        h_out[a] = _crossing(sorted((indeg[p] for p in own), reverse=True))

        citing: list[int] = []
        for p in own:
            for t in range(cb_ptr[p], cb_ptr[p + 1]):
                q = cb[t]
                if stamp[q] != a:
                    stamp[q] = a
                    citing.append(q)
        ca_out[a] = len(citing)
        k_out[a] = _crossing(sorted((indeg[q] for q in citing), reverse=True))

        external = []
        for q in citing:
            for t in range(pa_ptr[q], pa_ptr[q + 1]):
                if pa[t] == a:
                    break
            else:
                external.append(indeg[q])
        external.sort(reverse=True)
        kns_out[a] = _crossing(external)

    return (
        np.asarray(h_out, dtype=np.int64),
        np.asarray(k_out, dtype=np.int64),
        np.asarray(kns_out, dtype=np.int64),
        np.asarray(ca_out, dtype=np.int64),
        np.asarray(n_out, dtype=np.int64),
    )


def sample_citation_structure(paper_count, ref_lo, ref_hi, exponent, seed):
    """Grow a citation DAG by preferential attachment; returns (indptr, targets).

    Paper i draws its reference count uniformly from [ref_lo, ref_hi]
    (clamped to the i earlier papers) and then cites distinct earlier
    papers with probability proportional to (in_degree + 1) ** exponent,
    with weights frozen while the paper's list is drawn. Fully
    deterministic in ``seed``.
    """
    state = seed & _MASK64
    tree = _Fenwick(paper_count)
    indeg = [0] * paper_count
    indptr = [0] * (paper_count + 1)
    targets: list[int] = []
    span = ref_hi - ref_lo + 1

    for i in range(paper_count):
        if i == 0:
            n_refs = 0
        else:
            state, z = _splitmix64(state)
            n_refs = ref_lo + z % span
            if n_refs > i:
                n_refs = i
        chosen: list[int] = []
        for _ in range(n_refs):
            state, z = _splitmix64(state)
            u = (z >> 11) * _DOUBLE_UNIT * tree.total
            j = tree.find(u)
            # Float-residue guards: keep the draw among the i existing
            # papers and off the already-chosen (zero-weight) ones.
            if j >= i:
                j = i - 1
            while j in chosen:
                j += 1
                if j >= i:
                    j = 0
            chosen.append(j)
            tree.add(j, -math.pow(indeg[j] + 1, exponent))
        for j in chosen:
            indeg[j] += 1
            tree.add(j, math.pow(indeg[j] + 1, exponent))
        targets.extend(chosen)
        indptr[i + 1] = len(targets)
        tree.add(i, 1.0)  # the new paper enters with weight (0 + 1) ** exponent

    return (
        np.asarray(indptr, dtype=np.int64),
        np.asarray(targets, dtype=np.int64),
    )


def _as_list(arr):
    return arr.tolist() if isinstance(arr, np.ndarray) else list(arr)


def _crossing(counts_desc) -> int:
    crossing = 0
    for i, c in enumerate(counts_desc):
        if c >= i + 1:
            crossing = i + 1
        else:
            break
    return crossing


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class _Fenwick:
    """Prefix-sum tree over float weights with inverse-CDF lookup."""

    def __init__(self, n: int):
        self.n = n
        self.tree = [0.0] * (n + 1)
        self.total = 0.0
        size = 1
        while size * 2 <= n:
            size *= 2
        self.size = size

    def add(self, i: int, delta: float) -> None:
        self.total += delta
        i += 1
        while i <= self.n:
            self.tree[i] += delta
            i += i & (-i)

    def find(self, u: float) -> int:
        """Smallest 0-based index whose prefix sum exceeds u."""
        idx = 0
        bit = self.size
        while bit:
            nxt = idx + bit
            if nxt <= self.n and self.tree[nxt] <= u:
                idx = nxt
                u -= self.tree[nxt]
            bit >>= 1
        return idx
