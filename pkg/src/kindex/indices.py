"""Crossing-point centrality indices.

Both indices share one core: given citation counts ranked from most to
least cited, the crossing point is the largest rank r whose count c(r)
still satisfies c(r) >= r.

* h: crossing point over the citation counts of an author's own papers.
* K: crossing point over the citation counts of the *citing articles* -
  the deduplicated set of papers citing at least one of the author's
  papers. Optionally, citing articles co-written by the author can be
  excluded; exclusion only shrinks the citing set and never alters any
  citation count.

All counts are corpus-internal in-degrees, so on a partial corpus both
indices are lower bounds of their values on the full literature.

Every function is a pure read of an immutable graph and safe to call
from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from kindex import _kernels
from kindex.errors import ContractViolationError
from kindex.graph import CitationCountProfile, CitationGraph


@dataclass(frozen=True)
class IndexReport:
    """Computed indices for one author.

    ``citing_article_count`` counts distinct citing articles (self
    citations included); ``paper_count`` is the author's production size;
    ``tags`` is the union of the author's papers' tags. Invariants:
    h <= paper_count, k <= citing_article_count, k_no_self <= k.
    """

    author_id: str
    k: int
    k_no_self: int
    h: int
    citing_article_count: int
    paper_count: int
    tags: frozenset[str] = frozenset()


def crossing_index(profile: CitationCountProfile | Sequence[int]) -> int:
    """Largest 1-based rank r with c(r) >= r; 0 for an empty profile.

    Accepts a :class:`CitationCountProfile` or a raw sequence already
    sorted in non-increasing order; an unsorted or negative sequence is a
    contract violation. The result is a property of the multiset alone,
    so any permutation of the same counts (sorted via
    ``CitationCountProfile.from_counts``) yields the same value.
    """
    if isinstance(profile, CitationCountProfile):
        counts = np.asarray(profile.counts, dtype=np.int64)
    else:
        counts = _validated_counts(profile)
    return int(_kernels.crossing_from_sorted(counts))


def h_index(graph: CitationGraph, author: str) -> int:
    """Crossing point over the author's own papers' citation counts."""
    papers = graph.papers_of(author)
    if not papers:
        return 0
    counts = np.fromiter(
        (len(graph.cited_by[p]) for p in papers), np.int64, count=len(papers)
    )
    counts[::-1].sort()
    return int(_kernels.crossing_from_sorted(counts))


def citing_articles(
    graph: CitationGraph, author: str, exclude_self: bool = False
) -> frozenset[str]:
    """Deduplicated set of papers citing at least one of the author's papers.

    A paper citing three of the author's works appears once. With
    ``exclude_self``, citing papers whose author list contains ``author``
    are dropped (papers by mere coauthors stay).
    """
    citing: set[str] = set()
    for p in graph.papers_of(author):
        citing |= graph.cited_by[p]
    if exclude_self:
        citing = {q for q in citing if author not in graph.papers[q].author_ids}
    return frozenset(citing)


def k_index(graph: CitationGraph, author: str, exclude_self: bool = False) -> int:
    """Crossing point over the citation counts of the author's citing articles.

    ``exclude_self`` filters the citing *set* only; each remaining citing
    article keeps its full corpus-internal citation count.
    """
    citing = citing_articles(graph, author, exclude_self)
    if not citing:
        return 0
    counts = np.fromiter(
        (len(graph.cited_by[q]) for q in citing), np.int64, count=len(citing)
    )
    counts[::-1].sort()
    return int(_kernels.crossing_from_sorted(counts))


def index_report(graph: CitationGraph, author: str) -> IndexReport:
    """Full per-author report; all-zero (empty tags) for unknown authors."""
    papers = graph.papers_of(author)
    tags: frozenset[str] = frozenset()
    for p in papers:
        tags |= graph.papers[p].tags
    return IndexReport(
        author_id=author,
        k=k_index(graph, author),
        k_no_self=k_index(graph, author, exclude_self=True),
        h=h_index(graph, author),
        citing_article_count=len(citing_articles(graph, author)),
        paper_count=len(papers),
        tags=tags,
    )


def all_index_reports(graph: CitationGraph) -> list[IndexReport]:
    """Reports for every author with at least one paper, sorted by author id.

    Computes all authors in one pass over the flattened adjacency (the
    hot path for large corpora); results are identical to calling
    :func:`index_report` per author.
    """
    arrays = graph.arrays()
    h_arr, k_arr, kns_arr, ca_arr, n_arr = _kernels.bulk_author_indices(
        arrays.in_degree,
        arrays.author_papers_indptr,
        arrays.author_papers,
        arrays.cited_by_indptr,
        arrays.cited_by,
        arrays.paper_authors_indptr,
        arrays.paper_authors,
    )
    paper_tags = [graph.papers[p].tags for p in arrays.paper_ids]
    indptr = arrays.author_papers_indptr.tolist()
    author_papers = arrays.author_papers.tolist()

    reports = []
    for j, author in enumerate(arrays.author_ids):
        tags: frozenset[str] = frozenset()
        for t in range(indptr[j], indptr[j + 1]):
            tags |= paper_tags[author_papers[t]]
        reports.append(
            IndexReport(
                author_id=author,
                k=int(k_arr[j]),
                k_no_self=int(kns_arr[j]),
                h=int(h_arr[j]),
                citing_article_count=int(ca_arr[j]),
                paper_count=int(n_arr[j]),
                tags=tags,
            )
        )
    return reports


def _validated_counts(seq: Sequence[int]) -> np.ndarray:
    counts = np.asarray(list(seq))
    if counts.size == 0:
        return counts.astype(np.int64)
    if counts.dtype.kind not in "iu":
        raise ContractViolationError("citation counts must be integers")
    counts = counts.astype(np.int64)
    if counts.min() < 0:
        raise ContractViolationError("citation counts must be non-negative")
    if np.any(counts[1:] > counts[:-1]):
        raise ContractViolationError("profile must be sorted in non-increasing order")
    return counts
