"""Corpus data model: papers, authors, and citation adjacency.

A :class:`CitationGraph` is built once from a sequence of records and is
read-only afterwards, so any number of threads may query it concurrently.
Cited ids that never appear as records become *stub* papers: they carry no
authors or outgoing references but still accumulate in-degree, which keeps
citation counts truthful on partial corpora.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from kindex.errors import ContractViolationError, DatasetError, NotFoundError


@dataclass(frozen=True)
class PaperRecord:
    """One publication: identity, authorship, outgoing references, topic tags.

    Ids are opaque, case-sensitive strings. Tags are normalized to
    lowercase. A record never cites itself and never repeats a reference
    or an author; violations raise :class:`DatasetError` at construction.
    """

    paper_id: str
    title: str | None = None
    year: int | None = None
    author_ids: tuple[str, ...] = ()
    cites: tuple[str, ...] = ()
    tags: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "author_ids", tuple(self.author_ids))
        object.__setattr__(self, "cites", tuple(self.cites))
        object.__setattr__(self, "tags", frozenset(t.lower() for t in self.tags))
        if not self.paper_id:
            raise DatasetError("paper_id must be a non-empty string")
        if any(not c for c in self.cites):
            raise DatasetError(f"paper {self.paper_id!r} has an empty reference id")
        if len(set(self.cites)) != len(self.cites):
            raise DatasetError(f"paper {self.paper_id!r} lists a duplicate reference")
        if self.paper_id in self.cites:
            raise DatasetError(f"paper {self.paper_id!r} cites itself")
        if any(not a for a in self.author_ids):
            raise DatasetError(f"paper {self.paper_id!r} has an empty author id")
        if len(set(self.author_ids)) != len(self.author_ids):
            raise DatasetError(f"paper {self.paper_id!r} lists a duplicate author")


@dataclass(frozen=True)
class CitationCountProfile:
    """A multiset of citation counts, materialized sorted in non-increasing order.

    ``counts[r - 1]`` is the count of the rank-``r`` item (1-based). Use
    :meth:`from_counts` to build one from an unsorted multiset; passing
    unsorted counts to the constructor is a contract violation.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise ContractViolationError("citation counts must be non-negative")
        if any(a < b for a, b in zip(self.counts, self.counts[1:])):
            raise ContractViolationError("counts must be sorted in non-increasing order")

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> CitationCountProfile:
        """Sort an arbitrary multiset of counts into a valid profile."""
        return cls(tuple(sorted((int(c) for c in counts), reverse=True)))

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class GraphArrays:
    """Integer-indexed adjacency view of a graph, consumed by the fast kernels.

    Papers and authors are numbered by sorted id. The three adjacency
    relations are flattened CSR-style: ``flat[indptr[i]:indptr[i + 1]]``
    holds the neighbors of item ``i``.
    """

    paper_ids: tuple[str, ...]
    author_ids: tuple[str, ...]
    in_degree: np.ndarray
    author_papers_indptr: np.ndarray
    author_papers: np.ndarray
    cited_by_indptr: np.ndarray
    cited_by: np.ndarray
    paper_authors_indptr: np.ndarray
    paper_authors: np.ndarray


class CitationGraph:
    """Immutable citation corpus with forward and reverse adjacency.

    ``cited_by`` is exactly the transpose of the ``cites`` relation and
    ``authors`` maps every author id appearing on any record to the set of
    papers they authored. Instances compare equal by content, regardless
    of the record order they were built from.
    """

    __slots__ = ("_papers", "_cited_by", "_authors", "_edge_count")

    def __init__(
        self,
        papers: dict[str, PaperRecord],
        cited_by: dict[str, frozenset[str]],
        authors: dict[str, frozenset[str]],
        edge_count: int,
    ):
        # Internal constructor; use build_graph().
        self._papers = papers
        self._cited_by = cited_by
        self._authors = authors
        self._edge_count = edge_count

    @property
    def papers(self) -> Mapping[str, PaperRecord]:
        return MappingProxyType(self._papers)

    @property
    def cited_by(self) -> Mapping[str, frozenset[str]]:
        return MappingProxyType(self._cited_by)

    @property
    def authors(self) -> Mapping[str, frozenset[str]]:
        return MappingProxyType(self._authors)

    @property
    def paper_count(self) -> int:
        return len(self._papers)

    @property
    def author_count(self) -> int:
        return len(self._authors)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def __contains__(self, paper_id: str) -> bool:
        return paper_id in self._papers

    def __len__(self) -> int:
        return len(self._papers)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CitationGraph):
            return NotImplemented
        return (
            self._papers == other._papers
            and self._cited_by == other._cited_by
            and self._authors == other._authors
        )

    def __repr__(self) -> str:
        return (
            f"CitationGraph(papers={len(self._papers)}, "
            f"edges={self._edge_count}, authors={len(self._authors)})"
        )

    def citation_count(self, paper_id: str) -> int:
        """Number of papers in the corpus citing ``paper_id`` (stubs included)."""
        try:
            return len(self._cited_by[paper_id])
        except KeyError:
            raise NotFoundError(f"unknown paper id {paper_id!r}") from None

    def papers_of(self, author_id: str) -> frozenset[str]:
        """Paper ids authored by ``author_id``; empty for unknown authors."""
        return self._authors.get(author_id, frozenset())

    def arrays(self) -> GraphArrays:
        """Flatten the graph into the integer arrays the kernels operate on."""
        paper_ids = tuple(sorted(self._papers))
        author_ids = tuple(sorted(self._authors))
        pidx = {p: i for i, p in enumerate(paper_ids)}
        aidx = {a: i for i, a in enumerate(author_ids)}
        n_papers = len(paper_ids)
        n_authors = len(author_ids)

        in_degree = np.fromiter(
            (len(self._cited_by[p]) for p in paper_ids), np.int64, count=n_papers
        )
        cb_indptr = np.zeros(n_papers + 1, dtype=np.int64)
        np.cumsum(in_degree, out=cb_indptr[1:])
        cb_flat = np.fromiter(
            (pidx[q] for p in paper_ids for q in self._cited_by[p]),
            np.int64,
            count=int(cb_indptr[-1]),
        )

        ap_lens = np.fromiter(
            (len(self._authors[a]) for a in author_ids), np.int64, count=n_authors
        )
        ap_indptr = np.zeros(n_authors + 1, dtype=np.int64)
        np.cumsum(ap_lens, out=ap_indptr[1:])
        ap_flat = np.fromiter(
            (pidx[p] for a in author_ids for p in self._authors[a]),
            np.int64,
            count=int(ap_indptr[-1]),
        )

        pa_lens = np.fromiter(
            (len(self._papers[p].author_ids) for p in paper_ids), np.int64, count=n_papers
        )
        pa_indptr = np.zeros(n_papers + 1, dtype=np.int64)
        np.cumsum(pa_lens, out=pa_indptr[1:])
        pa_flat = np.fromiter(
            (aidx[a] for p in paper_ids for a in self._papers[p].author_ids),
            np.int64,
            count=int(pa_indptr[-1]),
        )

        return GraphArrays(
            paper_ids=paper_ids,
            author_ids=author_ids,
            in_degree=in_degree,
            author_papers_indptr=ap_indptr,
            author_papers=ap_flat,
            cited_by_indptr=cb_indptr,
            cited_by=cb_flat,
            paper_authors_indptr=pa_indptr,
            paper_authors=pa_flat,
        )


def build_graph(records: Iterable[PaperRecord]) -> CitationGraph:
    """Assemble an immutable graph from paper records.

    Cited ids with no record of their own become stub papers. The result
    is independent of record order.

    Raises:
        DatasetError: on a duplicate ``paper_id``. (Self-citations and
            duplicate references are already rejected by
            :class:`PaperRecord` itself.)
    """
    papers: dict[str, PaperRecord] = {}
    for rec in records:
        if rec.paper_id in papers:
            raise DatasetError(f"duplicate paper_id {rec.paper_id!r}")
        papers[rec.paper_id] = rec

    citers: dict[str, set[str]] = {pid: set() for pid in papers}
    edge_count = 0
    for rec in list(papers.values()):
        for target in rec.cites:
            citers.setdefault(target, set()).add(rec.paper_id)
            edge_count += 1
    for pid in citers:
        if pid not in papers:
            papers[pid] = PaperRecord(paper_id=pid)

    authors: dict[str, set[str]] = {}
    for rec in papers.values():
        for author in rec.author_ids:
            authors.setdefault(author, set()).add(rec.paper_id)

    return CitationGraph(
        papers,
        {pid: frozenset(s) for pid, s in citers.items()},
        {a: frozenset(s) for a, s in authors.items()},
        edge_count,
    )


def iter_edges(graph: CitationGraph) -> Iterator[tuple[str, str]]:
    """Yield every (citing, cited) pair in the corpus."""
    for pid, rec in graph.papers.items():
        for target in rec.cites:
            yield pid, target
