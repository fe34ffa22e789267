from __future__ import annotations

import pytest
from hypothesis import given, settings

from kindex.errors import DatasetError, NotFoundError
from kindex.graph import PaperRecord, build_graph, iter_edges

from conftest import record_lists


def rec(pid, cites=(), authors=(), tags=()):
    return PaperRecord(
        paper_id=pid, author_ids=tuple(authors), cites=tuple(cites), tags=frozenset(tags)
    )


class TestPaperRecord:
    def test_rejects_self_citation(self):
        with pytest.raises(DatasetError, match="'a'.*cites itself"):
            rec("a", cites=["b", "a"])

    def test_rejects_duplicate_reference(self):
        with pytest.raises(DatasetError, match="duplicate reference"):
            rec("a", cites=["b", "b"])

    def test_rejects_duplicate_author(self):
        with pytest.raises(DatasetError, match="duplicate author"):
            rec("a", authors=["ann", "ann"])

    def test_rejects_empty_ids(self):
        with pytest.raises(DatasetError):
            rec("")
        with pytest.raises(DatasetError):
            rec("a", cites=[""])
        with pytest.raises(DatasetError):
            rec("a", authors=[""])

    def test_tags_lowercased(self):
        assert rec("a", tags={"Graphene"}).tags == frozenset({"graphene"})


class TestBuildGraph:
    def test_empty_input(self):
        graph = build_graph([])
        assert len(graph) == 0
        assert graph.edge_count == 0
        assert graph.author_count == 0

    def test_single_edge_transpose(self):
        graph = build_graph([rec("A", cites=["B"]), rec("B")])
        assert graph.cited_by["B"] == frozenset({"A"})
        assert graph.cited_by["A"] == frozenset()

    def test_dangling_citation_becomes_stub(self):
        graph = build_graph([rec("A", cites=["X"])])
        assert "X" in graph
        stub = graph.papers["X"]
        assert stub.author_ids == () and stub.cites == () and stub.tags == frozenset()
        assert graph.cited_by["X"] == frozenset({"A"})

    def test_duplicate_paper_id_raises(self):
        with pytest.raises(DatasetError, match="duplicate paper_id 'A'"):
            build_graph([rec("A"), rec("A")])

    def test_mappings_are_read_only(self):
        graph = build_graph([rec("A")])
        with pytest.raises(TypeError):
            graph.papers["B"] = rec("B")  # type: ignore[index]
        with pytest.raises(TypeError):
            graph.cited_by["A"] = frozenset()  # type: ignore[index]

    @given(record_lists())
    def test_order_insensitive(self, records):
        shuffled = list(reversed(records))
        assert build_graph(records) == build_graph(shuffled)

    @given(record_lists())
    def test_transpose_property(self, records):
        graph = build_graph(records)
        for q, rec_ in graph.papers.items():
            for p in rec_.cites:
                assert q in graph.cited_by[p]
        for p, citers in graph.cited_by.items():
            for q in citers:
                assert p in graph.papers[q].cites

    def test_transpose_exhaustive_at_ten_thousand_edges(self):
        from kindex.synthgen import SynthParams, generate

        records = generate(
            SynthParams(
                paper_count=2000,
                references_per_paper=(0, 10),
                authors_per_paper=(1, 2),
                author_pool_size=100,
                seed=8,
            )
        )
        graph = build_graph(records)
        assert graph.edge_count >= 9000
        edge_set = {(p, t) for p, r in graph.papers.items() for t in r.cites}
        reverse_set = {(q, p) for p, citers in graph.cited_by.items() for q in citers}
        assert edge_set == reverse_set
        assert len(edge_set) == graph.edge_count

    @given(record_lists())
    def test_citation_counts_sum_to_edge_count(self, records):
        graph = build_graph(records)
        total = sum(graph.citation_count(p) for p in graph.papers)
        assert total == graph.edge_count
        assert total == sum(1 for _ in iter_edges(graph))

    @given(record_lists())
    def test_authors_index_matches_records(self, records):
        graph = build_graph(records)
        for author, papers in graph.authors.items():
            assert papers == {
                p for p, r in graph.papers.items() if author in r.author_ids
            }


class TestQueries:
    def test_citation_count_isolated(self):
        graph = build_graph([rec("A")])
        assert graph.citation_count("A") == 0

    def test_citation_count_two_citers(self):
        graph = build_graph([rec("A", cites=["B"]), rec("C", cites=["B"]), rec("B")])
        assert graph.citation_count("B") == 2

    def test_citation_count_of_stub(self):
        graph = build_graph([rec("A", cites=["X"])])
        assert graph.citation_count("X") == 1

    def test_citation_count_unknown_paper(self):
        graph = build_graph([rec("A")])
        with pytest.raises(NotFoundError, match="'Z'"):
            graph.citation_count("Z")

    def test_papers_of_unknown_author(self):
        graph = build_graph([rec("A")])
        assert graph.papers_of("nobody") == frozenset()

    def test_papers_of_two_papers(self):
        graph = build_graph([rec("P1", authors=["ann"]), rec("P2", authors=["ann"])])
        assert graph.papers_of("ann") == frozenset({"P1", "P2"})

    def test_papers_of_position_independent(self):
        graph = build_graph([rec("P3", authors=["bob", "ann", "cho"])])
        assert "P3" in graph.papers_of("ann")


class TestArrays:
    @given(record_lists())
    @settings(max_examples=50)
    def test_arrays_round_trip(self, records):
        graph = build_graph(records)
        arrays = graph.arrays()
        assert list(arrays.paper_ids) == sorted(graph.papers)
        assert list(arrays.author_ids) == sorted(graph.authors)
        for i, pid in enumerate(arrays.paper_ids):
            assert arrays.in_degree[i] == graph.citation_count(pid)
            lo, hi = arrays.cited_by_indptr[i], arrays.cited_by_indptr[i + 1]
            citers = {arrays.paper_ids[j] for j in arrays.cited_by[lo:hi]}
            assert citers == graph.cited_by[pid]
        for j, author in enumerate(arrays.author_ids):
            lo, hi = arrays.author_papers_indptr[j], arrays.author_papers_indptr[j + 1]
            papers = {arrays.paper_ids[p] for p in arrays.author_papers[lo:hi]}
            assert papers == graph.papers_of(author)
