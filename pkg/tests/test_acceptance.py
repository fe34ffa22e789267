"""Acceptance suite: one test per release criterion.

Each test pins its tolerance inline; a summary table is printed at the
end of the pytest run (see conftest). These run on whichever kernel
backend is active.
"""

from __future__ import annotations

import csv
import io
import json
import random
import resource
import time
from dataclasses import replace
from types import SimpleNamespace

import pytest

from kindex.cli import main as cli_main
from kindex.data import (
    HCR2019_CANDIDATES,
    HCR2019_TOP12,
    HCR2019_TOP12_NONGRAPHENE,
    NOBEL2019_LAUREATES,
    fixture_path,
)
from kindex.graph import CitationCountProfile, build_graph
from kindex.indices import all_index_reports, crossing_index
from kindex.ingest import DatasetManifest, parse_corpus, parse_fixture, save_corpus
from kindex.ranking import (
    cohort_stats,
    filter_tags,
    ordinal_rank,
    rank_by,
    shortlist,
)
from kindex.synthgen import SynthParams, generate


def brute_force_crossing(counts) -> int:
    ranked = sorted(counts, reverse=True)
    best = 0
    for r in range(1, len(ranked) + 1):
        if ranked[r - 1] >= r:
            best = max(best, r)
    return best


def test_criterion_01_crossing_point_matches_brute_force_oracle():
    rng = random.Random(20240601)
    cases = []
    for _ in range(10_000):
        size = rng.randint(0, 500)
        counts = [rng.randint(0, 10_000) for _ in range(size)]
        cases.append(
            (CitationCountProfile.from_counts(counts), brute_force_crossing(counts))
        )

    elapsed = 0.0
    for profile, expected in cases:
        start = time.perf_counter()
        got = crossing_index(profile)
        elapsed += time.perf_counter() - start
        assert got == expected
    assert elapsed < 2.0, f"10,000 crossing computations took {elapsed:.2f}s"


def test_criterion_02_top12_fixture_ranking_reproduced_exactly():
    rows = parse_fixture(fixture_path(HCR2019_TOP12))
    ranking = rank_by(rows, "k")
    expected = [
        ("alivisatos", 617, 149),
        ("graetzel", 611, 204),
        ("morozov", 559, 38),
        ("xia", 542, 190),
        ("kim", 519, 84),
        ("wang", 515, 195),
        ("cui", 495, 124),
        ("katsnelson", 489, 89),
        ("yang", 471, 118),
        ("avouris", 465, 122),
        ("zettl", 460, 104),
        ("hone", 440, 72),
    ]
    assert [(e.author_id, e.k, e.h) for e in ranking.entries] == expected


def test_criterion_03_filtered_ranking_matches_published_order_with_peebles_11th():
    candidates = parse_fixture(fixture_path(HCR2019_CANDIDATES))
    survivors = filter_tags(candidates, {"graphene"})
    top12 = shortlist(rank_by(survivors, "k"), 12)
    published = parse_fixture(fixture_path(HCR2019_TOP12_NONGRAPHENE))
    assert [(e.author_id, e.k, e.h) for e in top12.entries] == [
        (r.author_id, r.k, r.h) for r in published
    ]
    assert ordinal_rank(survivors, "peebles", "k") == 11


def test_criterion_04_coefficient_of_variation_checks():
    # Two-point cohorts realize the target moments exactly:
    # mean_k 287, std_k 104 and mean_h 71, std_h 33.
    def metrics(k, h):
        return SimpleNamespace(author_id=f"m{k}{h}", k=k, h=h, tags=frozenset())

    stats = cohort_stats([metrics(287 - 104, 71 - 33), metrics(287 + 104, 71 + 33)])
    assert stats.mean_k == 287 and stats.std_k == 104
    assert stats.mean_h == 71 and stats.std_h == 33
    assert abs(stats.cv_k - 0.36) <= 0.005
    assert abs(stats.cv_h - 0.46) <= 0.005


def test_criterion_05_shortlist_fraction_of_cohort():
    cohort = [
        SimpleNamespace(author_id=f"au{i:03d}", k=2000 - i, h=i % 90, tags=frozenset())
        for i in range(136)
    ]
    top = shortlist(rank_by(cohort, "k"), 12)
    assert len(top) == 12
    assert abs(top.fraction_of_cohort - 0.088) <= 0.001


def test_criterion_06_laureate_rank_inversion_between_keys():
    cohort = parse_fixture(fixture_path(HCR2019_TOP12)) + parse_fixture(
        fixture_path(NOBEL2019_LAUREATES)
    )
    k_ranks = {a: ordinal_rank(cohort, a, "k") for a in ("peebles", "mayor", "queloz")}
    h_ranks = {a: ordinal_rank(cohort, a, "h") for a in ("peebles", "mayor", "queloz")}
    assert k_ranks["peebles"] < k_ranks["mayor"] < k_ranks["queloz"]
    assert h_ranks["queloz"] < h_ranks["peebles"] < h_ranks["mayor"]


def test_criterion_07_edge_additions_are_monotone_and_exclusion_never_raises_k():
    meta = random.Random(777)
    tested = 0
    for trial in range(1000):
        params = SynthParams(
            paper_count=meta.randint(2, 200),
            references_per_paper=(0, meta.randint(1, 5)),
            authors_per_paper=(1, 3),
            author_pool_size=meta.randint(2, 25),
            preferential_exponent=meta.choice([0.0, 1.0, 1.5]),
            seed=meta.getrandbits(60),
        )
        records = generate(params)
        paper_ids = [r.paper_id for r in records]

        edge = None
        for _ in range(30):
            src = meta.randrange(len(records))
            dst = meta.choice(paper_ids)
            if dst != records[src].paper_id and dst not in records[src].cites:
                edge = (src, dst)
                break
        if edge is None:
            continue

        before = {r.author_id: r for r in all_index_reports(build_graph(records))}
        src, dst = edge
        grown = list(records)
        grown[src] = replace(records[src], cites=records[src].cites + (dst,))
        after = {r.author_id: r for r in all_index_reports(build_graph(grown))}

        for author, report in before.items():
            assert after[author].k >= report.k, (params.seed, author)
            assert after[author].h >= report.h, (params.seed, author)
        for report in list(before.values()) + list(after.values()):
            assert report.k_no_self <= report.k, (params.seed, report.author_id)
        tested += 1
    assert tested >= 900, f"only {tested} corpora had a free edge slot"


def test_criterion_08_cli_pipeline_matches_in_memory_computation(
    tmp_path, capsys
):
    for seed in (1, 2, 3):
        corpus = tmp_path / f"synth{seed}.jsonl"
        save_corpus(
            generate(
                SynthParams(
                    paper_count=300,
                    references_per_paper=(0, 6),
                    authors_per_paper=(1, 3),
                    author_pool_size=25,
                    seed=seed,
                )
            ),
            corpus,
        )

        assert cli_main(["index", str(corpus), "--format", "csv"]) == 0
        index_out = capsys.readouterr().out
        index_rows = [
            SimpleNamespace(
                author_id=row["author_id"], k=int(row["k"]), h=int(row["h"])
            )
            for row in csv.DictReader(io.StringIO(index_out))
        ]

        assert cli_main(["stats", str(corpus), "--format", "jsonl"]) == 0
        stats_row = json.loads(capsys.readouterr().out)

        direct = cohort_stats(
            all_index_reports(build_graph(parse_corpus(DatasetManifest(corpus))))
        )
        via_index_cmd = cohort_stats(index_rows)

        for name in ("mean_k", "std_k", "cv_k", "mean_h", "std_h", "cv_h"):
            assert stats_row[name] == getattr(direct, name)
            assert getattr(via_index_cmd, name) == getattr(direct, name)
        assert stats_row["cohort_size"] == direct.cohort_size == via_index_cmd.cohort_size


def test_criterion_09_hundred_thousand_paper_corpus_under_budget():
    params = SynthParams(
        paper_count=100_000,
        references_per_paper=(5, 15),
        authors_per_paper=(1, 3),
        author_pool_size=10_000,
        seed=42,
    )
    start = time.perf_counter()
    records = generate(params)
    graph = build_graph(records)
    reports = all_index_reports(graph)
    elapsed = time.perf_counter() - start

    assert graph.paper_count == 100_000
    assert 900_000 <= graph.edge_count <= 1_100_000
    assert len(reports) == 10_000
    assert elapsed < 30.0, f"generate+build+reports took {elapsed:.1f}s"

    peak_bytes = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    assert peak_bytes < 2 * 1024**3, f"peak rss {peak_bytes / 1024**2:.0f} MiB"
