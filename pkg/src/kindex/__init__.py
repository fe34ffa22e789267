"""Citation-network analytics toolkit.

Computes crossing-point centrality indices for authors of a citation
corpus - h over an author's own papers, K over the articles citing them -
and turns cohorts of such reports into rankings, tag-filtered shortlists,
and summary statistics. Includes corpus ingestion/validation, a
deterministic synthetic-corpus generator, and a CLI.

The hot kernels run on a compiled extension when available and fall back
to pure Python otherwise; see :func:`kernel_backend`.
"""

from kindex._kernels import backend_name as kernel_backend
from kindex.graph import (
    CitationCountProfile,
    CitationGraph,
    GraphArrays,
    PaperRecord,
    build_graph,
    iter_edges,
)
from kindex.indices import (
    IndexReport,
    all_index_reports,
    citing_articles,
    crossing_index,
    h_index,
    index_report,
    k_index,
)
from kindex.ingest import (
    AuthorFixtureRow,
    DatasetManifest,
    ValidationReport,
    parse_corpus,
    parse_fixture,
    save_corpus,
    validate_dataset,
    write_corpus,
)
from kindex.ranking import (
    CohortStats,
    Ranking,
    RankingEntry,
    ScatterPoint,
    cohort_stats,
    filter_tags,
    ordinal_rank,
    rank_by,
    scatter_export,
    scatter_svg,
    shortlist,
)
from kindex.synthgen import SynthParams, generate

__version__ = "0.1.0"

__all__ = [
    "AuthorFixtureRow",
    "CitationCountProfile",
    "CitationGraph",
    "CohortStats",
    "DatasetManifest",
    "GraphArrays",
    "IndexReport",
    "PaperRecord",
    "Ranking",
    "RankingEntry",
    "ScatterPoint",
    "SynthParams",
    "ValidationReport",
    "all_index_reports",
    "build_graph",
    "citing_articles",
    "cohort_stats",
    "crossing_index",
    "filter_tags",
    "generate",
    "h_index",
    "index_report",
    "iter_edges",
    "k_index",
    "kernel_backend",
    "ordinal_rank",
    "parse_corpus",
    "parse_fixture",
    "rank_by",
    "save_corpus",
    "scatter_export",
    "scatter_svg",
    "shortlist",
    "validate_dataset",
    "write_corpus",
]
