"""Command-line interface.

Subcommands: validate, index, rank, stats, scatter, generate. Data goes
to stdout (or ``--output``), diagnostics to stderr. Exit codes: 0
success, 1 warnings only (validate), 2 fatal errors. The ``table``
format is for humans; ``csv`` and ``jsonl`` are the stable
machine-readable contract and are byte-identical across repeated runs on
identical inputs.
"""

from __future__ import annotations

import argparse
import os
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence, TextIO

from kindex import __version__
from kindex.errors import ContractViolationError, KindexError
from kindex.graph import CitationGraph, build_graph
from kindex.indices import all_index_reports
from kindex.ingest import (
    DatasetManifest,
    parse_corpus,
    parse_fixture,
    validate_dataset,
    write_corpus,
)
from kindex.ranking import (
    cohort_stats,
    filter_tags,
    rank_by,
    round_for_display,
    scatter_export,
    scatter_svg,
    shortlist,
)
from kindex.synthgen import SynthParams, generate

OUTPUT_FORMATS = ("table", "csv", "jsonl")


@dataclass(frozen=True)
class RunConfig:
    """Validated per-invocation settings, resolved before any I/O."""

    subcommand: str
    corpus_path: Path | None = None
    corpus_format: str | None = None
    edges_path: Path | None = None
    fixture_path: Path | None = None
    exclude_self: bool = False
    exclude_tags: frozenset[str] = frozenset()
    top_n: int = 12
    key: str = "k"
    output_path: Path | None = None
    output_format: str = "table"


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        with _open_output(config.output_path) as out:
            code = args.handler(args, config, out)
        sys.stdout.flush()  # surface a broken pipe here, not at interpreter shutdown
        return code
    except BrokenPipeError:
        # Downstream consumer (head, less, ...) closed the pipe; leave quietly.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    except (KindexError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


# ----------------------------------------------------------------------
# Subcommand handlers
# ----------------------------------------------------------------------


def _cmd_validate(args, config: RunConfig, out: TextIO) -> int:
    report = validate_dataset(_manifest(config, args))
    for line in report.summary_lines():
        out.write(line + "\n")
    return report.exit_code


def _cmd_index(args, config: RunConfig, out: TextIO) -> int:
    graph = _load_graph(config, args)
    rows = []
    for r in all_index_reports(graph):
        rows.append(
            {
                "author_id": r.author_id,
                "k": r.k_no_self if config.exclude_self else r.k,
                "k_no_self": r.k_no_self,
                "h": r.h,
                "citing_articles": r.citing_article_count,
                "papers": r.paper_count,
                "tags": ";".join(sorted(r.tags)),
            }
        )
    _emit(rows, config.output_format, out)
    return 0


def _cmd_rank(args, config: RunConfig, out: TextIO) -> int:
    cohort = _load_cohort(config, args)
    cohort = filter_tags(cohort, config.exclude_tags)
    ranking = shortlist(rank_by(cohort, config.key), config.top_n)
    rows = [
        {
            "rank": e.rank,
            "author_id": e.author_id,
            "name": e.name,
            "k": e.k,
            "h": e.h,
        }
        for e in ranking.entries
    ]
    if config.output_format == "table":
        rows = [{k: v for k, v in row.items() if k != "author_id"} for row in rows]
    _emit(rows, config.output_format, out)
    return 0


def _cmd_stats(args, config: RunConfig, out: TextIO) -> int:
    cohort = filter_tags(_load_cohort(config, args), config.exclude_tags)
    stats = cohort_stats(cohort)
    row = {
        "mean_k": stats.mean_k,
        "std_k": stats.std_k,
        "cv_k": stats.cv_k,
        "mean_h": stats.mean_h,
        "std_h": stats.std_h,
        "cv_h": stats.cv_h,
        "cohort_size": stats.cohort_size,
    }
    if config.output_format == "table":
        row = {
            name: f"{round_for_display(value):.2f}" if isinstance(value, float) else value
            for name, value in row.items()
        }
    _emit([row], config.output_format, out)
    return 0


def _cmd_scatter(args, config: RunConfig, out: TextIO) -> int:
    cohort = list(_load_cohort(config, args))
    highlight = set(args.highlight or ())
    if args.highlight_fixture:
        present = {r.author_id for r in cohort}
        for row in parse_fixture(args.highlight_fixture):
            highlight.add(row.author_id)
            if row.author_id not in present:
                cohort.append(row)
    points = scatter_export(cohort, highlight)
    rows = [
        {"author_id": p.author_id, "h": p.h, "k": p.k, "group": p.group}
        for p in points
    ]
    _emit(rows, config.output_format, out, header_always=True)
    if args.svg:
        Path(args.svg).write_text(scatter_svg(points), encoding="utf-8")
    return 0


def _cmd_generate(args, config: RunConfig, out: TextIO) -> int:
    params = SynthParams(
        paper_count=args.papers,
        authors_per_paper=tuple(args.authors),
        references_per_paper=tuple(args.refs),
        preferential_exponent=args.exponent,
        tag_pool=tuple(_parse_tag_spec(spec) for spec in args.tag or ()),
        seed=args.seed,
        author_pool_size=args.author_pool,
    )
    records = generate(params)
    write_corpus(records, out)
    print(f"generated {len(records)} papers", file=sys.stderr)
    return 0


# ----------------------------------------------------------------------
# Input loading
# ----------------------------------------------------------------------


def _manifest(config: RunConfig, args) -> DatasetManifest:
    if config.corpus_path is None:
        raise ContractViolationError("this command needs a corpus path")
    fmt = config.corpus_format or _detect_format(config.corpus_path)
    return DatasetManifest(
        papers_path=config.corpus_path,
        format=fmt,
        edges_path=config.edges_path,
        fixture_path=config.fixture_path,
        declared_count=getattr(args, "declared_count", None),
    )


def _detect_format(path: Path) -> str:
    return "papers+edges-csv" if path.suffix.lower() == ".csv" else "records-jsonl"


def _load_graph(config: RunConfig, args) -> CitationGraph:
    return build_graph(parse_corpus(_manifest(config, args)))


def _load_cohort(config: RunConfig, args):
    """A rankable cohort: fixture rows, or index reports computed from a corpus."""
    if config.fixture_path is not None and config.corpus_path is not None:
        raise ContractViolationError("give either a corpus or --fixture, not both")
    if config.fixture_path is not None:
        if config.exclude_self:
            raise ContractViolationError(
                "--exclude-self-citations needs a corpus; fixtures carry plain K values"
            )
        return parse_fixture(config.fixture_path)
    reports = all_index_reports(_load_graph(config, args))
    if config.exclude_self:
        reports = [replace(r, k=r.k_no_self) for r in reports]
    return reports


# ----------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------


class _StdoutHandle:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        return False


def _open_output(path: Path | None):
    if path is None:
        return _StdoutHandle()
    return open(path, "w", encoding="utf-8", newline="")


def _emit(
    rows: list[dict], fmt: str, out: TextIO, header_always: bool = False
) -> None:
    if fmt == "jsonl":
        for row in rows:
            out.write(json.dumps(row, ensure_ascii=False) + "\n")
        return
    if fmt == "csv":
        if rows or header_always:
            header = list(rows[0]) if rows else ["author_id", "h", "k", "group"]
            out.write(",".join(header) + "\n")
            for row in rows:
                out.write(",".join(_csv_cell(row[name]) for name in header) + "\n")
        return
    # Aligned, human-readable table.
    if not rows:
        return
    header = list(rows[0])
    cells = [[str(row[name]) for name in header] for row in rows]
    widths = [
        max(len(name), *(len(line[i]) for line in cells))
        for i, name in enumerate(header)
    ]
    out.write("  ".join(name.ljust(widths[i]) for i, name in enumerate(header)) + "\n")
    for line in cells:
        out.write("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)) + "\n")


def _csv_cell(value) -> str:
    text = repr(value) if isinstance(value, float) else str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _parse_tag_spec(spec: str) -> tuple[str, float]:
    tag, sep, prob = spec.partition(":")
    if not sep or not tag:
        raise ContractViolationError(f"tag spec {spec!r} must look like name:probability")
    try:
        return tag.strip().lower(), float(prob)
    except ValueError:
        raise ContractViolationError(f"bad probability in tag spec {spec!r}") from None


def _add_corpus_arg(sub, optional: bool = False) -> None:
    sub.add_argument(
        "corpus",
        nargs="?" if optional else None,
        type=Path,
        help="corpus file (records-jsonl, or papers CSV with --edges)",
    )
    sub.add_argument(
        "--corpus-format",
        choices=("records-jsonl", "papers+edges-csv"),
        help="override format auto-detection (.csv -> papers+edges-csv)",
    )
    sub.add_argument("--edges", type=Path, help="edges CSV for papers+edges-csv corpora")


def _add_output_args(sub) -> None:
    sub.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default="table",
        help="output format (default: table)",
    )
    sub.add_argument("--output", type=Path, help="write data here instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kindex",
        description=(
            "Citation-network analytics: crossing-point indices (K, h), "
            "author rankings, cohort statistics, scatter export, and "
            "synthetic corpora."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("validate", help="check a corpus without building the graph")
    _add_corpus_arg(p)
    p.add_argument("--declared-count", type=int, help="expected number of records")
    p.add_argument("--fixture", type=Path, help="also validate this fixture CSV")
    p.add_argument("--output", type=Path, help="write the report here instead of stdout")
    p.set_defaults(handler=_cmd_validate)

    p = subs.add_parser("index", help="compute per-author index reports from a corpus")
    _add_corpus_arg(p)
    p.add_argument(
        "--exclude-self-citations",
        action="store_true",
        help="report K over the citing set without the author's own papers",
    )
    _add_output_args(p)
    p.set_defaults(handler=_cmd_index)

    p = subs.add_parser("rank", help="rank a cohort and shortlist the top entries")
    _add_corpus_arg(p, optional=True)
    p.add_argument("--fixture", type=Path, help="rank fixture rows instead of a corpus")
    p.add_argument(
        "--exclude-tag",
        action="append",
        default=[],
        metavar="TAG",
        help="drop authors carrying this tag (repeatable)",
    )
    p.add_argument("--top", type=_positive_int, default=12, help="shortlist size (default 12)")
    p.add_argument("--by", choices=("k", "h", "K", "H"), default="k", help="ranking key")
    p.add_argument("--exclude-self-citations", action="store_true")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_rank)

    p = subs.add_parser("stats", help="cohort mean/std and coefficient of variation")
    _add_corpus_arg(p, optional=True)
    p.add_argument("--fixture", type=Path)
    p.add_argument("--exclude-tag", action="append", default=[], metavar="TAG")
    p.add_argument("--exclude-self-citations", action="store_true")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_stats)

    p = subs.add_parser("scatter", help="export (author, h, K, group) scatter rows")
    _add_corpus_arg(p, optional=True)
    p.add_argument("--fixture", type=Path)
    p.add_argument(
        "--highlight",
        action="append",
        default=[],
        metavar="AUTHOR_ID",
        help="mark this author as the highlight group (repeatable)",
    )
    p.add_argument(
        "--highlight-fixture",
        type=Path,
        help="append these fixture rows and highlight them",
    )
    p.add_argument("--svg", type=Path, help="also write a vector rendering here")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_scatter)

    p = subs.add_parser("generate", help="emit a deterministic synthetic corpus")
    p.add_argument("--papers", type=_positive_int, required=True)
    p.add_argument("--refs", type=int, nargs=2, default=[5, 15], metavar=("LO", "HI"))
    p.add_argument("--authors", type=int, nargs=2, default=[1, 3], metavar=("LO", "HI"))
    p.add_argument("--author-pool", type=_positive_int, default=None)
    p.add_argument("--exponent", type=float, default=1.0)
    p.add_argument(
        "--tag",
        action="append",
        default=[],
        metavar="TAG:PROB",
        help="attach TAG to each paper with probability PROB (repeatable)",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", type=Path, help="corpus file (default: stdout)")
    p.set_defaults(handler=_cmd_generate)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    key = getattr(args, "by", "k").lower()
    return RunConfig(
        subcommand=args.subcommand,
        corpus_path=getattr(args, "corpus", None),
        corpus_format=getattr(args, "corpus_format", None),
        edges_path=getattr(args, "edges", None),
        fixture_path=getattr(args, "fixture", None),
        exclude_self=getattr(args, "exclude_self_citations", False),
        exclude_tags=frozenset(getattr(args, "exclude_tag", ())),
        top_n=getattr(args, "top", 12),
        key=key,
        output_path=getattr(args, "output", None),
        output_format=getattr(args, "format", "table"),
    )


if __name__ == "__main__":
    sys.exit(main())
