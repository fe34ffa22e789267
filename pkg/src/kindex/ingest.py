"""Dataset parsing, validation, and serialization.

Two corpus formats are supported, both UTF-8:

* ``records-jsonl`` - one self-contained JSON object per line with keys
  ``id``, ``title``, ``year``, ``authors``, ``cites``, ``tags`` (only
  ``id`` is required). Streams with O(1) memory per record.
* ``papers+edges-csv`` - a papers table (``id,title,year,authors,tags``
  with authors and tags ";"-joined) plus an edges table
  (``citing_id,cited_id``).

Author-index fixtures are CSV with header
``author_id,display_name,k,h,tags`` (tags ";"-joined); they let the
ranking pipeline run on published (K, h) pairs when the underlying
citation data is not available.

All ids are trimmed of surrounding whitespace here, at parse time only.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, TextIO

from kindex.errors import DatasetError, ParseError
from kindex.graph import PaperRecord

CORPUS_FORMATS = ("records-jsonl", "papers+edges-csv")
FIXTURE_HEADER = ("author_id", "display_name", "k", "h", "tags")


@dataclass(frozen=True)
class DatasetManifest:
    """What to load and how to interpret it.

    ``edges_path`` is required for the papers+edges-csv format and
    ignored otherwise. ``declared_count``, when given, is checked against
    the actual record count during validation.
    """

    papers_path: Path
    format: str = "records-jsonl"
    edges_path: Path | None = None
    fixture_path: Path | None = None
    declared_count: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "papers_path", Path(self.papers_path))
        if self.edges_path is not None:
            object.__setattr__(self, "edges_path", Path(self.edges_path))
        if self.fixture_path is not None:
            object.__setattr__(self, "fixture_path", Path(self.fixture_path))
        if self.format not in CORPUS_FORMATS:
            raise DatasetError(
                f"unknown corpus format {self.format!r}; expected one of {CORPUS_FORMATS}"
            )
        if self.format == "papers+edges-csv" and self.edges_path is None:
            raise DatasetError("papers+edges-csv requires an edges_path")


@dataclass(frozen=True)
class AuthorFixtureRow:
    """Pre-computed per-author indices, e.g. transcribed from a published table."""

    author_id: str
    display_name: str
    k: int
    h: int
    tags: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Violation:
    severity: str  # "fatal" or "warning"
    message: str


@dataclass
class ValidationReport:
    """Everything wrong (or worth knowing) about a dataset, in one pass."""

    records: int = 0
    edges: int = 0
    dangling_citations: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def fatal_count(self) -> int:
        return sum(1 for v in self.violations if v.severity == "fatal")

    @property
    def warning_count(self) -> int:
        return sum(1 for v in self.violations if v.severity == "warning")

    @property
    def exit_code(self) -> int:
        """0 = clean, 1 = warnings only, 2 = fatal violations."""
        if self.fatal_count:
            return 2
        if self.warning_count:
            return 1
        return 0

    def summary_lines(self) -> list[str]:
        lines = [f"{v.severity}: {v.message}" for v in self.violations]
        lines.append(
            f"checked {self.records} records, {self.edges} citation edges, "
            f"{self.dangling_citations} dangling citations"
        )
        lines.append(
            f"result: {self.fatal_count} fatal, {self.warning_count} warnings"
        )
        return lines


def parse_corpus(manifest: DatasetManifest) -> Iterator[PaperRecord]:
    """Stream paper records from the manifest's corpus files.

    Raises :class:`ParseError` on a malformed line and
    :class:`DatasetError` on a record-level invariant violation, both
    with ``path:line`` locations. Use :func:`validate_dataset` to collect
    all problems instead of stopping at the first.
    """

    def _raise(err: DatasetError) -> None:
        raise err

    return _scan_corpus(manifest, _raise)


def validate_dataset(manifest: DatasetManifest) -> ValidationReport:
    """Check a dataset without building a graph.

    Collects per-record violations (fatal), duplicate paper ids (fatal),
    the dangling-citation count and any declared-count mismatch
    (warnings). Dangling citations are expected on partial corpora; they
    become stub papers at build time.
    """
    report = ValidationReport()

    def _collect(err: DatasetError) -> None:
        report.violations.append(Violation("fatal", str(err)))

    seen: set[str] = set()
    cited: set[str] = set()
    for record in _scan_corpus(manifest, _collect):
        report.records += 1
        report.edges += len(record.cites)
        if record.paper_id in seen:
            report.violations.append(
                Violation("fatal", f"duplicate paper_id {record.paper_id!r}")
            )
        seen.add(record.paper_id)
        cited.update(record.cites)

    report.dangling_citations = len(cited - seen)
    if report.dangling_citations:
        report.violations.append(
            Violation(
                "warning",
                f"{report.dangling_citations} cited ids have no record "
                "(they will become stub papers)",
            )
        )
    if manifest.declared_count is not None and manifest.declared_count != report.records:
        report.violations.append(
            Violation(
                "warning",
                f"declared_count is {manifest.declared_count} "
                f"but found {report.records} records",
            )
        )
    if manifest.fixture_path is not None:
        try:
            parse_fixture(manifest.fixture_path)
        except DatasetError as err:
            report.violations.append(Violation("fatal", str(err)))
    return report


def parse_fixture(path: Path | str) -> list[AuthorFixtureRow]:
    """Load an author-index fixture CSV.

    The canonical header is ``author_id,display_name,k,h,tags``;
    ``display_name`` and ``tags`` may be omitted and extra columns are
    ignored, so per-author output of the ``index`` CLI command loads
    directly as a fixture.
    """
    path = Path(path)
    rows: list[AuthorFixtureRow] = []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header_row = next(reader, None)
        if header_row is None:
            return rows
        header = [h.strip() for h in header_row]
        missing = {"author_id", "k", "h"} - set(header)
        if missing:
            raise ParseError(
                f"{path}:1: fixture header lacks {sorted(missing)}; "
                f"canonical header is {','.join(FIXTURE_HEADER)}"
            )
        column = {name: header.index(name) for name in header}
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise ParseError(f"{path}:{lineno}: expected {len(header)} fields")

            def cell(name: str, default: str = "") -> str:
                return row[column[name]] if name in column else default

            try:
                k = int(cell("k"))
                h = int(cell("h"))
            except ValueError:
                raise ParseError(f"{path}:{lineno}: k and h must be integers") from None
            if k < 0 or h < 0:
                raise DatasetError(f"{path}:{lineno}: negative index value")
            author_id = cell("author_id").strip()
            rows.append(
                AuthorFixtureRow(
                    author_id=author_id,
                    display_name=cell("display_name").strip() or author_id,
                    k=k,
                    h=h,
                    tags=_split_tags(cell("tags")),
                )
            )
    return rows


def record_to_json(record: PaperRecord) -> str:
    """Canonical one-line JSON for a record (stable key order, sorted tags)."""
    obj: dict[str, object] = {"id": record.paper_id}
    if record.title is not None:
        obj["title"] = record.title
    if record.year is not None:
        obj["year"] = record.year
    obj["authors"] = list(record.author_ids)
    obj["cites"] = list(record.cites)
    obj["tags"] = sorted(record.tags)
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_corpus(records: Iterable[PaperRecord], out: TextIO) -> int:
    """Serialize records to the records-jsonl format; returns the record count."""
    count = 0
    for record in records:
        out.write(record_to_json(record))
        out.write("\n")
        count += 1
    return count


def save_corpus(records: Iterable[PaperRecord], path: Path | str) -> int:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        return write_corpus(records, handle)


# ----------------------------------------------------------------------
# Internals
# ----------------------------------------------------------------------

ErrorSink = Callable[[DatasetError], None]


def _scan_corpus(manifest: DatasetManifest, on_error: ErrorSink) -> Iterator[PaperRecord]:
    if manifest.format == "records-jsonl":
        yield from _scan_jsonl(manifest.papers_path, on_error)
    else:
        assert manifest.edges_path is not None
        yield from _scan_papers_csv(manifest.papers_path, manifest.edges_path, on_error)


def _scan_jsonl(path: Path, on_error: ErrorSink) -> Iterator[PaperRecord]:
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as err:
                on_error(ParseError(f"{where}: invalid JSON ({err.msg})"))
                continue
            try:
                yield _record_from_obj(obj, where)
            except DatasetError as err:
                on_error(err)


def _record_from_obj(obj: object, where: str) -> PaperRecord:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: record must be a JSON object")
    paper_id = obj.get("id")
    if not isinstance(paper_id, str) or not paper_id.strip():
        raise ParseError(f"{where}: missing or empty 'id'")
    title = obj.get("title")
    if title is not None and not isinstance(title, str):
        raise ParseError(f"{where}: 'title' must be a string")
    year = obj.get("year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise ParseError(f"{where}: 'year' must be an integer")
    authors = _string_list(obj.get("authors", []), "authors", where)
    cites = _string_list(obj.get("cites", []), "cites", where)
    tags = _string_list(obj.get("tags", []), "tags", where)
    try:
        return PaperRecord(
            paper_id=paper_id.strip(),
            title=title,
            year=year,
            author_ids=tuple(a.strip() for a in authors),
            cites=tuple(c.strip() for c in cites),
            tags=frozenset(t.strip().lower() for t in tags if t.strip()),
        )
    except DatasetError as err:
        raise DatasetError(f"{where}: {err}") from None


def _string_list(value: object, name: str, where: str) -> list[str]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ParseError(f"{where}: {name!r} must be a list of strings")
    return value


def _scan_papers_csv(
    papers_path: Path, edges_path: Path, on_error: ErrorSink
) -> Iterator[PaperRecord]:
    cites_of: dict[str, list[str]] = {}
    edge_seen: set[tuple[str, str]] = set()
    with open(edges_path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["citing_id", "cited_id"]:
            on_error(ParseError(f"{edges_path}:1: edges header must be citing_id,cited_id"))
            return
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            where = f"{edges_path}:{lineno}"
            if len(row) != 2:
                on_error(ParseError(f"{where}: expected 2 fields"))
                continue
            citing, cited = row[0].strip(), row[1].strip()
            if not citing or not cited:
                on_error(ParseError(f"{where}: empty id"))
                continue
            if citing == cited:
                on_error(DatasetError(f"{where}: paper {citing!r} cites itself"))
                continue
            if (citing, cited) in edge_seen:
                on_error(DatasetError(f"{where}: duplicate edge {citing!r} -> {cited!r}"))
                continue
            edge_seen.add((citing, cited))
            cites_of.setdefault(citing, []).append(cited)

    declared: set[str] = set()
    with open(papers_path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        expected = ["id", "title", "year", "authors", "tags"]
        if header is None or [h.strip() for h in header] != expected:
            on_error(
                ParseError(f"{papers_path}:1: papers header must be {','.join(expected)}")
            )
            return
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            where = f"{papers_path}:{lineno}"
            if len(row) != len(expected):
                on_error(ParseError(f"{where}: expected {len(expected)} fields"))
                continue
            paper_id = row[0].strip()
            if not paper_id:
                on_error(ParseError(f"{where}: missing or empty 'id'"))
                continue
            year: int | None = None
            if row[2].strip():
                try:
                    year = int(row[2])
                except ValueError:
                    on_error(ParseError(f"{where}: 'year' must be an integer"))
                    continue
            declared.add(paper_id)
            try:
                yield PaperRecord(
                    paper_id=paper_id,
                    title=row[1].strip() or None,
                    year=year,
                    author_ids=tuple(_split_field(row[3])),
                    cites=tuple(cites_of.get(paper_id, [])),
                    tags=_split_tags(row[4]),
                )
            except DatasetError as err:
                on_error(DatasetError(f"{where}: {err}"))

    for citing in cites_of:
        if citing not in declared:
            on_error(
                DatasetError(
                    f"{edges_path}: edges reference unknown citing paper {citing!r}"
                )
            )


def _split_field(joined: str) -> list[str]:
    return [part.strip() for part in joined.split(";") if part.strip()]


def _split_tags(joined: str) -> frozenset[str]:
    return frozenset(part.strip().lower() for part in joined.split(";") if part.strip())


def corpus_to_string(records: Iterable[PaperRecord]) -> str:
    """Records-jsonl serialization as a string (handy for tests and hashing)."""
    buffer = io.StringIO()
    write_corpus(records, buffer)
    return buffer.getvalue()
