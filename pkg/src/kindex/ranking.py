"""Cohort ranking, tag filtering, shortlists, and summary statistics.

Every operation here is duck-typed over "author metrics" objects: anything
with ``author_id``, ``k``, ``h`` and ``tags`` attributes qualifies, which
lets computed :class:`~kindex.indices.IndexReport` cohorts and fixture
rows loaded by :mod:`kindex.ingest` flow through the same pipeline. An
optional ``display_name`` attribute is carried into ranking entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import fmean, pstdev
from typing import Iterable, Protocol, Sequence

from kindex.errors import (
    ContractViolationError,
    EmptyCohortError,
    NotFoundError,
    StatsError,
)

RANK_KEYS = ("k", "h")


class AuthorMetrics(Protocol):
    author_id: str
    k: int
    h: int
    tags: frozenset[str]


@dataclass(frozen=True)
class RankingEntry:
    """One row of a ranking: dense 1-based rank plus the ranked values."""

    rank: int
    author_id: str
    display_name: str | None
    k: int
    h: int

    @property
    def name(self) -> str:
        return self.display_name or self.author_id


@dataclass(frozen=True)
class Ranking:
    """An ordered cohort slice under one key.

    ``cohort_size`` is the size of the cohort the ranking was computed
    over; a shortlist keeps it, so ``fraction_of_cohort`` reports how
    selective the cut is.
    """

    entries: tuple[RankingEntry, ...]
    key: str
    cohort_size: int

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def fraction_of_cohort(self) -> float:
        return len(self.entries) / self.cohort_size


@dataclass(frozen=True)
class ScatterPoint:
    """One exported scatter row; ``group`` is 'cohort' or 'highlight'."""

    author_id: str
    h: int
    k: int
    group: str


@dataclass(frozen=True)
class CohortStats:
    """Mean, population standard deviation, and coefficient of variation.

    Full precision is kept here; rounding is a display concern.
    """

    mean_k: float
    std_k: float
    mean_h: float
    std_h: float
    cv_k: float
    cv_h: float
    cohort_size: int


def rank_by(reports: Iterable[AuthorMetrics], key: str) -> Ranking:
    """Sort a cohort by ``key`` ('k' or 'h') descending into dense ranks 1..n.

    Ties break by the other index descending, then author_id ascending,
    so the order is a deterministic total order: permuting the input
    never changes the result.
    """
    key = _check_key(key)
    rows = list(reports)
    if not rows:
        raise EmptyCohortError("cannot rank an empty cohort")
    other = "h" if key == "k" else "k"
    rows.sort(key=lambda r: (-getattr(r, key), -getattr(r, other), r.author_id))
    entries = tuple(
        RankingEntry(
            rank=i + 1,
            author_id=r.author_id,
            display_name=getattr(r, "display_name", None),
            k=r.k,
            h=r.h,
        )
        for i, r in enumerate(rows)
    )
    return Ranking(entries=entries, key=key, cohort_size=len(entries))


def filter_tags(
    reports: Iterable[AuthorMetrics], excluded: Iterable[str]
) -> list[AuthorMetrics]:
    """Drop every report whose tags intersect ``excluded``; order preserved."""
    excluded_set = {t.lower() for t in excluded}
    return [r for r in reports if excluded_set.isdisjoint(r.tags)]


def shortlist(ranking: Ranking, n: int) -> Ranking:
    """First ``min(n, len)`` entries with ranks and cohort size preserved."""
    if n < 1:
        raise ContractViolationError("shortlist size must be at least 1")
    return Ranking(
        entries=ranking.entries[:n], key=ranking.key, cohort_size=ranking.cohort_size
    )


def ordinal_rank(reports: Sequence[AuthorMetrics], author: str, key: str) -> int:
    """The author's 1-based position when the cohort is ranked by ``key``."""
    ranking = rank_by(reports, key)
    for entry in ranking.entries:
        if entry.author_id == author:
            return entry.rank
    raise NotFoundError(f"author {author!r} is not in the cohort")


def cohort_stats(reports: Iterable[AuthorMetrics]) -> CohortStats:
    """Population mean/std and CV = std/mean for both indices.

    Raises:
        StatsError: for an empty cohort, or when either mean is zero
            (the CV would be undefined).
    """
    rows = list(reports)
    if not rows:
        raise StatsError("cohort is empty")
    ks = [r.k for r in rows]
    hs = [r.h for r in rows]
    mean_k = fmean(ks)
    mean_h = fmean(hs)
    if mean_k == 0 or mean_h == 0:
        raise StatsError("coefficient of variation is undefined for a zero mean")
    std_k = pstdev(ks)
    std_h = pstdev(hs)
    return CohortStats(
        mean_k=mean_k,
        std_k=std_k,
        mean_h=mean_h,
        std_h=std_h,
        cv_k=std_k / mean_k,
        cv_h=std_h / mean_h,
        cohort_size=len(rows),
    )


def scatter_export(
    reports: Iterable[AuthorMetrics], highlight: Iterable[str] = ()
) -> tuple[ScatterPoint, ...]:
    """One (author_id, h, k, group) row per author, ordered by author_id.

    Authors named in ``highlight`` get group='highlight'; everyone else
    'cohort'. Rows plot directly as an h (horizontal) vs K (vertical)
    scatter with the highlight group drawn as its own series.
    """
    highlight_set = set(highlight)
    points = [
        ScatterPoint(
            author_id=r.author_id,
            h=r.h,
            k=r.k,
            group="highlight" if r.author_id in highlight_set else "cohort",
        )
        for r in reports
    ]
    points.sort(key=lambda p: p.author_id)
    return tuple(points)


SCATTER_HEADER = ("author_id", "h", "k", "group")


def scatter_csv_lines(points: Iterable[ScatterPoint]) -> list[str]:
    """Delimiter-separated scatter rows, header first."""
    lines = [",".join(SCATTER_HEADER)]
    lines.extend(f"{p.author_id},{p.h},{p.k},{p.group}" for p in points)
    return lines


def scatter_svg(
    points: Sequence[ScatterPoint], width: int = 640, height: int = 480
) -> str:
    """Minimal vector rendering of the scatter rows.

    h runs left to right, K bottom to top; cohort points are blue
    circles, highlighted points red squares. Deterministic output for
    deterministic input.
    """
    margin = 48.0
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin
    h_max = max((p.h for p in points), default=1) or 1
    k_max = max((p.k for p in points), default=1) or 1

    def x_of(h: int) -> float:
        return margin + plot_w * h / h_max

    def y_of(k: int) -> float:
        return height - margin - plot_h * k / k_max

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle">h</text>',
        f'<text x="14" y="{height / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {height / 2:.1f})">K</text>',
        f'<text x="{width - margin}" y="{height - margin + 16:.1f}" '
        f'text-anchor="middle" font-size="10">{h_max}</text>',
        f'<text x="{margin - 6}" y="{margin:.1f}" text-anchor="end" '
        f'font-size="10">{k_max}</text>',
    ]
    for p in points:
        x, y = x_of(p.h), y_of(p.k)
        if p.group == "highlight":
            parts.append(
                f'<rect x="{x - 4:.2f}" y="{y - 4:.2f}" width="8" height="8" '
                f'fill="red"><title>{p.author_id}</title></rect>'
            )
        else:
            parts.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="none" '
                f'stroke="blue"><title>{p.author_id}</title></circle>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def round_for_display(value: float, digits: int = 2) -> float:
    """Round a statistic for human-readable output (machine formats keep full precision)."""
    if math.isnan(value):
        return value
    return round(value, digits)


def _check_key(key: str) -> str:
    normalized = key.lower()
    if normalized not in RANK_KEYS:
        raise ContractViolationError(f"ranking key must be one of {RANK_KEYS}, got {key!r}")
    return normalized
