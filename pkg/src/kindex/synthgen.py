"""Deterministic synthetic citation corpora for tests and benchmarks.

Papers are created in index order and cite only earlier papers, so the
corpus is a DAG by construction. Reference targets are drawn by
preferential attachment with plus-one smoothing: the probability of
citing paper p is proportional to ``(in_degree(p) + 1) ** exponent``
(0 = uniform attachment). Authors come from a fixed pool so that h and K
have non-trivial values. Identical params give byte-identical corpora,
whichever kernel backend is active.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from kindex import _kernels
from kindex._kernels.pykernels import _splitmix64
from kindex.errors import ContractViolationError
from kindex.graph import PaperRecord


@dataclass(frozen=True)
class SynthParams:
    """Knobs of the generator; validated at construction.

    ``author_pool_size`` defaults to roughly one author per ten papers,
    which yields multi-paper authors at any corpus size.
    """

    paper_count: int
    authors_per_paper: tuple[int, int] = (1, 3)
    references_per_paper: tuple[int, int] = (5, 15)
    preferential_exponent: float = 1.0
    tag_pool: tuple[tuple[str, float], ...] = ()
    seed: int = 0
    author_pool_size: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "authors_per_paper", tuple(self.authors_per_paper))
        object.__setattr__(
            self, "references_per_paper", tuple(self.references_per_paper)
        )
        object.__setattr__(
            self, "tag_pool", tuple((t, float(p)) for t, p in self.tag_pool)
        )
        if self.paper_count < 1:
            raise ContractViolationError("paper_count must be at least 1")
        for name, (lo, hi) in (
            ("authors_per_paper", self.authors_per_paper),
            ("references_per_paper", self.references_per_paper),
        ):
            if lo < 0 or hi < lo:
                raise ContractViolationError(f"{name} range {lo}..{hi} is invalid")
        if self.preferential_exponent < 0:
            raise ContractViolationError("preferential_exponent must be non-negative")
        for tag, prob in self.tag_pool:
            if not tag:
                raise ContractViolationError("tags must be non-empty strings")
            if not 0.0 <= prob <= 1.0:
                raise ContractViolationError(f"tag probability {prob} not in [0, 1]")
        if self.author_pool_size is not None and self.author_pool_size < 1:
            raise ContractViolationError("author_pool_size must be at least 1")

    @property
    def effective_author_pool(self) -> int:
        if self.author_pool_size is not None:
            return self.author_pool_size
        return max(1, self.paper_count // 10)


def generate(params: SynthParams) -> list[PaperRecord]:
    """Produce ``params.paper_count`` records, deterministic in ``params.seed``.

    The reference structure comes from the sampling kernel; author lists
    and tags are drawn from a separately seeded stream so the corpus is
    identical under either backend. When a paper's reference range
    exceeds the number of earlier papers it is clamped, not an error.
    """
    ref_lo, ref_hi = params.references_per_paper
    cites_seed, meta_seed = _derive_seeds(params.seed)
    indptr, targets = _kernels.sample_citation_structure(
        params.paper_count, ref_lo, ref_hi, params.preferential_exponent, cites_seed
    )
    indptr = indptr.tolist()
    targets = targets.tolist()

    meta_rng = random.Random(meta_seed)
    pool_size = params.effective_author_pool
    pool = [f"a{i:06d}" for i in range(pool_size)]
    a_lo, a_hi = params.authors_per_paper

    records = []
    for i in range(params.paper_count):
        n_authors = min(meta_rng.randint(a_lo, a_hi), pool_size)
        authors = tuple(meta_rng.sample(pool, n_authors))
        tags = frozenset(
            tag for tag, prob in params.tag_pool if meta_rng.random() < prob
        )
        records.append(
            PaperRecord(
                paper_id=f"p{i:07d}",
                author_ids=authors,
                cites=tuple(f"p{t:07d}" for t in targets[indptr[i] : indptr[i + 1]]),
                tags=tags,
            )
        )
    return records


def _derive_seeds(seed: int) -> tuple[int, int]:
    # Decorrelate the two streams; both derive from the single user seed.
    state, cites_seed = _splitmix64(seed)
    _, meta_seed = _splitmix64(state)
    return cites_seed, meta_seed
