#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot paths (crossing-point evaluation, bulk per-author
index computation, preferential-attachment corpus sampling) on both
backends over the same inputs, checks they agree, and prints a timing
table.

Usage:
    python benchmarks/bench_kernels.py [--papers 20000] [--seed 42]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from kindex._kernels import pykernels
from kindex.graph import build_graph
from kindex.synthgen import SynthParams, generate

try:
    from kindex._kernels import _ckernels
except ImportError:
    _ckernels = None


def timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return time.perf_counter() - start, result


def bench_crossing(backend, profiles):
    def run(profs):
        total = 0
        for p in profs:
            total += backend.crossing_from_sorted(p)
        return total

    return timed(run, profiles)


def bench_bulk(backend, arrays):
    return timed(
        backend.bulk_author_indices,
        arrays.in_degree,
        arrays.author_papers_indptr,
        arrays.author_papers,
        arrays.cited_by_indptr,
        arrays.cited_by,
        arrays.paper_authors_indptr,
        arrays.paper_authors,
    )


def bench_sampler(backend, papers, seed):
    return timed(backend.sample_citation_structure, papers, 5, 15, 1.0, seed)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--papers", type=int, default=20_000)
    parser.add_argument("--profiles", type=int, default=20_000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    print(f"preparing inputs ({args.papers} papers)...")
    params = SynthParams(
        paper_count=args.papers,
        references_per_paper=(5, 15),
        authors_per_paper=(1, 3),
        author_pool_size=max(1, args.papers // 10),
        seed=args.seed,
    )
    arrays = build_graph(generate(params)).arrays()

    rng = random.Random(args.seed)
    profiles = []
    for _ in range(args.profiles):
        counts = np.array(
            sorted((rng.randint(0, 10_000) for _ in range(rng.randint(0, 400))), reverse=True),
            dtype=np.int64,
        )
        profiles.append(counts)

    rows = []
    for name, runner, inputs in (
        (f"crossing x{args.profiles}", bench_crossing, profiles),
        ("bulk author indices", bench_bulk, arrays),
        (f"sampler ({args.papers} papers)", bench_sampler, None),
    ):
        if runner is bench_sampler:
            pure_t, pure_res = bench_sampler(pykernels, args.papers, args.seed)
        else:
            pure_t, pure_res = runner(pykernels, inputs)
        if _ckernels is None:
            rows.append((name, pure_t, None))
            continue
        if runner is bench_sampler:
            comp_t, comp_res = bench_sampler(_ckernels, args.papers, args.seed)
        else:
            comp_t, comp_res = runner(_ckernels, inputs)
        _check_agreement(pure_res, comp_res)
        rows.append((name, pure_t, comp_t))

    width = max(len(r[0]) for r in rows)
    print(f"\n{'kernel'.ljust(width)}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}")
    for name, pure_t, comp_t in rows:
        if comp_t is None:
            print(f"{name.ljust(width)}  {pure_t:>10.3f}  {'n/a':>12}  {'n/a':>8}")
        else:
            print(
                f"{name.ljust(width)}  {pure_t:>10.3f}  {comp_t:>12.3f}  "
                f"{pure_t / comp_t:>7.1f}x"
            )
    if _ckernels is None:
        print("\ncompiled kernels not built; run `pip install -e .` with a compiler")
    return 0


def _check_agreement(pure_res, comp_res):
    if isinstance(pure_res, int):
        assert pure_res == comp_res
        return
    for a, b in zip(pure_res, comp_res):
        assert np.array_equal(a, b), "backends disagree"


if __name__ == "__main__":
    raise SystemExit(main())
