"""Bundled author-cohort fixtures (CSV, see :mod:`kindex.ingest` for the format).

* ``hcr2019_top12.csv`` - the twelve highest-K authors of the 2019
  highly-cited-researchers cohort, graphene researchers tagged.
* ``hcr2019_candidates.csv`` - the same twelve plus the seven authors
  that enter the top twelve once graphene is filtered out.
* ``hcr2019_top12_nongraphene.csv`` - the published graphene-filtered
  top twelve, for cross-checking.
* ``nobel2019_laureates.csv`` - the three 2019 physics laureates' (K, h)
  pairs.
"""

from __future__ import annotations

from pathlib import Path

HCR2019_TOP12 = "hcr2019_top12.csv"
HCR2019_CANDIDATES = "hcr2019_candidates.csv"
HCR2019_TOP12_NONGRAPHENE = "hcr2019_top12_nongraphene.csv"
NOBEL2019_LAUREATES = "nobel2019_laureates.csv"

_HERE = Path(__file__).resolve().parent


def fixture_path(name: str) -> Path:
    """Absolute path of a bundled fixture file."""
    path = _HERE / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return path
