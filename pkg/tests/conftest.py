from __future__ import annotations

import pytest
from hypothesis import strategies as st

from kindex.graph import PaperRecord

AUTHOR_POOL = ("ann", "bob", "cho", "dee")
TAG_POOL = ("graphene", "nano", "bio")


@st.composite
def record_lists(draw, max_papers: int = 10, allow_dangling: bool = True):
    """Lists of valid PaperRecords over a small id space."""
    n = draw(st.integers(min_value=0, max_value=max_papers))
    ids = [f"p{i}" for i in range(n)]
    extra = ["x0", "x1"] if allow_dangling else []
    records = []
    for pid in ids:
        candidates = [q for q in ids + extra if q != pid]
        if candidates:
            cites = draw(
                st.lists(
                    st.sampled_from(candidates),
                    unique=True,
                    max_size=min(5, len(candidates)),
                )
            )
        else:
            cites = []
        authors = draw(st.lists(st.sampled_from(AUTHOR_POOL), unique=True, max_size=3))
        tags = draw(st.lists(st.sampled_from(TAG_POOL), unique=True, max_size=2))
        records.append(
            PaperRecord(
                paper_id=pid,
                author_ids=tuple(authors),
                cites=tuple(cites),
                tags=frozenset(tags),
            )
        )
    return records


def kernel_backends():
    """All available kernel implementations (pure always, compiled if built)."""
    from kindex._kernels import pykernels

    impls = [pytest.param(pykernels, id="pure")]
    try:
        from kindex._kernels import _ckernels

        impls.append(pytest.param(_ckernels, id="compiled"))
    except ImportError:
        pass
    return impls


@pytest.fixture(params=kernel_backends())
def kernel(request):
    return request.param


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance.py" not in str(report.nodeid):
                continue
            name = report.nodeid.split("::")[-1]
            lines.append((name, outcome.upper()))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(lines):
        terminalreporter.write_line(f"{name}: {outcome}")
