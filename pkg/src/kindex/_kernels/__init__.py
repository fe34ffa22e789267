"""Hot-kernel backend selection.

The compiled extension (``_ckernels``) is preferred when it was built;
otherwise the pure-Python twin (``pykernels``) takes over transparently.
Set ``KINDEX_PURE_PYTHON=1`` to force the fallback, e.g. for debugging
or benchmarking.
"""

from __future__ import annotations

import os

if os.environ.get("KINDEX_PURE_PYTHON", "") not in ("", "0"):
    from kindex._kernels import pykernels as _impl

    BACKEND = "pure"
else:
    try:
        from kindex._kernels import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from kindex._kernels import pykernels as _impl

        BACKEND = "pure"

crossing_from_sorted = _impl.crossing_from_sorted
bulk_author_indices = _impl.bulk_author_indices
sample_citation_structure = _impl.sample_citation_structure


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'pure'."""
    return BACKEND
