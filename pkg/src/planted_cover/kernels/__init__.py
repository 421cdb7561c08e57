"""Solver kernel backends.

The JIT (numba) backend is used when available; setting the environment
variable ``PLANTED_COVER_NO_NUMBA`` to anything but ``0`` or empty
forces the pure-Python fallback.  ``BACKEND`` names the active choice.
Both backends implement the contract documented in ``_pure`` and
produce bit-identical results for identical inputs.
"""

from __future__ import annotations

import os


def _use_numba() -> bool:
    flag = os.environ.get("PLANTED_COVER_NO_NUMBA", "").strip()
    return not flag or flag == "0"


BACKEND = "pure"
if _use_numba():
    try:
        from ._numba import count_uncovered_packed, run_chain

        BACKEND = "numba"
    except ImportError:
        from ._pure import count_uncovered_packed, run_chain
else:
    from ._pure import count_uncovered_packed, run_chain

__all__ = ["BACKEND", "run_chain", "count_uncovered_packed"]
