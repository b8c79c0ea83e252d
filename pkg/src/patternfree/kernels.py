"""Backend selection for the hot search kernels.

The compiled ``_native`` extension is used when it imports; otherwise (or when
``PATTERNFREE_PURE=1``) the pure-Python ``_purepy`` module is.  Both expose the
same functions and return identical results.
"""

from __future__ import annotations

import os

from . import _purepy

_impl = _purepy
if os.environ.get("PATTERNFREE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _purepy

BACKEND: str = _impl.BACKEND

ordered_first = _impl.ordered_first
unordered_first = _impl.unordered_first
count_ordered = _impl.count_ordered
p2_pairs = _impl.p2_pairs
gamma_free = _impl.gamma_free
max_square = _impl.max_square


def backends() -> dict:
    """All importable backends by name (for benchmarks and cross-checks)."""
    out = {"python": _purepy}
    try:
        from . import _native

        out["native"] = _native
    except ImportError:
        pass
    return out
