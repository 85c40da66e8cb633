"""Backend selection for the subset recurrence.

The compiled extension fills the table for every vertex mask in checked
signed 64-bit arithmetic.  If any intermediate value overflows (large scaled
weights), or the extension is missing, or ``MATCHROOTS_PURE=1`` is set, a
memoized pure-Python recurrence over big integers is used instead.  Both
give identical coefficients.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("MATCHROOTS_PURE"):
        raise ImportError("pure backend forced")
    from . import _kernels as _ext
except ImportError:
    _ext = None

BACKEND = "compiled" if _ext is not None else "python"

# Dense tables grow as 2**n * (n + 1) words.
DENSE_MAX_N = 16

_INT64_LIMIT = 1 << 62


def _compiled_table(neg_r: list[int], lam: list[list[int]]):
    """The int64 table, or None when the inputs or any partial sum overflow."""
    import numpy as np

    n = len(neg_r)
    if any(abs(c) >= _INT64_LIMIT for c in neg_r) or any(abs(c) >= _INT64_LIMIT for row in lam for c in row):
        return None
    table, ok = _ext.subset_table_i64(
        n,
        np.array(neg_r, dtype=np.int64),
        np.array(lam, dtype=np.int64).reshape(n, n),
    )
    return table if ok else None


class SubsetTable:
    """Matching-polynomial coefficients (scaled integers) for every vertex mask."""

    def __init__(self, neg_r: list[int], lam: list[list[int]], backend: str | None = None):
        self.n = len(neg_r)
        if backend is None:
            backend = BACKEND if self.n <= DENSE_MAX_N else "python"
        if backend == "compiled" and _ext is None:
            raise RuntimeError("compiled kernel is not available")
        self._dense = _compiled_table(neg_r, lam) if backend == "compiled" else None
        self.backend = "compiled" if self._dense is not None else "python"
        self._cache: dict[int, list[int]] = {}
        if self._dense is None:
            self._lazy = _kernels_py.LazyTable(self.n, neg_r, lam)

    def coefficients(self, mask: int) -> list[int]:
        hit = self._cache.get(mask)
        if hit is not None:
            return hit
        if self._dense is not None:
            out = self._dense[mask, : bin(mask).count("1") + 1].tolist()
        else:
            out = self._lazy(mask)
        self._cache[mask] = out
        return out


def full_table(neg_r: list[int], lam: list[list[int]], backend: str) -> list[list[int]]:
    """Every mask's coefficients; used by the benchmark and the backend tests."""
    n = len(neg_r)
    if backend == "python":
        return _kernels_py.subset_table(n, neg_r, lam)
    table = SubsetTable(neg_r, lam, backend="compiled")
    if table._dense is None:
        return _kernels_py.subset_table(n, neg_r, lam)
    rows = table._dense.tolist()
    return [rows[mask][: bin(mask).count("1") + 1] for mask in range(1 << n)]
