"""Backend selection for the Spin^c class search.

The compiled extension is used when it imported and every intermediate of
the scan provably fits in a signed 64-bit integer; otherwise the pure-Python
scan runs on unbounded ints.  ``SACS_PURE_PYTHON=1`` disables the extension.
"""

from __future__ import annotations

import os

from . import _dsearch_py

try:
    if os.environ.get("SACS_PURE_PYTHON"):
        raise ImportError("disabled by SACS_PURE_PYTHON")
    from . import _dsearch as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_LIMIT = 1 << 62


def _maxabs(nested) -> int:
    if isinstance(nested, (list, tuple)):
        return max((_maxabs(v) for v in nested), default=0)
    return abs(nested)


def fits_int64(r: int, n: int, base, P, Q, R, G) -> bool:
    qmax = _maxabs(base) + 2 * r * _maxabs(P) + 2 * r * r * _maxabs(Q)
    gsum = max((sum(abs(v) for row in Gx for v in row) for Gx in G), default=0)
    bound = gsum * qmax * (qmax + _maxabs(R))
    return max(bound, qmax + _maxabs(R)) < _LIMIT and r < 62


def scan(r: int, n: int, base, P, Q, R, G, rhs, backend: str | None = None):
    """Dispatch to a backend; see :mod:`sacs._dsearch_py` for the contract."""
    want = backend or BACKEND
    if want == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel not available")
        if fits_int64(r, n, base, P, Q, R, G):
            return _compiled.scan(r, n, base, P, Q, R, G, rhs)
    return _dsearch_py.scan(r, n, base, P, Q, R, G, rhs)


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])
