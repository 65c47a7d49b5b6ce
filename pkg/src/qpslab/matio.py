"""JSON wire formats for matrices, group elements and sample points.

Matrix format::

    {"rows": n, "cols": m, "entries": [["p/q", "r/s"], ...]}

Entries are row-major ``[real, imaginary]`` pairs of exact fraction strings;
the float backend additionally accepts plain numbers (a bare number means a
real entry).  Group elements add a ``"group"`` tag such as ``"sl2"``.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import EXACT, FLOAT, Mat
from .scalars import QQi


def scalar_to_json(x):
    if isinstance(x, QQi):
        return [str(x.re), str(x.im)]
    c = complex(x)
    return [c.real, c.imag]


def _part_from_json(v, backend):
    if isinstance(v, str):
        f = Fraction(v)
        return f if backend == EXACT else float(f)
    if backend == EXACT:
        if isinstance(v, int):
            return Fraction(v)
        raise ValueError(f"exact backend needs fraction strings, got {v!r}")
    return float(v)


def scalar_from_json(v, backend: str):
    if isinstance(v, (int, float)):
        pair = (v, 0)
    elif isinstance(v, (list, tuple)) and len(v) == 2:
        pair = tuple(v)
    else:
        raise ValueError(f"bad scalar entry {v!r}")
    re, im = (_part_from_json(p, backend) for p in pair)
    if backend == EXACT:
        return QQi(re, im)
    return complex(re, im)


def mat_to_json(m: Mat) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [scalar_to_json(x) for row in m.data for x in row],
    }


def mat_from_json(obj: dict, backend: str | None = None) -> Mat:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed matrix JSON: {e}") from None
    if len(entries) != rows * cols:
        raise ValueError("entry count must be rows*cols")
    if backend is None:
        backend = EXACT
        for v in entries:
            parts = v if isinstance(v, (list, tuple)) else [v]
            if any(not isinstance(p, str) for p in parts):
                backend = FLOAT
                break
    data = [
        [scalar_from_json(entries[i * cols + j], backend) for j in range(cols)]
        for i in range(rows)
    ]
    return Mat(data, backend)
