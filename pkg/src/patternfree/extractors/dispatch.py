"""Dispatch for inhomogeneous 2 x 2 patterns."""

from __future__ import annotations

from ..blocks import ExtractionOutcome
from ..errors import PatternNotCovered
from ..matrix import ZeroOneMatrix
from ._common import map_outcome, require_square, reverse_map
from .checkerboard import extract_theorem1
from .corner import extract_theorem2

__all__ = ["extract_theorem_2by2", "normalize_2by2"]


def _homog(a, axis) -> bool:
    return bool((a.min(axis=axis) == a.max(axis=axis)).any())


def normalize_2by2(P: ZeroOneMatrix) -> dict:
    """How a 2 x 2 pattern reduces to one of the two solved cases.

    Returns a dict with ``route`` ("theorem1" or "theorem2"), and for
    theorem 1 whether to transpose, for theorem 2 which axes to reverse and
    whether to complement so that the pattern becomes Q1.
    """
    if P.shape != (2, 2):
        raise PatternNotCovered("expected a 2 x 2 pattern")
    a = P.array
    if a.min() == a.max():
        raise PatternNotCovered("homogeneous 2 x 2 pattern has no linear homogeneous guarantee")
    if not _homog(a, 0):
        return {"route": "theorem1", "transpose": False}
    if not _homog(a, 1):
        return {"route": "theorem1", "transpose": True}
    ones = int(a.sum())
    flip = ones == 3
    odd = 0 if flip else 1  # the entry that differs from the other three
    (r, c), = [(i, j) for i in range(2) for j in range(2) if a[i, j] == odd]
    return {"route": "theorem2", "reverse_rows": r == 1, "reverse_cols": c == 1, "complement": flip}


def extract_theorem_2by2(A: ZeroOneMatrix, P: ZeroOneMatrix, on_degenerate: str = "fallback") -> ExtractionOutcome:
    """Homogeneous block of linear size in a P-free matrix, P an inhomogeneous 2 x 2 pattern."""
    plan = normalize_2by2(P)
    n = require_square(A, "extract_theorem_2by2")
    if plan["route"] == "theorem1":
        if not plan["transpose"]:
            out = extract_theorem1(A, P, on_degenerate=on_degenerate)
            out.info["plan"] = plan
            out.method = "theorem_2by2"
            return out
        inner = extract_theorem1(A.transpose(), P.transpose(), on_degenerate=on_degenerate)
        res = map_outcome(inner, transpose=True, pattern_map=lambda p: p.transpose(), method="theorem_2by2")
    else:
        rr, rc, flip = plan["reverse_rows"], plan["reverse_cols"], plan["complement"]
        B = A.complement() if flip else A
        B = B.reversed(rows=rr, cols=rc)
        inner = extract_theorem2(B, on_degenerate=on_degenerate)

        def back(p):
            p = p.reversed(rows=rr, cols=rc)
            return p.complement() if flip else p

        res = map_outcome(
            inner,
            row_map=reverse_map(n) if rr else None,
            col_map=reverse_map(n) if rc else None,
            flip_value=flip,
            pattern_map=back,
            method="theorem_2by2",
        )
    res.info["plan"] = plan
    res.info["inner_method"] = inner.method
    return res.verify(A)
