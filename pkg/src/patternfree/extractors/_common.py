"""Helpers shared by the extractors: exact parameter arithmetic, masking,
coordinate mapping and the oracle fallback."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..blocks import ExtractionOutcome, HomogeneousBlock
from ..errors import DegenerateSize, InvalidParams, InvalidSize, PreconditionFailed
from ..matrix import SubmatrixWitness, ZeroOneMatrix
from ..oracle import max_homogeneous_square


def as_eps(eps) -> Fraction:
    """Exact rational version of a density parameter."""
    if isinstance(eps, Fraction):
        f = eps
    elif isinstance(eps, int):
        f = Fraction(eps)
    else:
        f = Fraction(eps).limit_denominator(10**6)
    if not 0 < f <= 1:
        raise InvalidParams(f"eps must lie in (0, 1], got {eps}")
    return f


def ffloor(x: Fraction | int) -> int:
    return math.floor(x)


def fceil(x: Fraction | int) -> int:
    return math.ceil(x)


def require_square(A: ZeroOneMatrix, what: str) -> int:
    if A.is_empty:
        raise InvalidSize(f"{what} needs a nonempty matrix")
    if A.rows != A.cols:
        raise InvalidSize(f"{what} needs a square matrix, got {A.rows}x{A.cols}")
    return A.rows


def require_zeros(A: ZeroOneMatrix, need: Fraction, what: str) -> int:
    z = A.count(0)
    if z < need:
        raise PreconditionFailed(f"{what}: {z} zero entries, need at least {need}")
    return z


def first_zeros(a: np.ndarray, h: int, axis: int) -> np.ndarray:
    """Mask of the zeros that are among the first h zeros of their row (axis=1) or column (axis=0)."""
    z = a == 0
    rank = np.cumsum(z, axis=axis)
    return z & (rank <= h)


def last_zeros(a: np.ndarray, h: int, axis: int) -> np.ndarray:
    z = a == 0
    flipped = np.flip(z, axis=axis)
    rank = np.flip(np.cumsum(flipped, axis=axis), axis=axis)
    return z & (rank <= h)


def zero_positions(vec: np.ndarray) -> np.ndarray:
    return np.flatnonzero(vec == 0)


def canonical_zero_side(A: ZeroOneMatrix) -> bool:
    """True if the complement should be used (it has strictly more zeros, or ties broken canonically).

    The tie-break compares raw bytes, so A and its complement always pick the
    same underlying matrix; that keeps the theorem-level extractors exactly
    equivariant under complementation.
    """
    z = A.count(0)
    o = A.count(1)
    if z != o:
        return o > z
    return A.array.tobytes() > A.complement().array.tobytes()


def block(value: int, rows: Iterable[int], cols: Iterable[int]) -> HomogeneousBlock:
    return HomogeneousBlock(int(value), SubmatrixWitness(tuple(sorted(int(r) for r in rows)), tuple(sorted(int(c) for c in cols))))


def fallback(
    A: ZeroOneMatrix,
    method: str,
    values: tuple[int, ...] = (0,),
    reason: str = "",
    params: dict | None = None,
) -> ExtractionOutcome:
    """Oracle max homogeneous square, flagged as a fallback (first value wins ties)."""
    best = None
    for v in values:
        r = max_homogeneous_square(A, v, force=True)
        if r.size and (best is None or r.size > best.size):
            best = r
    if best is None:
        raise DegenerateSize(f"{method}: no homogeneous block of value {values} at all")
    out = ExtractionOutcome(
        method=method,
        block=best.block,
        fallback=True,
        exact=best.exact,
        params=dict(params or {}),
        info={"fallback_reason": reason, "oracle_method": best.method},
    )
    return out.verify(A)


def degenerate(A, method, on_degenerate, reason, values=(0,), params=None) -> ExtractionOutcome:
    if on_degenerate == "raise":
        raise DegenerateSize(f"{method}: {reason}")
    if on_degenerate != "fallback":
        raise InvalidParams(f"on_degenerate must be 'fallback' or 'raise', got {on_degenerate!r}")
    return fallback(A, method, values, reason, params)


def map_outcome(
    out: ExtractionOutcome,
    *,
    row_map=None,
    col_map=None,
    transpose: bool = False,
    flip_value: bool = False,
    pattern_map=None,
    method: str | None = None,
) -> ExtractionOutcome:
    """Carry an outcome computed on a transformed matrix back to the original.

    ``row_map``/``col_map`` send indices of the transformed matrix to the
    original (applied before an optional transpose).  ``pattern_map`` turns
    the violated pattern into the one realised in the original matrix.
    """
    rm = row_map or (lambda i: i)
    cm = col_map or (lambda j: j)

    def conv(w: SubmatrixWitness) -> SubmatrixWitness:
        rows = tuple(sorted(rm(i) for i in w.rows))
        cols = tuple(sorted(cm(j) for j in w.cols))
        if transpose:
            rows, cols = cols, rows
        return SubmatrixWitness(rows, cols)

    new = ExtractionOutcome(
        method=method or out.method,
        unordered=out.unordered,
        fallback=out.fallback,
        exact=out.exact,
        params=dict(out.params),
        info=dict(out.info),
        **(
            {"block": HomogeneousBlock(1 - out.block.value if flip_value else out.block.value, conv(out.block.where))}
            if out.block is not None
            else {
                "violation": conv(out.violation),
                "violation_pattern": (pattern_map or (lambda p: p))(out.violation_pattern),
            }
        ),
    )
    return new


def reverse_map(n: int):
    return lambda i: n - 1 - i
