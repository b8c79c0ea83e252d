"""Checkerboard patterns P_2k and 2 x k patterns without homogeneous columns."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..blocks import ExtractionOutcome
from ..containment import p2_pair_witnesses
from ..errors import DegenerateSize, PatternNotCovered
from ..matrix import SubmatrixWitness, ZeroOneMatrix
from ..patterns import checkerboard
from ._common import (
    as_eps,
    block,
    canonical_zero_side,
    degenerate,
    ffloor,
    map_outcome,
    require_square,
    require_zeros,
)
from .basic import density_dichotomy

__all__ = ["extract_checkerboard", "extract_theorem1"]


def extract_checkerboard(
    A: ZeroOneMatrix,
    k: int,
    eps,
    s_override: int | None = None,
    on_degenerate: str = "fallback",
) -> ExtractionOutcome:
    """All-0 block in a P_2k-free matrix with >= eps n^2 zeros, or a P_2k copy.

    The matrix is cut into an s x s grid of b x b cells (b = floor(n/s); a
    remainder strip is ignored).  A cell is heavy with >= eps b^2 / 2 zeros.
    Row strips are scanned from the one with most heavy cells; every heavy
    cell runs the density dichotomy (at its own measured density) and either
    yields an all-0 block or contributes its P2 row pairs.  A row pair seen
    in k cells of one strip spells out P_2k.
    """
    if k < 1:
        raise PatternNotCovered("k must be at least 1")
    e = as_eps(eps)
    n = require_square(A, "extract_checkerboard")
    require_zeros(A, e * n * n, "extract_checkerboard")
    method = "checkerboard"
    s = int(s_override) if s_override else ffloor(Fraction(400 * k) / e**3)
    params = {"k": k, "eps": str(e), "s": s}
    if s < 1 or s > n:
        return degenerate(A, method, on_degenerate, f"grid size s={s} does not fit n={n}", params=params)
    b = n // s
    a = A.array
    cells = (a[: s * b, : s * b] == 0).reshape(s, b, s, b).sum(axis=(1, 3))
    heavy = cells * 2 >= e * b * b
    info = {"cell_size": b, "heavy": int(heavy.sum())}
    order = sorted(range(s), key=lambda i: (-int(heavy[i].sum()), i))
    info["strip"] = order[0]
    p2k = checkerboard(2 * k)
    for i0 in order:
        if not heavy[i0].any():
            break
        rows0 = i0 * b
        seen: dict[tuple[int, int], list] = {}
        for j in np.flatnonzero(heavy[i0]).tolist():
            cols0 = j * b
            C = A.slice(range(rows0, rows0 + b), range(cols0, cols0 + b))
            zc = int(cells[i0, j])
            d = None
            if zc >= 8 * b:  # the cell's own floor(eps b / 8) is at least 1
                try:
                    d = density_dichotomy(C, Fraction(zc, b * b), fallback_ok=False)
                except DegenerateSize:
                    d = None
            if d is not None and d.block is not None:
                blk = d.block
                info.update(strip=i0, cell=(i0, j), branch="density-block")
                return ExtractionOutcome(
                    method=method,
                    block=block(0, (rows0 + r for r in blk.rows), (cols0 + c for c in blk.cols)),
                    params=params,
                    info=info,
                ).verify(A)
            for (r, q), w in p2_pair_witnesses(C).items():
                lst = seen.setdefault((r, q), [])
                lst.append((cols0 + w.cols[0], cols0 + w.cols[1]))
                if len(lst) == k:
                    cols = tuple(c for pair in lst for c in pair)
                    info.update(strip=i0, branch="pair-cells", pair=(rows0 + r, rows0 + q))
                    return ExtractionOutcome(
                        method=method,
                        violation=SubmatrixWitness((rows0 + r, rows0 + q), cols),
                        violation_pattern=p2k,
                        params=params,
                        info=info,
                    ).verify(A)
    return degenerate(A, method, on_degenerate, "no heavy cell produced a block or a repeated pair", params=params)


def _homogeneous_cols(P: ZeroOneMatrix) -> bool:
    a = P.array
    return bool((a.min(axis=0) == a.max(axis=0)).any())


def extract_theorem1(
    A: ZeroOneMatrix,
    P: ZeroOneMatrix,
    s_override: int | None = None,
    on_degenerate: str = "fallback",
) -> ExtractionOutcome:
    """Homogeneous block for a 2 x k pattern without homogeneous columns.

    Runs :func:`extract_checkerboard` with eps = 1/2 on whichever of A and its
    complement has at least half zeros.  Violations certify a P_2k copy
    (or its complement), which contains P.
    """
    if P.rows != 2 or _homogeneous_cols(P):
        raise PatternNotCovered("theorem 1 path needs a 2 x k pattern with no homogeneous column")
    require_square(A, "extract_theorem1")
    k = P.cols
    flip = canonical_zero_side(A)
    B = A.complement() if flip else A
    try:
        out = extract_checkerboard(B, k, Fraction(1, 2), s_override=s_override, on_degenerate="raise")
    except DegenerateSize as exc:
        if on_degenerate == "raise":
            raise
        out = degenerate(B, "checkerboard", "fallback", str(exc), values=(0, 1), params={"k": k})
    res = map_outcome(
        out,
        flip_value=flip,
        pattern_map=(lambda p: p.complement()) if flip else None,
        method="theorem1",
    )
    res.info["complemented"] = flip
    return res.verify(A)
