"""The corner patterns Q_k and the 2 x 2 pattern with a single 1 in a corner."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..blocks import ExtractionOutcome
from ..containment import contains_ordered
from ..errors import DegenerateSize, InvalidParams, PreconditionFailed
from ..matrix import SubmatrixWitness, ZeroOneMatrix
from ..patterns import corner
from ._common import (
    as_eps,
    block,
    degenerate,
    fallback,
    ffloor,
    first_zeros,
    require_square,
    require_zeros,
)
from .basic import extract_all1row_free

__all__ = ["extract_qk_zero", "extract_q_one", "extract_theorem2"]


def extract_qk_zero(A: ZeroOneMatrix, k: int, eps, on_degenerate: str = "fallback") -> ExtractionOutcome:
    """All-0 block of size floor(h/k), h = floor(eps n / 2), or a Q_k copy.

    Masks the first h zeros of every row and column; the first surviving zero
    (i0, j0) in row-major order has h zeros above it in its column and h to
    its left in its row.  The h x h matrix on those rows and columns is then
    handed to the all-1-row proposition.
    """
    if k < 1:
        raise InvalidParams("k must be at least 1")
    e = as_eps(eps)
    n = require_square(A, "extract_qk_zero")
    require_zeros(A, e * n * n, "extract_qk_zero")
    method = "qk_zero"
    params = {"k": k, "eps": str(e)}
    h = ffloor(e * n / 2)
    if h // k < 1:
        return degenerate(A, method, on_degenerate, f"floor(eps n / 2k) = 0 at n={n}", params=params)
    a = A.array
    masked = first_zeros(a, h, axis=1) | first_zeros(a, h, axis=0)
    left = np.argwhere((a == 0) & ~masked)
    if left.size == 0:
        return degenerate(A, method, on_degenerate, "no zero survives the masking", params=params)
    i0, j0 = (int(x) for x in left[0])
    I = np.flatnonzero(a[:i0, j0] == 0)[:h]
    J = np.flatnonzero(a[i0, :j0] == 0)[:h]
    inner = extract_all1row_free(A.slice(I, J), k, on_degenerate="raise")
    info = {"anchor": (i0, j0), "h": h}
    if inner.block is not None:
        b = inner.block
        return ExtractionOutcome(
            method=method,
            block=block(0, I[list(b.rows)], J[list(b.cols)]),
            params=params,
            info=info,
        ).verify(A)
    r = int(I[inner.violation.rows[0]])
    cols = tuple(int(J[c]) for c in inner.violation.cols) + (j0,)
    return ExtractionOutcome(
        method=method,
        violation=SubmatrixWitness((r, i0), cols),
        violation_pattern=corner(k),
        params=params,
        info=info,
    ).verify(A)


def _components(Y: np.ndarray) -> list[tuple[list[int], list[int]]]:
    """Row and column sets of the components of the zero graph of Y.

    Two zeros are adjacent when they share a row or a column, so components
    are those of the bipartite row/column graph.  Sorted by smallest row.
    """
    m, w = Y.shape
    parent = list(range(m + w))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, c in np.argwhere(Y == 0).tolist():
        a, b = find(r), find(m + c)
        if a != b:
            parent[max(a, b)] = min(a, b)
    rows_with = Y.min(axis=1) == 0
    cols_with = Y.min(axis=0) == 0
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for r in range(m):
        if rows_with[r]:
            groups.setdefault(find(r), ([], []))[0].append(r)
    for c in range(w):
        if cols_with[c]:
            groups.setdefault(find(m + c), ([], []))[1].append(c)
    return sorted(groups.values(), key=lambda g: g[0][0])


def _monotone_reach(a, Y, rows, C, start):
    """Rows reachable from ``start`` by row-monotone paths in the zero graph of Y.

    Returns (reached, witness).  Every newly reached row is checked to carry
    ones on C; the first failure yields a Q1 copy (rows r < r', columns x < c)
    in the coordinates of ``a``.
    """
    m = Y.shape[0]
    reached = np.zeros(m, dtype=bool)
    reached[start] = True
    for r in range(start, m):
        if not reached[r]:
            continue
        for c in np.flatnonzero(Y[r] == 0).tolist():
            below = np.flatnonzero(Y[r + 1 :, c] == 0) + r + 1
            for r2 in below.tolist():
                if reached[r2]:
                    continue
                bad = [x for x in C if a[rows[r2], x] == 0]
                if bad:
                    return reached, (rows[r], rows[r2], bad[0], c)
                reached[r2] = True
    return reached, None


def extract_q_one(A: ZeroOneMatrix, eps, on_degenerate: str = "fallback") -> ExtractionOutcome:
    """All-1 block of size floor(eps n / 18) in a matrix with >= eps n^2 ones, or a Q1 copy.

    X is m = floor(eps n / 6) rows that are 1-rich left of a split column, Y
    the m x m matrix to the right on the same rows.  A component of the zero
    graph of Y spanning m/3 rows gives rows x (1-columns of its top row in X);
    otherwise the components form a block diagonal and a corner of Y is all-1.
    """
    e = as_eps(eps)
    n = require_square(A, "extract_q_one")
    ones = A.count(1)
    if ones < e * n * n:
        raise PreconditionFailed(f"extract_q_one: {ones} one entries, need at least {e * n * n}")
    method = "q_one"
    params = {"eps": str(e)}
    m = ffloor(e * n / 6)
    m3 = ffloor(e * n / 18)
    if m3 < 1:
        return degenerate(A, method, on_degenerate, f"floor(eps n / 18) = 0 at n={n}", values=(1,), params=params)
    a = A.array
    third = e * n * n / 3
    pref = np.concatenate(([0], np.cumsum(a.sum(axis=0))))
    split = [i for i in range(1, n) if pref[i] >= third and ones - pref[i] >= third]
    if not split:
        return degenerate(A, method, on_degenerate, "no balanced split column", values=(1,), params=params)
    i = split[0]
    rich = np.flatnonzero(6 * a[:, :i].sum(axis=1) >= e * n)
    if rich.size < m or n - i < m:
        return degenerate(A, method, on_degenerate, "too few 1-rich rows left of the split", values=(1,), params=params)
    rows = rich[:m]
    ycols = np.arange(i, i + m)
    Y = a[np.ix_(rows, ycols)]
    info = {"split": i, "m": m, "m3": m3}
    comps = _components(Y)
    info["components"] = len(comps)

    def done(value, rr, cc, branch):
        info["branch"] = branch
        return ExtractionOutcome(method=method, block=block(value, rr, cc), params=params, info=info).verify(A)

    for crow, ccol in comps:
        if len(crow) < m3:
            continue
        v_row = crow[0]
        C = np.flatnonzero(a[rows[v_row], :i] == 1).tolist()
        reached, wit = _monotone_reach(a, Y, rows, C, v_row)
        if wit is not None:
            r, r2, x, c = wit
            info["branch"] = "component-violation"
            return ExtractionOutcome(
                method=method,
                violation=SubmatrixWitness((int(r), int(r2)), (int(x), int(i + c))),
                violation_pattern=corner(1),
                params=params,
                info=info,
            ).verify(A)
        if reached.sum() >= m3:
            return done(1, rows[reached], C, "component")
        # the component is not monotonically reachable, so A is not Q1-free
        hit = contains_ordered(A, corner(1))
        if hit:
            info["branch"] = "component-search"
            return ExtractionOutcome(
                method=method, violation=hit.witness, violation_pattern=corner(1), params=params, info=info
            ).verify(A)
        return degenerate(A, method, on_degenerate, "component not reachable", values=(1,), params=params)

    # block-diagonal layout of Y
    rpos: list[int] = []
    cpos: list[int] = []
    spans = []
    for crow, ccol in comps:
        spans.append((len(rpos), len(rpos) + len(crow) - 1, len(cpos), len(cpos) + len(ccol) - 1))
        rpos.extend(crow)
        cpos.extend(ccol)
    rpos.extend(r for r in range(m) if r not in set(rpos))
    cpos.extend(c for c in range(m) if c not in set(cpos))
    rp = np.array(rpos)
    cp = np.array(cpos)
    p = m // 2 - 1 if m >= 2 else 0
    hit = [s for s in spans if s[2] <= p <= s[3]]
    if not hit:
        return done(1, rows[rp], ycols[cp[p:]], "diagonal-right")
    ra, rb, ca, cb = hit[0]
    if ra >= m3:
        return done(1, rows[rp[:ra]], ycols[cp[ca:]], "diagonal-top-right")
    return done(1, rows[rp[rb + 1 :]], ycols[cp[: cb + 1]], "diagonal-bottom-left")


def extract_theorem2(A: ZeroOneMatrix, on_degenerate: str = "fallback") -> ExtractionOutcome:
    """Homogeneous block of size floor(n/20) in a Q1-free matrix.

    With at least n^2/10 zeros the Q_k zero extractor (k=1, eps=1/10) gives an
    all-0 block; otherwise at least 9n^2/10 ones feed the all-1 extractor.
    """
    n = require_square(A, "extract_theorem2")
    method = "theorem2"
    if n < 20:
        if on_degenerate == "raise":
            raise DegenerateSize(f"{method}: n={n} below 20")
        return fallback(A, method, (0, 1), f"n={n} below 20")
    try:
        if 10 * A.count(0) >= n * n:
            out = extract_qk_zero(A, 1, Fraction(1, 10), on_degenerate="raise")
        else:
            out = extract_q_one(A, Fraction(9, 10), on_degenerate="raise")
    except DegenerateSize as exc:
        if on_degenerate == "raise":
            raise
        return fallback(A, method, (0, 1), str(exc))
    out.info["inner_method"] = out.method
    out.method = method
    return out
