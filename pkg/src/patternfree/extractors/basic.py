"""The all-1-row proposition, the homogeneous-column lift and the density dichotomy."""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..blocks import Dichotomy, ExtractionOutcome
from ..errors import DegenerateSize, InvalidParams
from ..matrix import SubmatrixWitness, ZeroOneMatrix, hstack
from ..oracle import max_homogeneous_square
from ._common import (
    as_eps,
    block,
    degenerate,
    ffloor,
    first_zeros,
    last_zeros,
    require_square,
    require_zeros,
)

__all__ = ["extract_all1row_free", "lift_homcolumn", "density_dichotomy"]


def extract_all1row_free(A: ZeroOneMatrix, k: int, on_degenerate: str = "raise") -> ExtractionOutcome:
    """All-0 block in a matrix with no k ones in a row, or the offending row.

    Block: the first floor(n/k) rows times every column that is zero on all
    of them (each row kills at most k-1 columns).  ``k = 1`` is allowed.
    """
    if k < 1:
        raise InvalidParams("k must be at least 1")
    n, m = A.shape
    method = "all1row"
    params = {"k": k}
    a = A.array
    counts = a.sum(axis=1)
    bad = np.flatnonzero(counts >= k)
    if bad.size:
        r = int(bad[0])
        cols = tuple(int(c) for c in np.flatnonzero(a[r])[:k])
        return ExtractionOutcome(
            method=method,
            violation=SubmatrixWitness((r,), cols),
            violation_pattern=ZeroOneMatrix.ones(1, k),
            params=params,
        ).verify(A)
    h = n // k
    if h == 0:
        return degenerate(A, method, on_degenerate, f"floor(n/k) = 0 for n={n}, k={k}", params=params)
    zero_cols = np.flatnonzero(a[:h].sum(axis=0) == 0)
    if zero_cols.size == 0:
        return degenerate(A, method, on_degenerate, "no all-0 column under the first rows", params=params)
    return ExtractionOutcome(method=method, block=block(0, range(h), zero_cols), params=params).verify(A)


def lift_homcolumn(
    A: ZeroOneMatrix,
    inner: Callable[[ZeroOneMatrix], ExtractionOutcome],
    eps,
    on_degenerate: str = "raise",
) -> ExtractionOutcome:
    """Goodness of P lifted to P with an appended all-0 last column.

    ``inner`` extracts from P-free matrices; its violations (copies of P in
    the dense submatrix) are extended by the all-0 column found here.
    """
    e = as_eps(eps)
    n = require_square(A, "lift_homcolumn")
    require_zeros(A, 2 * e * n * n, "lift_homcolumn")
    method = "homcolumn"
    params = {"eps": str(e)}
    en = ffloor(e * n)
    if en < 1:
        return degenerate(A, method, on_degenerate, f"floor(eps n) = 0 at n={n}", params=params)
    a = A.array
    masked = first_zeros(a, en, axis=1)
    a1 = np.where(masked, 1, a)
    colzeros = (a1 == 0).sum(axis=0)
    cand = np.flatnonzero(colzeros >= en)
    if cand.size == 0:
        return degenerate(A, method, on_degenerate, "no column with eps n zeros after masking", params=params)
    j = int(cand[0])
    I = np.flatnonzero(a1[:, j] == 0)[:en]
    # every row of I still had en zeros before column j
    zc = (a[np.ix_(I, np.arange(j))] == 0).sum(axis=0)
    order = sorted(range(j), key=lambda c: (-int(zc[c]), c))
    J = np.array(sorted(order[:en]), dtype=np.intp)
    B = A.slice(I, J)
    res = inner(B)
    info = {"column": j, "inner_method": res.method, "inner_fallback": res.fallback}
    if res.block is not None:
        b = res.block
        return ExtractionOutcome(
            method=method,
            block=block(b.value, (int(I[r]) for r in b.rows), (int(J[c]) for c in b.cols)),
            fallback=res.fallback,
            exact=res.exact,
            params=params,
            info=info,
        ).verify(A)
    w = res.violation
    P = res.violation_pattern
    lifted = hstack(P, ZeroOneMatrix.zeros(P.rows, 1))
    return ExtractionOutcome(
        method=method,
        violation=SubmatrixWitness(tuple(int(I[r]) for r in w.rows), tuple(int(J[c]) for c in w.cols) + (j,)),
        violation_pattern=lifted,
        params=params,
        info=info,
    ).verify(A)


def density_dichotomy(A: ZeroOneMatrix, eps, fallback_ok: bool = True) -> Dichotomy:
    """All-0 t x t block, or at least t^2 row pairs carrying P2 (t = floor(eps n / 8)).

    Follows the masking argument: A' drops the first 2t zeros of each row and
    column, A'' additionally the last 2t-1; a surviving zero of A'' anchors an
    all-0 cross, and every 1 inside that cross produces t+1 pairs.
    """
    e = as_eps(eps)
    n = require_square(A, "density_dichotomy")
    require_zeros(A, e * n * n, "density_dichotomy")
    t = ffloor(e * n / 8)
    if t < 1:
        raise DegenerateSize(f"density_dichotomy: floor(eps n / 8) = 0 at n={n}, eps={e}")
    a = A.array
    two_t = 2 * t
    m1 = first_zeros(a, two_t, axis=1) | first_zeros(a, two_t, axis=0)
    a1 = np.where(m1, 1, a)
    m2 = last_zeros(a1, two_t - 1, axis=1) | last_zeros(a1, two_t - 1, axis=0)
    a2 = np.where(m2, 1, a1)
    info = {"t": t}
    zs = np.argwhere(a2 == 0)
    if zs.size == 0:
        if not fallback_ok:
            raise DegenerateSize("density_dichotomy: no zero survives the masking")
        r = max_homogeneous_square(A, 0, force=True)
        info.update(fallback=True, exact=r.exact)
        return Dichotomy(block=r.block, t=t, info=info).verify(A)
    i1, j1 = (int(x) for x in zs[0])
    info["anchor"] = (i1, j1)
    I = np.flatnonzero(a1[i1 + 1 :, j1] == 0)[: two_t - 1] + i1 + 1
    J = np.flatnonzero(a1[i1, j1 + 1 :] == 0)[: two_t - 1] + j1 + 1
    sub = a[np.ix_(I, J)]
    clean = np.flatnonzero(sub.sum(axis=1) == 0)
    if clean.size >= t:
        return Dichotomy(block=block(0, I[clean[:t]], J), t=t, info=info).verify(A)
    pairs = {}
    for ri in np.flatnonzero(sub.sum(axis=1) > 0):
        i = int(I[ri])
        j = int(J[int(np.flatnonzero(sub[ri])[0])])
        Xj = np.flatnonzero(a[:, j] == 0)[:two_t]  # rows above i1
        Yi = np.flatnonzero(a[i, :] == 0)[:two_t]  # columns left of j1
        cross = a[np.ix_(Xj, Yi)]
        empty = np.flatnonzero(cross.sum(axis=1) == 0)
        if empty.size >= t:
            return Dichotomy(block=block(0, Xj[empty[:t]], Yi), t=t, info=info).verify(A)
        for xr in np.flatnonzero(cross.sum(axis=1) > 0):
            x = int(Xj[xr])
            y = int(Yi[int(np.flatnonzero(cross[xr])[0])])
            pairs.setdefault((x, i), SubmatrixWitness((x, i), (y, j)))
    info["rows_with_one"] = int((sub.sum(axis=1) > 0).sum())
    return Dichotomy(pairs=pairs, t=t, info=info).verify(A)
