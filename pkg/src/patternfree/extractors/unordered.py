"""Unordered containment: simple 2 x k patterns up to row and column permutations."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..blocks import ExtractionOutcome
from ..errors import DegenerateSize, PatternNotCovered
from ..matrix import SubmatrixWitness, ZeroOneMatrix
from ..patterns import is_simple, unordered_star
from ._common import (
    as_eps,
    block,
    canonical_zero_side,
    degenerate,
    fceil,
    ffloor,
    map_outcome,
    require_square,
    require_zeros,
)

__all__ = ["extract_unordered", "extract_theorem_graph"]


def extract_unordered(A: ZeroOneMatrix, P: ZeroOneMatrix, eps, on_degenerate: str = "fallback") -> ExtractionOutcome:
    """All-0 block with >= floor(eps n / 6k) rows, or an unordered copy of R.

    R (``unordered_star(k)``) contains every column ordering of P.  B is t
    zero-rich rows sharing a zero column, sorted by zero count, with zero
    sets H_i.  The DAG has i -> j (i < j) when |H_i - H_j| <= k - 1; a
    non-edge whose zero sets miss a common column is an R copy.  Otherwise
    the minimal vertices split into a part N owning t/3 rows whose zero sets
    still share at least t/2 columns.
    """
    if P.rows != 2 or not is_simple(P):
        raise PatternNotCovered("unordered extraction needs a simple 2 x k pattern")
    e = as_eps(eps)
    n = require_square(A, "extract_unordered")
    require_zeros(A, e * n * n, "extract_unordered")
    k = P.cols
    method = "unordered"
    params = {"k": k, "eps": str(e)}
    t = fceil(e * n / 2)
    lstar = ffloor(Fraction(t, 3)) if k == 1 else ffloor(min(Fraction(t, 2 * (k - 1)), Fraction(t, 3)))
    if lstar < 1:
        return degenerate(A, method, on_degenerate, f"t/3 < 1 at n={n}", params=params)
    a = A.array
    z = a == 0
    kept = np.flatnonzero(2 * z.sum(axis=1) >= e * n)
    colz = z[kept].sum(axis=0)
    good = np.flatnonzero(colz >= t)
    if good.size == 0:
        return degenerate(A, method, on_degenerate, "no column with t zeros among zero-rich rows", params=params)
    cstar = int(good[0])
    rows = kept[z[kept, cstar]][:t]
    rows = rows[np.argsort(z[rows].sum(axis=1), kind="stable")]
    H = z[rows]
    miss = H.astype(np.int64) @ (~H).astype(np.int64).T  # |H_i - H_j|
    edge = np.triu(miss <= k - 1, 1)
    info = {"t": t, "column": cstar, "dag_edges": int(edge.sum())}
    # non-edges must have zero sets covering every column
    both_one = (~H).astype(np.int64) @ (~H).astype(np.int64).T
    bad = np.argwhere(np.triu(~edge & (both_one > 0), 1))
    if bad.size:
        i, j = (int(x) for x in bad[0])
        r = int(np.flatnonzero(~H[i] & ~H[j])[0])
        X = np.flatnonzero(H[i] & ~H[j])[:k]
        Y = np.flatnonzero(H[j] & ~H[i])[:k]
        cols = sorted(set(X.tolist()) | set(Y.tolist()) | {r, cstar})
        info["branch"] = "non-edge"
        return ExtractionOutcome(
            method=method,
            violation=SubmatrixWitness(tuple(sorted((int(rows[i]), int(rows[j])))), tuple(cols)),
            violation_pattern=unordered_star(k),
            unordered=True,
            params=params,
            info=info,
        ).verify(A)

    has_pred = edge.any(axis=0)
    owner = np.arange(t)
    for w in range(t):
        if has_pred[w]:
            owner[w] = owner[int(np.flatnonzero(edge[:, w])[0])]
    M = np.flatnonzero(~has_pred)
    load = {int(v): int((owner == v).sum()) for v in M}
    heavy = [v for v in M.tolist() if 3 * load[v] > t]
    if heavy:
        N = [heavy[0]]
    else:
        N0, got = [], 0
        for v in M.tolist():
            if 3 * got >= t:
                break
            N0.append(v)
            got += load[v]
        missing = (~H[N0]).any(axis=0).sum()
        N = N0 if missing <= n - t else [v for v in M.tolist() if v not in set(N0)]
    xs = np.flatnonzero(np.isin(owner, N))[:lstar]
    cols = np.flatnonzero(H[xs].all(axis=0))
    info.update(minimal=int(M.size), chosen=len(N), branch="chain")
    return ExtractionOutcome(method=method, block=block(0, rows[xs], cols), params=params, info=info).verify(A)


def extract_theorem_graph(A: ZeroOneMatrix, P: ZeroOneMatrix, on_degenerate: str = "fallback") -> ExtractionOutcome:
    """Homogeneous block of size about n/12k for an unordered simple 2 x k pattern."""
    if P.rows != 2 or not is_simple(P):
        raise PatternNotCovered("graph theorem path needs a simple 2 x k pattern")
    require_square(A, "extract_theorem_graph")
    flip = canonical_zero_side(A)
    B = A.complement() if flip else A
    Q = P.complement() if flip else P
    try:
        out = extract_unordered(B, Q, Fraction(1, 2), on_degenerate="raise")
    except DegenerateSize as exc:
        if on_degenerate == "raise":
            raise
        out = degenerate(B, "unordered", "fallback", str(exc), values=(0, 1), params={"k": P.cols})
    res = map_outcome(
        out,
        flip_value=flip,
        pattern_map=(lambda p: p.complement()) if flip else None,
        method="theorem_graph",
    )
    res.info["complemented"] = flip
    return res.verify(A)
