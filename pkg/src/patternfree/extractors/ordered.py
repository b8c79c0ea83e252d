"""Acyclic 2 x k patterns: nice tuples, comparability graphs and bicliques."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from ..blocks import ExtractionOutcome
from ..errors import DegenerateSize, NiceTupleNotFound, PatternNotCovered
from ..matrix import SubmatrixWitness, ZeroOneMatrix
from ..oracle import max_balanced_biclique
from ..patterns import is_acyclic, is_simple
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

__all__ = ["extract_ordered_general", "extract_theorem3", "nice_counts"]

_RNG_SITE = 0x0D3
_TUPLE_LIMIT = 200_000


def nice_counts(A: ZeroOneMatrix, tuples: np.ndarray, g) -> np.ndarray:
    """Boolean (rows, tuples) table: is the tuple nice for the row.

    Nice means zeros at every c_i and at least ``g`` zeros in each interval
    (c_i, c_{i+1}].
    """
    z = (A.array == 0)
    pre = np.zeros((A.rows, A.cols + 1), dtype=np.int64)
    np.cumsum(z, axis=1, out=pre[:, 1:])
    ok = z[:, tuples].all(axis=2)
    between = pre[:, tuples[:, 1:] + 1] - pre[:, tuples[:, :-1] + 1]
    return ok & (between >= g).all(axis=2)


def _best_tuple(A, k, g, e, probes, exhaustive_limit, seed):
    n = A.cols
    if n <= exhaustive_limit and comb(n, k + 1) <= _TUPLE_LIMIT:
        cand = np.array(list(combinations(range(n), k + 1)), dtype=np.intp).reshape(-1, k + 1)
        mode = "exhaustive"
    else:
        z = A.array == 0
        qual = np.flatnonzero(2 * z.sum(axis=1) >= e * n)
        if qual.size == 0:
            return None, "probe", 0
        rng = np.random.default_rng([seed, _RNG_SITE])
        G = max(1, fceil(g))
        found = set()
        for _ in range(probes):
            r = int(qual[rng.integers(qual.size)])
            pos = np.flatnonzero(z[r])
            slack = pos.size - 1 - k * G
            if slack < 0:
                continue
            # random composition of the slack into k + 2 parts
            cuts = np.sort(rng.integers(0, slack + 1, size=k + 1))
            parts = np.diff(np.concatenate(([0], cuts, [slack])))
            idx = parts[0] + np.concatenate(([0], np.cumsum(G + parts[1:-1])))
            found.add(tuple(int(c) for c in pos[idx]))
        if not found:
            return None, "probe", 0
        cand = np.array(sorted(found), dtype=np.intp)
        mode = "probe"
    table = nice_counts(A, cand, g)
    counts = table.sum(axis=0)
    # a biclique has at most |V|/2 rows and its columns sit in one strip,
    # so rank tuples by that block-size proxy, then by |V|
    width = np.diff(cand, axis=1).min(axis=1)
    proxy = np.minimum(counts // 2, width)
    best = int(np.lexsort((-counts, -proxy))[0])
    if counts[best] == 0:
        return None, mode, len(cand)
    return (tuple(int(c) for c in cand[best]), np.flatnonzero(table[:, best])), mode, len(cand)


def _edge_matrix(sub: np.ndarray, col: tuple[int, int]) -> np.ndarray:
    """adj[a, b] (a < b) iff no column s has sub[a, s] = col[0] and sub[b, s] = col[1]."""
    top = (sub == col[0]).astype(np.int64)
    bot = (sub == col[1]).astype(np.int64)
    hits = top @ bot.T
    upper = np.triu(hits == 0, 1)
    return upper | upper.T


def extract_ordered_general(
    A: ZeroOneMatrix,
    P: ZeroOneMatrix,
    eps,
    *,
    probes: int = 200,
    exhaustive_limit: int = 24,
    seed: int = 0,
    on_degenerate: str = "fallback",
) -> ExtractionOutcome:
    """All-0 block in a P-free matrix with >= eps n^2 zeros, P acyclic 2 x k.

    A (k+1)-tuple of columns nice for many rows V cuts A into k interval
    strips.  Pattern column i defines the graph G_i on V of row pairs that
    avoid it inside strip i; they cover all pairs unless P occurs.  The best
    balanced biclique among the inhomogeneous G_i and the complement of their
    union becomes an all-0 block.
    """
    if P.rows != 2 or not is_acyclic(P):
        raise PatternNotCovered("ordered extraction needs an acyclic 2 x k pattern")
    e = as_eps(eps)
    n = require_square(A, "extract_ordered_general")
    require_zeros(A, e * n * n, "extract_ordered_general")
    k = P.cols
    method = "ordered"
    params = {"eps": str(e), "probes": probes, "seed": seed}
    g = e * n / (8 * k)
    if ffloor(g) < 1:
        return degenerate(A, method, on_degenerate, f"eps n / 8k < 1 at n={n}", params=params)
    found, mode, tried = _best_tuple(A, k, g, e, probes, exhaustive_limit, seed)
    if found is None:
        raise NiceTupleNotFound(f"no nice {k + 1}-tuple found ({mode}, {tried} candidates)")
    cs, V = found
    a = A.array
    info = {"tuple": list(cs), "rows_V": int(V.size), "tuple_search": mode, "candidates": tried}
    pcols = [(int(P.array[0, i]), int(P.array[1, i])) for i in range(k)]
    strips = [np.arange(cs[i] + 1, cs[i + 1] + 1) for i in range(k)]
    subs = [a[np.ix_(V, s)] for s in strips]
    adjs = [_edge_matrix(subs[i], pcols[i]) for i in range(k)]
    union = np.zeros((V.size, V.size), dtype=bool)
    for adj in adjs:
        union |= adj
    np.fill_diagonal(union, True)
    missing = np.argwhere(~union)
    if missing.size:
        x, y = (int(v) for v in missing[0])
        cols = []
        for i, (p0, p1) in enumerate(pcols):
            s = np.flatnonzero((subs[i][x] == p0) & (subs[i][y] == p1))[0]
            cols.append(int(strips[i][s]))
        info["branch"] = "uncovered-pair"
        return ExtractionOutcome(
            method=method,
            violation=SubmatrixWitness((int(V[x]), int(V[y])), tuple(cols)),
            violation_pattern=P,
            params=params,
            info=info,
        ).verify(A)

    candidates = []  # (size, order, rows, cols, note)
    exact = True  # whether every biclique search was proven optimal
    inhom = [i for i, (p0, p1) in enumerate(pcols) if p0 != p1]
    for i in inhom:
        bc = max_balanced_biclique(adjs[i])
        exact &= bc.exact
        if bc.size == 0:
            continue
        both = sorted(bc.S + bc.T)
        # (0,1): zero sets grow downwards, anchor at the top; (1,0): at the bottom
        v = both[0] if pcols[i] == (0, 1) else both[-1]
        other = bc.T if v in bc.S else bc.S
        rows = sorted(set(other) | {v})
        X = strips[i][subs[i][v] == 0]
        candidates.append((min(len(rows), X.size), i, V[rows], X, f"G{i}"))
    ones_col = [i for i, pc in enumerate(pcols) if pc == (1, 1)]
    if ones_col:
        q = ones_col[0]
        G = np.zeros_like(union)
        for i in inhom:
            G |= adjs[i]
        comp = ~G
        np.fill_diagonal(comp, False)
        bc = max_balanced_biclique(comp)
        exact &= bc.exact
        if bc.size:
            best_side = None
            for side in (bc.S, bc.T):
                free = strips[q][subs[q][list(side)].max(axis=0) == 0]
                if best_side is None or free.size > best_side[1].size:
                    best_side = (side, free)
            side, free = best_side
            candidates.append((min(len(side), free.size), k, V[list(side)], free, "complement"))
    if not candidates:
        # a single nice row still gives a 1 x |X| all-0 block
        r = 0
        X = strips[0][subs[0][r] == 0]
        candidates.append((1, 0, V[[r]], X, "trivial"))
    size, _, rows, cols, note = max(candidates, key=lambda c: (c[0], -c[1]))
    info.update(branch=note, biclique_exact=exact)
    return ExtractionOutcome(
        method=method, block=block(0, rows, cols), params=params, info=info
    ).verify(A)


def extract_theorem3(A: ZeroOneMatrix, P: ZeroOneMatrix, on_degenerate: str = "fallback", **kw) -> ExtractionOutcome:
    """Homogeneous block for a simple 2 x k pattern via the ordered extractor at eps = 1/2."""
    if P.rows != 2 or not is_simple(P):
        raise PatternNotCovered("theorem 3 path needs a simple 2 x k pattern")
    require_square(A, "extract_theorem3")
    flip = canonical_zero_side(A)
    B = A.complement() if flip else A
    Q = P.complement() if flip else P
    try:
        out = extract_ordered_general(B, Q, Fraction(1, 2), on_degenerate="raise", **kw)
    except DegenerateSize as exc:
        if on_degenerate == "raise":
            raise
        out = degenerate(B, "ordered", "fallback", str(exc), values=(0, 1))
    res = map_outcome(
        out,
        flip_value=flip,
        pattern_map=(lambda p: p.complement()) if flip else None,
        method="theorem3",
    )
    res.info["complemented"] = flip
    return res.verify(A)
