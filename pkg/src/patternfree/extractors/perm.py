"""Very sparse P-free matrices, where no column of P has two ones."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from ..blocks import ExtractionOutcome
from ..errors import PatternNotCovered, PreconditionFailed
from ..matrix import SubmatrixWitness, ZeroOneMatrix
from ..patterns import identity_concat
from ._common import as_eps, block, degenerate, fceil, require_square

__all__ = ["perm_dichotomy", "konig_block"]

COMBO_CAP = 200_000


def _matching(sub: np.ndarray) -> np.ndarray:
    """Row -> matched column (or -1) of a maximum matching on the 1-entries."""
    if not sub.any():
        return np.full(sub.shape[0], -1, dtype=np.intp)
    return maximum_bipartite_matching(csr_matrix(sub), perm_type="column")


def konig_block(sub: np.ndarray, match: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All-0 rows x cols left uncovered by the Konig cover of a maximum matching.

    Rows reachable from unmatched rows by alternating paths stay uncovered,
    together with the columns those paths never reach.
    """
    nr, nc = sub.shape
    col_owner = np.full(nc, -1, dtype=np.intp)
    for r, c in enumerate(match.tolist()):
        if c >= 0:
            col_owner[c] = r
    seen_r = match < 0
    seen_c = np.zeros(nc, dtype=bool)
    stack = np.flatnonzero(seen_r).tolist()
    while stack:
        r = stack.pop()
        for c in np.flatnonzero(sub[r]).tolist():
            if seen_c[c]:
                continue
            seen_c[c] = True
            r2 = int(col_owner[c])
            if r2 >= 0 and not seen_r[r2]:
                seen_r[r2] = True
                stack.append(r2)
    return np.flatnonzero(seen_r), np.flatnonzero(~seen_c)


def perm_dichotomy(
    A: ZeroOneMatrix,
    P: ZeroOneMatrix,
    s_override: int | None = None,
    eps_override=None,
    on_degenerate: str = "fallback",
    combo_cap: int = COMBO_CAP,
) -> ExtractionOutcome:
    """All-0 block or a copy of R = l side-by-side k x k identities.

    P has k-1 rows, l columns and at most one 1 per column, so it sits inside
    R.  The first m = n/s rows are cut into s strips of m columns; each strip
    has k diagonal q x q sub-blocks (q = m/k).  A maximum matching per
    sub-block gives independent 1-entries; one entry per sub-block forms a
    k x k identity unless an extra 1 spoils it.  A row set seen in l strips
    gives R.  Otherwise a sub-block with a small matching holds an all-0
    block by Konig's theorem.
    """
    if P.is_empty or int(P.array.sum(axis=0).max(initial=0)) > 1:
        raise PatternNotCovered("perm_dichotomy needs a pattern with at most one 1 per column")
    n = require_square(A, "perm_dichotomy")
    k = P.rows + 1
    l = P.cols
    s = int(s_override) if s_override else max(1, 2 * (l - 1) * (2 * k) ** k)
    e = as_eps(eps_override) if eps_override is not None else Fraction(1, 8 * s * s * k * k)
    method = "perm"
    params = {"k": k, "l": l, "s": s, "eps": str(e)}
    ones = A.count(1)
    if ones > e * n * n:
        raise PreconditionFailed(f"perm_dichotomy: {ones} one entries, at most {e * n * n} allowed")
    m = n // s
    q = m // k
    h = fceil(Fraction(q, 2))
    if s > n or q < 1 or h < 1:
        return degenerate(A, method, on_degenerate, f"strip sub-blocks vanish at n={n}, s={s}, k={k}", params=params)
    a = A.array
    R = identity_concat(k, l)
    per_block = max(1, int(round(combo_cap ** (1.0 / k))))
    info = {"m": m, "q": q, "threshold": h, "per_block_cap": per_block}
    families: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    small = None  # first sub-block with matching below the threshold
    for i in range(s):
        c0 = i * m
        entries = []
        for j in range(k):
            r0 = j * q
            sub = a[r0 : r0 + q, c0 + r0 : c0 + r0 + q]
            match = _matching(sub)
            size = int((match >= 0).sum())
            if size < h and small is None:
                small = (i, j, sub, match)
            pairs = [(r0 + r, c0 + r0 + int(c)) for r, c in enumerate(match.tolist()) if c >= 0]
            entries.append(pairs[:per_block])
        if any(not e_ for e_ in entries):
            continue
        seen_here = set()
        for choice in product(*entries):
            xs = [p[0] for p in choice]
            ys = [p[1] for p in choice]
            B = a[np.ix_(xs, ys)]
            if int(B.sum()) != k:
                continue
            S = tuple(xs)
            if S in seen_here:
                continue
            seen_here.add(S)
            fam = families.setdefault(S, [])
            fam.append(tuple(ys))
            if len(fam) == l:
                info["branch"] = "identity-families"
                return ExtractionOutcome(
                    method=method,
                    violation=SubmatrixWitness(S, tuple(c for ys_ in fam for c in ys_)),
                    violation_pattern=R,
                    params=params,
                    info=info,
                ).verify(A)
    info["row_sets"] = len(families)
    if small is not None:
        i, j, sub, match = small
        rr, cc = konig_block(sub, match)
        r0, c0 = j * q, i * m + j * q
        info.update(branch="konig", strip=i, sub_block=j)
        return ExtractionOutcome(
            method=method, block=block(0, rr + r0, cc + c0), params=params, info=info
        ).verify(A)
    return degenerate(A, method, on_degenerate, "every sub-block has a large matching but no R copy", params=params)
