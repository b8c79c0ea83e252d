"""Exact brute-force references.

Nothing here reuses the containment module: ``oracle_contains`` gathers every
(row subset, column subset) slice with numpy fancy indexing and compares it to
every admissible form of the pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .blocks import HomogeneousBlock
from .errors import InvalidParams, NoQualifyingMatrix, SizeLimitExceeded
from .matrix import SubmatrixWitness, ZeroOneMatrix

__all__ = [
    "EXACT_LIMIT",
    "BICLIQUE_LIMIT",
    "SquareResult",
    "Biclique",
    "GoodnessReport",
    "max_homogeneous_square",
    "max_square_by_components",
    "max_balanced_biclique",
    "oracle_contains",
    "oracle_contains_batch",
    "enumerate_simple",
    "all_matrices",
    "goodness_estimate",
]

EXACT_LIMIT = 24
BICLIQUE_LIMIT = 30
DEFAULT_BUDGET = 2_000_000
COMBO_BUDGET = 50_000_000


# ---------------------------------------------------------------------------
# maximum homogeneous square


@dataclass(frozen=True)
class SquareResult:
    size: int
    value: int
    block: HomogeneousBlock | None
    exact: bool
    method: str

    def to_dict(self) -> dict:
        out = {"size": self.size, "value": self.value, "exact": self.exact, "method": self.method}
        if self.block is not None:
            out["rows"] = list(self.block.rows)
            out["cols"] = list(self.block.cols)
        else:
            out["rows"] = out["cols"] = []
        return out


def _square(value, size, rows, cols, exact, method) -> SquareResult:
    block = HomogeneousBlock.of(value, rows, cols) if size else None
    return SquareResult(int(size), int(value), block, exact, method)


def max_square_by_components(A: ZeroOneMatrix, value: int, side_limit: int = 16):
    """Exact max square via components of the conflict graph (entries != value).

    Rows and columns in different components never conflict, so each component
    contributes a Pareto frontier (rows taken, columns still usable) and the
    frontiers combine by max-plus convolution.  Returns ``(size, rows, cols)``,
    or None when some component has both sides larger than ``side_limit``.
    """
    n, m = A.shape
    bad = (A.array != value)
    ii, jj = np.nonzero(bad)
    g = coo_matrix((np.ones(len(ii)), (ii, n + jj)), shape=(n + m, n + m))
    ncomp, labels = connected_components(g, directed=False)
    comps: dict[int, tuple[list, list]] = {}
    for v, lab in enumerate(labels.tolist()):
        rows, cols = comps.setdefault(lab, ([], []))
        (rows if v < n else cols).append(v if v < n else v - n)

    frontiers = []
    for rows, cols in comps.values():
        front: dict[int, tuple[int, tuple, tuple]] = {}
        if len(rows) <= len(cols):
            small, big, nb_of = rows, cols, lambda r: [c for c in cols if bad[r, c]]
        else:
            small, big, nb_of = cols, rows, lambda c: [r for r in rows if bad[r, c]]
        if len(small) > side_limit:
            return None
        pos = {v: i for i, v in enumerate(big)}
        nbm = [sum(1 << pos[u] for u in nb_of(v)) for v in small]
        s = len(small)
        union = [0] * (1 << s)
        for mask in range(1, 1 << s):
            low = mask & -mask
            union[mask] = union[mask ^ low] | nbm[low.bit_length() - 1]
        for mask in range(1 << s):
            picked = tuple(small[i] for i in range(s) if mask >> i & 1)
            free = tuple(v for i, v in enumerate(big) if not union[mask] >> i & 1)
            if small is rows:
                x, y, rsel, csel = len(picked), len(free), picked, free
            else:
                x, y, rsel, csel = len(free), len(picked), free, picked
            if x not in front or front[x][0] < y:
                front[x] = (y, rsel, csel)
        frontiers.append(front)

    best = {0: (0, None)}  # total rows -> (total cols, backpointer)
    history = []
    for front in frontiers:
        nxt: dict[int, tuple[int, tuple]] = {}
        for x0, (y0, _) in best.items():
            for x1, (y1, _, _) in front.items():
                x, y = x0 + x1, y0 + y1
                if x not in nxt or nxt[x][0] < y:
                    nxt[x] = (y, (x0, x1))
        history.append(best)
        best = nxt
    size, at = max(((min(x, y), x) for x, (y, _) in best.items()), default=(0, 0))
    if size == 0:
        return 0, (), ()
    rows_out, cols_out = [], []
    x = at
    table = best
    for idx in range(len(frontiers) - 1, -1, -1):
        _, (x0, x1) = table[x]
        _, rsel, csel = frontiers[idx][x1]
        rows_out.extend(rsel)
        cols_out.extend(csel)
        table = history[idx]
        x = x0
    return size, tuple(sorted(rows_out)[:size]), tuple(sorted(cols_out)[:size])


def max_homogeneous_square(
    A: ZeroOneMatrix,
    value: int,
    *,
    exact_limit: int = EXACT_LIMIT,
    force: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> SquareResult:
    """Largest s x s submatrix filled with ``value``.

    Within ``exact_limit`` this is an unbudgeted branch and bound returning the
    lexicographically smallest optimal witness.  Above it, ``force`` runs a
    budgeted search, then the component method; the result is flagged
    ``exact=False`` only if neither could prove optimality.
    """
    if value not in (0, 1):
        raise InvalidParams("value must be 0 or 1")
    if A.is_empty:
        return _square(value, 0, (), (), True, "empty")
    if max(A.shape) <= exact_limit:
        size, rows, cols, _ = kernels.max_square(A, value, 0, -1)
        return _square(value, size, rows, cols, True, "bnb")
    if not force:
        raise SizeLimitExceeded(f"{A.rows}x{A.cols} exceeds the exact limit {exact_limit}; pass force=True")
    flip = A.rows > A.cols
    B = A.transpose() if flip else A
    size, rows, cols, complete = kernels.max_square(B, value, 0, budget)
    if flip:
        rows, cols = tuple(sorted(cols)), tuple(sorted(rows))
    if complete:
        return _square(value, size, rows, cols, True, "bnb")
    comp = max_square_by_components(A, value)
    if comp is not None and comp[0] >= size:
        return _square(value, comp[0], comp[1], comp[2], True, "components")
    return _square(value, size, rows, cols, False, "bnb-budget")


# ---------------------------------------------------------------------------
# balanced biclique


@dataclass(frozen=True)
class Biclique:
    size: int
    S: tuple[int, ...]
    T: tuple[int, ...]
    exact: bool


def max_balanced_biclique(adjacency, *, exact_limit: int = BICLIQUE_LIMIT, budget: int = DEFAULT_BUDGET) -> Biclique:
    """Disjoint S, T of equal size m, every S-T pair adjacent, m maximum.

    Reduces to the max all-1 square of the adjacency matrix with a zeroed
    diagonal (a shared vertex would need a self-loop, so S and T come out
    disjoint).  Above ``exact_limit`` vertices the search is budgeted.
    """
    adj = np.array(adjacency, dtype=np.uint8)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise InvalidParams("adjacency must be square")
    if not np.array_equal(adj, adj.T):
        raise InvalidParams("adjacency must be symmetric")
    n = adj.shape[0]
    if n == 0:
        return Biclique(0, (), (), True)
    np.fill_diagonal(adj, 0)
    M = ZeroOneMatrix._wrap(adj)
    size, S, T, complete = kernels.max_square(M, 1, 0, -1 if n <= exact_limit else budget)
    return Biclique(int(size), tuple(S), tuple(T), bool(complete))


# ---------------------------------------------------------------------------
# independent containment oracle


def _variants(P: np.ndarray, unordered: bool) -> np.ndarray:
    if not unordered:
        return P[None]
    k, b = P.shape
    seen = {}
    for rp in permutations(range(k)):
        for cp in permutations(range(b)):
            v = P[np.ix_(rp, cp)]
            seen.setdefault(v.tobytes(), v)
    return np.stack(list(seen.values()))


def _combos(n: int, k: int) -> np.ndarray:
    c = list(combinations(range(n), k))
    return np.array(c, dtype=np.intp).reshape(len(c), k)


def oracle_contains_batch(stack, P, unordered: bool = False):
    """Containment for a stack of equally shaped matrices at once.

    Returns ``(found, row_index, col_index)`` arrays; the witness of matrix t
    is ``rows_combos[row_index[t]]`` x ``col_combos[col_index[t]]`` (lexicographic
    first), or -1 when not found.  Also returns the two combination tables.
    """
    S = np.asarray(stack, dtype=np.uint8)
    Pa = np.asarray(P.array if isinstance(P, ZeroOneMatrix) else P, dtype=np.uint8)
    N, n, m = S.shape
    k, b = Pa.shape
    if k > n or b > m:
        z = np.zeros(N, dtype=bool)
        return z, np.full(N, -1), np.full(N, -1), None, None
    R = _combos(n, k)
    C = _combos(m, b)
    V = _variants(Pa, unordered)
    if N * len(R) * len(C) * k * b * len(V) > COMBO_BUDGET * 4:
        raise SizeLimitExceeded("oracle enumeration too large")
    sub = S[:, R[:, None, :, None], C[None, :, None, :]]  # N, nr, nc, k, b
    hit = np.zeros(sub.shape[:3], dtype=bool)
    for v in V:
        hit |= (sub == v).all(axis=(3, 4))
    flat = hit.reshape(N, -1)
    found = flat.any(axis=1)
    first = np.where(found, flat.argmax(axis=1), -1)
    ri = np.where(found, first // len(C), -1)
    ci = np.where(found, first % len(C), -1)
    return found, ri, ci, R, C


def oracle_contains(A: ZeroOneMatrix, P: ZeroOneMatrix, unordered: bool = False):
    """Ground-truth containment with the lexicographically first witness."""
    from .containment import ContainmentResult  # result type only

    n, m = A.shape
    k, b = P.shape
    if k > n or b > m:
        return ContainmentResult(False)
    if math.comb(n, k) * math.comb(m, b) * k * b > COMBO_BUDGET:
        raise SizeLimitExceeded(f"{A.rows}x{A.cols} vs {k}x{b} exceeds the oracle budget")
    found, ri, ci, R, C = oracle_contains_batch(A.array[None], P, unordered)
    if not found[0]:
        return ContainmentResult(False)
    return ContainmentResult(True, SubmatrixWitness(tuple(R[ri[0]].tolist()), tuple(C[ci[0]].tolist())))


# ---------------------------------------------------------------------------
# exhaustive enumeration


def all_matrices(rows: int, cols: int) -> np.ndarray:
    """Every rows x cols 0-1 matrix, stacked in binary counting order."""
    cells = rows * cols
    if cells > 20:
        raise SizeLimitExceeded(f"2^{cells} matrices is too many")
    codes = np.arange(1 << cells, dtype=np.uint32)
    bits = (codes[:, None] >> np.arange(cells - 1, -1, -1, dtype=np.uint32)) & 1
    return bits.astype(np.uint8).reshape(-1, rows, cols)


def enumerate_simple(k: int, l: int, limit: int = 5) -> list:
    """All simple k x l matrices (both the 1-graph and the 0-graph are forests).

    Cell-by-cell backtracking that keeps one union-find per colour and rejects
    an assignment the moment it closes a cycle.
    """
    from .patterns import Pattern

    if k < 1 or l < 1:
        raise InvalidParams("dimensions must be positive")
    if k > limit or l > limit:
        raise SizeLimitExceeded(f"enumerate_simple supports up to {limit}x{limit}")
    nv = k + l
    out = []
    grid = np.zeros((k, l), dtype=np.uint8)

    def find(par, x):
        while par[x] != x:
            x = par[x]
        return x

    def rec(cell, parents):
        if cell == k * l:
            out.append(Pattern(grid.copy()))
            return
        i, j = divmod(cell, l)
        for v in (0, 1):
            par = parents[v]
            a, b = find(par, i), find(par, k + j)
            if a == b:
                continue
            new = list(par)
            new[a] = b
            grid[i, j] = v
            rec(cell + 1, (new, parents[1]) if v == 0 else (parents[0], new))

    rec(0, (list(range(nv)), list(range(nv))))
    return out


# ---------------------------------------------------------------------------
# empirical goodness


@dataclass(frozen=True)
class GoodnessReport:
    pattern: str
    eps: Fraction
    n: int
    mode: str
    samples: int
    min_max_all0: int
    realized_delta: Fraction
    exact: bool = True

    CSV_HEADER = ("pattern", "eps", "n", "mode", "samples", "min_max_all0", "realized_delta")

    def csv_row(self) -> list:
        return [self.pattern, str(self.eps), self.n, self.mode, self.samples, self.min_max_all0, str(self.realized_delta)]

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "eps": str(self.eps),
            "n": self.n,
            "mode": self.mode,
            "samples": self.samples,
            "min_max_all0": self.min_max_all0,
            "realized_delta": str(self.realized_delta),
            "exact": self.exact,
        }


def _frac(eps) -> Fraction:
    f = Fraction(eps).limit_denominator(10**6) if not isinstance(eps, Fraction) else eps
    if not 0 <= f <= 1:
        raise InvalidParams(f"eps must lie in [0, 1], got {eps}")
    return f


def _max0(A: ZeroOneMatrix) -> tuple[int, bool]:
    r = max_homogeneous_square(A, 0, force=True)
    return r.size, r.exact


def goodness_estimate(
    P: ZeroOneMatrix,
    eps,
    n: int,
    mode: str = "exhaustive",
    samples: int = 200,
    seed: int = 0,
    allow_n5: bool = False,
    local_steps: int | None = None,
) -> GoodnessReport:
    """Smallest max all-0 square over P-free n x n matrices with >= eps n^2 zeros.

    ``exhaustive`` ranges over all 2^(n^2) matrices (n <= 4, or 5 with
    ``allow_n5``).  ``sampled`` draws seeded random matrices, repairs copies of
    P, and then runs a bit-flip local search; its value is an upper bound.
    """
    from .containment import contains_ordered

    e = _frac(eps)
    need = e * n * n
    name = getattr(P, "name", None) or repr(P)
    if mode == "exhaustive":
        if n > 5 or (n == 5 and not allow_n5):
            raise SizeLimitExceeded("exhaustive goodness needs n <= 4 (or n = 5 with allow_n5)")
        stack = all_matrices(n, n)
        zeros = n * n - stack.reshape(len(stack), -1).sum(axis=1)
        dense = zeros >= need  # exact: zeros is an integer and need a Fraction
        idx = np.nonzero(dense)[0]
        found, *_ = oracle_contains_batch(stack[idx], P)
        idx = idx[~found]
        if len(idx) == 0:
            raise NoQualifyingMatrix(f"no {n}x{n} {name}-free matrix has >= {e} n^2 zeros")
        best = min(kernels.max_square(ZeroOneMatrix._wrap(stack[t]), 0, 0, -1)[0] for t in idx)
        return GoodnessReport(name, e, n, "exhaustive", int(len(idx)), int(best), Fraction(best, n))
    if mode != "sampled":
        raise InvalidParams(f"unknown goodness mode {mode!r}")

    rng = np.random.default_rng([int(seed), 0x600D])
    steps = n * n if local_steps is None else local_steps
    best = None
    exact_all = True
    qualified = 0
    ones_cells = [(i, j) for i in range(P.rows) for j in range(P.cols) if P.array[i, j]]
    for _ in range(samples):
        q = float(rng.uniform(0.0, 1.0)) * (1.0 - float(e))
        a = (rng.random((n, n)) < q).astype(np.uint8)
        A = ZeroOneMatrix._wrap(a)
        for _guard in range(n * n + 1):
            hit = contains_ordered(A, P)
            if not hit.found:
                break
            if ones_cells:
                i, j = ones_cells[0]
                A = A.with_entries([(hit.witness.rows[i], hit.witness.cols[j])], 0)
            else:  # all-0 pattern: break it by adding a 1
                A = A.with_entries([(hit.witness.rows[0], hit.witness.cols[0])], 1)
        else:
            continue
        if A.count(0) < need or contains_ordered(A, P).found:
            continue
        qualified += 1
        cur, ex = _max0(A)
        exact_all &= ex
        # local search: flips that keep A qualifying and shrink its max all-0 square
        for _step in range(steps):
            i, j = (int(x) for x in rng.integers(0, n, 2))
            B = A.with_entries([(i, j)], 1 - A[i, j])
            if B.count(0) < need or contains_ordered(B, P).found:
                continue
            s, ex = _max0(B)
            if s < cur:
                A, cur = B, s
                exact_all &= ex
        best = cur if best is None else min(best, cur)
    if best is None:
        raise NoQualifyingMatrix(f"no sampled {n}x{n} matrix qualified")
    return GoodnessReport(name, e, n, "sampled", qualified, int(best), Fraction(best, n), exact_all)
