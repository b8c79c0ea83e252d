"""Pure-Python search kernels (the fallback backend).

Same contract as the compiled ``_native`` module; rows are Python-int
bitmasks (bit ``j`` = column ``j``).  Every function takes ``ZeroOneMatrix``
arguments and returns plain tuples.
"""

from __future__ import annotations

from itertools import combinations, permutations

BACKEND = "python"


def _lowbit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _col_mask(rm, combo, colvec, full):
    mk = full
    for t, bit in enumerate(colvec):
        mk &= rm[combo[t]] if bit else ~rm[combo[t]]
    return mk & full


def ordered_first(A, P):
    """Lexicographically first (rows, cols) with ``A[rows x cols] == P``, or None."""
    n, m = A.shape
    k, b = P.shape
    if k == 0 or b == 0 or k > n or b > m:
        return None
    rm = A.row_masks
    full = (1 << m) - 1
    pcols = [tuple(col) for col in P.array.T.tolist()]
    for combo in combinations(range(n), k):
        cache = {}
        pos = 0
        cols = []
        for j, pc in enumerate(pcols):
            mk = cache.get(pc)
            if mk is None:
                mk = cache[pc] = _col_mask(rm, combo, pc, full)
            rest = mk >> pos
            if not rest:
                break
            c = pos + _lowbit(rest)
            if m - c < b - j:
                break
            cols.append(c)
            pos = c + 1
        else:
            return combo, tuple(cols)
    return None


def _row_perm_demands(P):
    rows = [tuple(r) for r in P.array.tolist()]
    seen = set()
    out = []
    for perm in permutations(rows):
        if perm in seen:
            continue
        seen.add(perm)
        demand: dict[tuple, int] = {}
        for colvec in zip(*perm):
            demand[colvec] = demand.get(colvec, 0) + 1
        out.append(demand)
    return out


def unordered_first(A, P):
    """Lexicographically first (rows, cols) whose slice is a row/column permutation of P."""
    n, m = A.shape
    k, b = P.shape
    if k == 0 or b == 0 or k > n or b > m:
        return None
    rm = A.row_masks
    full = (1 << m) - 1
    demands = _row_perm_demands(P)
    for combo in combinations(range(n), k):
        best = None
        for demand in demands:
            chosen = []
            for colvec, cnt in demand.items():
                mk = _col_mask(rm, combo, colvec, full)
                if mk.bit_count() < cnt:
                    break
                for _ in range(cnt):
                    low = mk & -mk
                    chosen.append(low.bit_length() - 1)
                    mk ^= low
            else:
                cols = tuple(sorted(chosen))
                if best is None or cols < best:
                    best = cols
        if best is not None:
            return combo, best
    return None


def count_ordered(A, P, cap: int) -> int:
    """Number of (row set, column set) pairs whose slice equals P, saturated at cap."""
    n, m = A.shape
    k, b = P.shape
    if k == 0 or b == 0 or k > n or b > m or cap <= 0:
        return 0
    rm = A.row_masks
    full = (1 << m) - 1
    pcols = [tuple(col) for col in P.array.T.tolist()]
    total = 0
    for combo in combinations(range(n), k):
        masks = [_col_mask(rm, combo, pc, full) for pc in pcols]
        union = 0
        for mk in masks:
            union |= mk
        if masks[0] == 0:
            continue
        ways = [1] + [0] * b
        while union:
            low = union & -union
            union ^= low
            for j in range(b - 1, -1, -1):
                if masks[j] & low:
                    ways[j + 1] += ways[j]
        total += ways[b]
        if total >= cap:
            return cap
    return total


def p2_pairs(A):
    """All (r, q, c1, c2) with r<q, c1<c2 and ``A[{r,q} x {c1,c2}] == [[1,0],[0,1]]``.

    One witness per row pair: the lexicographically smallest column pair.
    """
    rm = A.row_masks
    n = len(rm)
    out = []
    for r in range(n):
        a = rm[r]
        if not a:
            continue
        for q in range(r + 1, n):
            u = a & ~rm[q]
            if not u:
                continue
            c1 = _lowbit(u)
            w = (rm[q] & ~a) >> (c1 + 1)
            if w:
                out.append((r, q, c1, c1 + 1 + _lowbit(w)))
    return out


def gamma_free(A) -> bool:
    rm = A.row_masks
    n = len(rm)
    for r in range(n):
        a = rm[r]
        for q in range(r + 1, n):
            common = a & rm[q]
            if not common:
                continue
            c = _lowbit(common)
            if (a & ~rm[q]) >> (c + 1):
                return False
    return True


def max_square(A, value: int, lower: int = 0, budget: int = -1):
    """Branch and bound for the largest s x s block equal to ``value``.

    Returns ``(size, rows, cols, complete)``.  Row subsets are explored in
    lexicographic order, so the first set reaching the optimum is the
    lexicographically smallest one.  ``lower`` seeds the incumbent (search
    only for sizes >= lower); ``budget`` caps visited nodes (-1: unlimited).
    """
    n, m = A.shape
    full = (1 << m) - 1
    rows = list(A.row_masks) if value else [~r & full for r in A.row_masks]
    state = {"best": max(lower - 1, 0), "rows": (), "mask": 0, "nodes": 0, "abort": False}
    cur: list[int] = []

    def search(mask: int, cand: list[int]):
        state["nodes"] += 1
        if 0 <= budget < state["nodes"]:
            state["abort"] = True
            return
        best = state["best"]
        pc = mask.bit_count()
        val = min(len(cur), pc)
        if val > best:
            state["best"] = best = val
            state["rows"] = tuple(cur[:val])
            state["mask"] = mask
        if pc <= best:
            return
        newc = [r for r in cand if (mask & rows[r]).bit_count() > best]
        depth = len(cur)
        nn = len(newc)
        for idx, r in enumerate(newc):
            if state["abort"]:
                return
            best = state["best"]
            if depth + nn - idx <= best:
                break
            child = mask & rows[r]
            if child.bit_count() <= best:
                continue
            cur.append(r)
            search(child, newc[idx + 1:])
            cur.pop()

    search(full, list(range(n)))
    size = len(state["rows"])
    cols = []
    mask = state["mask"]
    while mask and len(cols) < size:
        low = mask & -mask
        cols.append(low.bit_length() - 1)
        mask ^= low
    return size, state["rows"], tuple(cols), not state["abort"]
