"""Totally balanced matrices, chordal bipartite graphs and halfplane incidences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .blocks import ExtractionOutcome, HomogeneousBlock
from .containment import contains_ordered, is_gamma_free
from .errors import (
    InvalidParams,
    NotChordalBipartite,
    NotTotallyBalanced,
    OrderingNotFound,
    SizeLimitExceeded,
    VerificationError,
)
from .extractors import extract_theorem2, extract_theorem_2by2
from .matrix import SubmatrixWitness, ZeroOneMatrix
from .patterns import checkerboard

__all__ = [
    "Reordering",
    "BalanceVerdict",
    "ChordalPair",
    "HalfplaneOrdering",
    "doubly_lexical_order",
    "is_doubly_lexical",
    "gamma_to_q1",
    "find_cycle_submatrix",
    "is_cycle_incidence",
    "balance_verdict",
    "is_totally_balanced",
    "totally_balanced_homogeneous",
    "chordal_bipartite_homogeneous",
    "halfplane_incidence",
    "find_halfplane_ordering",
    "halfplane_homogeneous",
]

CYCLE_BUDGET = 2_000_000
GEOM_EPS = 1e-9


@dataclass(frozen=True)
class Reordering:
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]

    def __post_init__(self):
        for p in (self.row_perm, self.col_perm):
            if sorted(p) != list(range(len(p))):
                raise InvalidParams("a reordering must consist of two permutations")

    def apply(self, A: ZeroOneMatrix) -> ZeroOneMatrix:
        return ZeroOneMatrix._wrap(np.ascontiguousarray(A.array[np.ix_(self.row_perm, self.col_perm)]))

    def to_dict(self) -> dict:
        return {"row_perm": list(self.row_perm), "col_perm": list(self.col_perm)}


def _sorted_order(vectors: np.ndarray) -> np.ndarray:
    """Stable ascending order of rows read with the last entry most significant."""
    if vectors.shape[1] == 0:
        return np.arange(vectors.shape[0])
    return np.lexsort(vectors.T)  # lexsort's primary key is the last one given


def _nondecreasing(m: np.ndarray) -> bool:
    keys = [tuple(r[::-1]) for r in m.tolist()]
    return all(keys[i] <= keys[i + 1] for i in range(len(keys) - 1))


def is_doubly_lexical(A: ZeroOneMatrix) -> bool:
    """Rows and columns are non-decreasing, each read with its last entry most significant."""
    return _nondecreasing(A.array) and _nondecreasing(A.array.T)


def doubly_lexical_order(A: ZeroOneMatrix, max_rounds: int | None = None) -> Reordering:
    """Doubly lexical reordering by alternately sorting rows and columns to a fixed point."""
    a = A.array
    rp = np.arange(A.rows)
    cp = np.arange(A.cols)
    rounds = max_rounds or 4 * (A.rows + A.cols) + 8
    for _ in range(rounds):
        rp2 = rp[_sorted_order(a[np.ix_(rp, cp)])]
        cp2 = cp[_sorted_order(a[np.ix_(rp2, cp)].T)]
        if np.array_equal(rp2, rp) and np.array_equal(cp2, cp):
            break
        rp, cp = rp2, cp2
    else:  # pragma: no cover - refinement always settles well inside the bound
        raise VerificationError("doubly lexical refinement did not settle")
    return Reordering(tuple(int(i) for i in rp), tuple(int(j) for j in cp))


def gamma_to_q1(A: ZeroOneMatrix) -> ZeroOneMatrix:
    """Complement, then reverse both index orders: Gamma copies become Q1 copies."""
    return A.complement().reversed(rows=True, cols=True)


def is_cycle_incidence(S: ZeroOneMatrix) -> bool:
    """True iff S (k x k, k >= 3) is the biadjacency matrix of a single cycle of length 2k."""
    a = S.array
    k = S.rows
    if k < 3 or S.cols != k:
        return False
    if not ((a.sum(axis=0) == 2).all() and (a.sum(axis=1) == 2).all()):
        return False
    seen_r = {0}
    frontier = [("r", 0)]
    seen_c: set[int] = set()
    while frontier:
        side, v = frontier.pop()
        if side == "r":
            for c in np.flatnonzero(a[v]).tolist():
                if c not in seen_c:
                    seen_c.add(c)
                    frontier.append(("c", c))
        else:
            for r in np.flatnonzero(a[:, v]).tolist():
                if r not in seen_r:
                    seen_r.add(r)
                    frontier.append(("r", r))
    return len(seen_r) == k and len(seen_c) == k


def find_cycle_submatrix(A: ZeroOneMatrix, budget: int = CYCLE_BUDGET) -> SubmatrixWitness | None:
    """Rows and columns of an induced cycle of length >= 6 in the bipartite 1-entry graph.

    Depth-first search over induced paths whose start is the smallest vertex
    of the cycle.  Raises SizeLimitExceeded when the budget runs out.
    """
    n, m = A.shape
    a = A.array
    nb = [set((np.flatnonzero(a[i]) + n).tolist()) for i in range(n)]
    nb += [set(np.flatnonzero(a[:, j]).tolist()) for j in range(m)]
    steps = 0

    def extend(path, blocked):
        nonlocal steps
        s, last = path[0], path[-1]
        for w in sorted(nb[last]):
            steps += 1
            if steps > budget:
                raise SizeLimitExceeded("cycle search budget exhausted")
            if w <= s or w in blocked:
                continue
            # w must not touch the interior of the path
            if any(w in nb[u] for u in path[1:-1]):
                continue
            if len(path) > 1 and s in nb[w]:
                if len(path) + 1 >= 6:
                    return path + [w]
                continue
            found = extend(path + [w], blocked | {w})
            if found:
                return found
        return None

    for s in range(n + m):
        if len(nb[s]) < 2:
            continue
        cyc = extend([s], {s})
        if cyc:
            rows = tuple(sorted(v for v in cyc if v < n))
            cols = tuple(sorted(v - n for v in cyc if v >= n))
            return SubmatrixWitness(rows, cols)
    return None


@dataclass(frozen=True)
class BalanceVerdict:
    balanced: bool
    reordering: Reordering
    cycle: SubmatrixWitness | None = None
    certificate_complete: bool = True

    def to_dict(self) -> dict:
        out = {"balanced": self.balanced, "reordering": self.reordering.to_dict()}
        if not self.balanced:
            out["cycle"] = self.cycle.to_dict() if self.cycle else None
            out["certificate_complete"] = self.certificate_complete
        return out


def balance_verdict(A: ZeroOneMatrix, certificate: bool = True, budget: int = CYCLE_BUDGET) -> BalanceVerdict:
    """Totally balanced test with certificates.

    Positive: a doubly lexical reordering that is Gamma-free.  Negative: a
    cycle incidence submatrix, when the budgeted search finds one in time.
    """
    order = doubly_lexical_order(A)
    if is_gamma_free(order.apply(A)):
        return BalanceVerdict(True, order)
    if not certificate:
        return BalanceVerdict(False, order, None, False)
    try:
        cyc = find_cycle_submatrix(A, budget)
    except SizeLimitExceeded:
        return BalanceVerdict(False, order, None, False)
    if cyc is None or not is_cycle_incidence(A.slice(cyc.rows, cyc.cols)):
        raise VerificationError("Gamma in a doubly lexical order but no cycle submatrix")  # pragma: no cover
    return BalanceVerdict(False, order, cyc, True)


def is_totally_balanced(A: ZeroOneMatrix) -> bool:
    """No submatrix is the incidence matrix of a cycle (of length at least 6)."""
    return balance_verdict(A, certificate=False).balanced


def totally_balanced_homogeneous(A: ZeroOneMatrix, on_degenerate: str = "fallback") -> ExtractionOutcome:
    """Homogeneous block of size about n/20 in a totally balanced n x n matrix.

    The doubly lexical reordering A1 is Gamma-free, so A2 = reversed
    complement of A1 is Q1-free and the corner theorem applies.  The block
    is carried back through the reversal, the complement and the reordering.
    """
    v = balance_verdict(A, certificate=False)
    if not v.balanced:
        raise NotTotallyBalanced("matrix is not totally balanced")
    A1 = v.reordering.apply(A)
    A2 = gamma_to_q1(A1)
    inner = extract_theorem2(A2, on_degenerate=on_degenerate)
    if inner.block is None:
        raise VerificationError("reduced matrix unexpectedly contains Q1")  # pragma: no cover
    n, m = A.shape
    rp, cp = v.reordering.row_perm, v.reordering.col_perm
    b = inner.block
    rows = sorted(rp[n - 1 - i] for i in b.rows)
    cols = sorted(cp[m - 1 - j] for j in b.cols)
    out = ExtractionOutcome(
        method="totally_balanced",
        block=HomogeneousBlock(1 - b.value, SubmatrixWitness(tuple(rows), tuple(cols))),
        fallback=inner.fallback,
        exact=inner.exact,
        params=dict(inner.params),
        info={"inner_method": inner.info.get("inner_method", inner.method), "reordering": v.reordering.to_dict()},
    )
    return out.verify(A)


@dataclass(frozen=True)
class ChordalPair:
    left: tuple[int, ...]
    right: tuple[int, ...]
    verdict: str  # "complete" or "empty"
    fallback: bool = False

    @property
    def size(self) -> int:
        return min(len(self.left), len(self.right))

    def to_dict(self) -> dict:
        return {"left": list(self.left), "right": list(self.right), "verdict": self.verdict, "size": self.size, "fallback": self.fallback}


def chordal_bipartite_homogeneous(biadjacency: ZeroOneMatrix) -> ChordalPair:
    """Equal-size vertex sets A', B' that are completely joined or fully non-adjacent."""
    try:
        out = totally_balanced_homogeneous(biadjacency)
    except NotTotallyBalanced as exc:
        raise NotChordalBipartite("graph is not chordal bipartite") from exc
    sq = out.block.square()
    return ChordalPair(sq.rows, sq.cols, "complete" if sq.value == 1 else "empty", out.fallback)


# ---------------------------------------------------------------------------
# halfplanes


def _exact(*xs) -> bool:
    return all(isinstance(x, Rational) for x in xs)


def _inside(p, h) -> bool:
    x, y = p
    a, b, side = h
    if side not in ("above", "below"):
        raise InvalidParams(f"halfplane side must be 'above' or 'below', got {side!r}")
    if _exact(x, y, a, b):
        d = Fraction(y) - (Fraction(a) * Fraction(x) + Fraction(b))
        return d >= 0 if side == "above" else d <= 0
    d = float(y) - (float(a) * float(x) + float(b))
    return d >= -GEOM_EPS if side == "above" else d <= GEOM_EPS


def halfplane_incidence(points: Sequence, halfplanes: Sequence) -> ZeroOneMatrix:
    """M(p, H) = 1 iff point p lies in halfplane H (boundary counts as inside).

    Halfplanes are (slope a, intercept b, side) with side "above" for
    y >= a x + b and "below" for y <= a x + b.
    """
    if not points or not halfplanes:
        raise InvalidParams("need at least one point and one halfplane")
    return ZeroOneMatrix([[1 if _inside(p, h) else 0 for h in halfplanes] for p in points])


@dataclass(frozen=True)
class HalfplaneOrdering:
    point_order: tuple[int, ...]
    classes: dict  # side -> column order (original halfplane indices)

    def to_dict(self) -> dict:
        return {"point_order": list(self.point_order), "classes": {k: list(v) for k, v in self.classes.items()}}


def find_halfplane_ordering(points: Sequence, halfplanes: Sequence) -> HalfplaneOrdering:
    """First tried ordering under which every side class is P2-free.

    Points are tried by x (then y) in both directions; within each side class
    halfplanes by slope (then intercept) in both directions.
    """
    M = halfplane_incidence(points, halfplanes)
    p2 = checkerboard(2)
    by_x = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1], i))
    for porder in (by_x, by_x[::-1]):
        classes = {}
        for side in ("above", "below"):
            idx = [j for j, h in enumerate(halfplanes) if h[2] == side]
            if not idx:
                continue
            by_slope = sorted(idx, key=lambda j: (halfplanes[j][0], halfplanes[j][1], j))
            for corder in (by_slope, by_slope[::-1]):
                if not contains_ordered(M.slice(porder, corder), p2):
                    classes[side] = tuple(corder)
                    break
            else:
                break
        else:
            return HalfplaneOrdering(tuple(porder), classes)
    raise OrderingNotFound("no tried ordering makes every side class P2-free")


def halfplane_homogeneous(points: Sequence, halfplanes: Sequence, on_degenerate: str = "fallback"):
    """Homogeneous block of the incidence matrix through a verified P2-free ordering.

    Uses the side class with most halfplanes, cut to a square, and the 2 x 2
    dispatcher with P2.  Returns (ordering, outcome) with the outcome in the
    coordinates of the full incidence matrix.
    """
    order = find_halfplane_ordering(points, halfplanes)
    M = halfplane_incidence(points, halfplanes)
    side = max(order.classes, key=lambda s: (len(order.classes[s]), s == "below"))
    cols = order.classes[side]
    s = min(len(order.point_order), len(cols))
    rows = order.point_order[:s]
    cols = cols[:s]
    S = M.slice(rows, cols)
    inner = extract_theorem_2by2(S, checkerboard(2), on_degenerate=on_degenerate)
    if inner.block is None:
        raise VerificationError("ordered side class unexpectedly contains P2")  # pragma: no cover
    b = inner.block
    out = ExtractionOutcome(
        method="halfplanes",
        block=HomogeneousBlock(
            b.value,
            SubmatrixWitness(tuple(sorted(rows[i] for i in b.rows)), tuple(sorted(cols[j] for j in b.cols))),
        ),
        fallback=inner.fallback,
        exact=inner.exact,
        info={"side": side, "square": s},
    )
    return order, out.verify(M)
