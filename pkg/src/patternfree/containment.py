"""Ordered and unordered submatrix containment with lexicographic witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from . import kernels
from .errors import VerificationError
from .matrix import SubmatrixWitness, ZeroOneMatrix

__all__ = [
    "ContainmentResult",
    "contains_ordered",
    "contains_unordered",
    "count_ordered_copies",
    "iter_ordered_copies",
    "find_p2_row_pairs",
    "p2_pair_witnesses",
    "is_gamma_free",
    "is_permutation_of",
    "verify_copy",
]


@dataclass(frozen=True)
class ContainmentResult:
    found: bool
    witness: SubmatrixWitness | None = None

    def __bool__(self):
        return self.found

    def to_dict(self) -> dict:
        if not self.found:
            return {"found": False, "rows": None, "cols": None}
        return {"found": True, "rows": list(self.witness.rows), "cols": list(self.witness.cols)}


def _canon_cols(M: ZeroOneMatrix) -> list[tuple[int, ...]]:
    return sorted(tuple(c) for c in M.array.T.tolist())


def is_permutation_of(S: ZeroOneMatrix, P: ZeroOneMatrix) -> bool:
    """True iff S becomes P after permuting its rows and its columns."""
    if S.shape != P.shape:
        return False
    target = _canon_cols(P)
    for perm in permutations(range(S.rows)):
        if _canon_cols(S.slice(perm, range(S.cols))) == target:
            return True
    return False


def verify_copy(A: ZeroOneMatrix, P: ZeroOneMatrix, w: SubmatrixWitness, unordered: bool = False) -> None:
    """Raise VerificationError unless ``A[w]`` is P (or a permutation of it)."""
    w.check_bounds(A.shape)
    S = A.slice(w.rows, w.cols)
    ok = is_permutation_of(S, P) if unordered else S == P
    if not ok:
        raise VerificationError(f"witness {w.to_dict()} does not realise {P!r}")


def _result(hit) -> ContainmentResult:
    if hit is None:
        return ContainmentResult(False)
    return ContainmentResult(True, SubmatrixWitness(*hit))


def contains_ordered(A: ZeroOneMatrix, P: ZeroOneMatrix) -> ContainmentResult:
    """Lexicographically smallest ordered copy of P in A (rows first, then columns)."""
    return _result(kernels.ordered_first(A, P))


def contains_unordered(A: ZeroOneMatrix, P: ZeroOneMatrix) -> ContainmentResult:
    """Smallest host index sets whose submatrix is a row/column permutation of P."""
    return _result(kernels.unordered_first(A, P))


def count_ordered_copies(A: ZeroOneMatrix, P: ZeroOneMatrix, cap: int | None = None) -> int:
    """Exact number of ordered copies of P, saturated at ``cap`` (default 2 * rows of A)."""
    if cap is None:
        cap = 2 * A.rows
    return int(kernels.count_ordered(A, P, int(cap)))


def iter_ordered_copies(A: ZeroOneMatrix, P: ZeroOneMatrix) -> Iterator[SubmatrixWitness]:
    """All ordered copies in lexicographic order (rows, then columns)."""
    n, m = A.shape
    k, b = P.shape
    if k > n or b > m:
        return
    rm = A.row_masks
    full = (1 << m) - 1
    pcols = [tuple(c) for c in P.array.T.tolist()]
    for combo in combinations(range(n), k):
        masks = []
        for pc in pcols:
            mk = full
            for t, bit in enumerate(pc):
                mk &= rm[combo[t]] if bit else ~rm[combo[t]]
            masks.append(mk & full)
        if any(mk == 0 for mk in masks):
            continue
        yield from (SubmatrixWitness(combo, cols) for cols in _subseqs(masks, 0, -1))


def _subseqs(masks, j, last):
    if j == len(masks):
        yield ()
        return
    mk = masks[j] >> (last + 1)
    base = last + 1
    while mk:
        low = mk & -mk
        c = base + low.bit_length() - 1
        mk ^= low
        for rest in _subseqs(masks, j + 1, c):
            yield (c,) + rest


def find_p2_row_pairs(A: ZeroOneMatrix) -> set[tuple[int, int]]:
    """Row pairs (r, q), r < q, whose two rows contain P2 = [[1,0],[0,1]] in order."""
    return {(r, q) for r, q, _, _ in kernels.p2_pairs(A)}


def p2_pair_witnesses(A: ZeroOneMatrix) -> dict[tuple[int, int], SubmatrixWitness]:
    """Same pairs as :func:`find_p2_row_pairs`, each with its leftmost P2 copy."""
    return {(r, q): SubmatrixWitness((r, q), (c1, c2)) for r, q, c1, c2 in kernels.p2_pairs(A)}


def is_gamma_free(A: ZeroOneMatrix) -> bool:
    return bool(kernels.gamma_free(A))
