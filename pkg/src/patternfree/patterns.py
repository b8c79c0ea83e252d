"""Named forbidden patterns and pattern classification.

Acyclicity is decided twice, by union-find over the 1-entries and by peeling
rows/columns with at most one 1; the two are cross-checked in the tests.
"""

from __future__ import annotations

import numpy as np

from .errors import FormatError, InvalidSize
from .matrix import ZeroOneMatrix, hstack, read_matrix

__all__ = [
    "Pattern",
    "checkerboard",
    "corner",
    "gamma",
    "identity_concat",
    "unordered_star",
    "is_acyclic",
    "is_acyclic_peeling",
    "is_simple",
    "simple_dimension_bound_holds",
    "parse_pattern",
    "reduce_to_core",
]


def is_acyclic(P: ZeroOneMatrix) -> bool:
    """True iff the bipartite graph on rows+cols with an edge per 1-entry is a forest."""
    k = P.rows
    parent = list(range(k + P.cols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in zip(*np.nonzero(P.array)):
        a, b = find(int(i)), find(k + int(j))
        if a == b:
            return False
        parent[a] = b
    return True


def reduce_to_core(P: ZeroOneMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Repeatedly delete rows and columns holding at most one 1.

    Returns the surviving (rows, cols); both empty iff P is acyclic.
    """
    a = P.array.astype(np.int64)
    rows = list(range(P.rows))
    cols = list(range(P.cols))
    changed = True
    while changed and rows and cols:
        sub = a[np.ix_(rows, cols)]
        keep_r = [r for r, s in zip(rows, sub.sum(axis=1)) if s >= 2]
        keep_c = [c for c, s in zip(cols, sub.sum(axis=0)) if s >= 2]
        changed = len(keep_r) != len(rows) or len(keep_c) != len(cols)
        rows, cols = keep_r, keep_c
    if not rows or not cols:
        return (), ()
    return tuple(rows), tuple(cols)


def is_acyclic_peeling(P: ZeroOneMatrix) -> bool:
    rows, cols = reduce_to_core(P)
    return not rows


def is_simple(P: ZeroOneMatrix) -> bool:
    return is_acyclic(P) and is_acyclic(P.complement())


def simple_dimension_bound_holds(k: int, l: int) -> bool:
    return (k - 2) * (l - 2) <= 2


class Pattern(ZeroOneMatrix):
    """A matrix in the role of a forbidden submatrix, with cached classification."""

    __slots__ = (
        "name",
        "acyclic",
        "complement_acyclic",
        "has_homogeneous_row",
        "has_homogeneous_col",
    )

    def __init__(self, data, name: str | None = None):
        if isinstance(data, ZeroOneMatrix):
            data = data.array
        super().__init__(data)
        if self.is_empty:
            raise InvalidSize("a pattern must have at least one row and one column")
        a = self.array
        self.name = name or repr(ZeroOneMatrix._wrap(a))
        self.acyclic = is_acyclic(self)
        self.complement_acyclic = is_acyclic(self.complement())
        self.has_homogeneous_row = bool(((a.min(axis=1) == a.max(axis=1))).any())
        self.has_homogeneous_col = bool(((a.min(axis=0) == a.max(axis=0))).any())

    @property
    def simple(self) -> bool:
        return self.acyclic and self.complement_acyclic

    def flags(self) -> dict:
        return {
            "shape": list(self.shape),
            "acyclic": self.acyclic,
            "complement_acyclic": self.complement_acyclic,
            "simple": self.simple,
            "homogeneous_row": self.has_homogeneous_row,
            "homogeneous_col": self.has_homogeneous_col,
        }

    def __repr__(self):
        return f"Pattern({self.name})"


def _need(v: int, what: str) -> int:
    v = int(v)
    if v < 1:
        raise InvalidSize(f"{what} must be at least 1, got {v}")
    return v


def checkerboard(k: int, rows: int = 2) -> Pattern:
    """P_k: ``rows`` x k, entry 1 iff (i + j) is even with 1-based indices."""
    k = _need(k, "k")
    rows = _need(rows, "rows")
    i = np.arange(rows)[:, None]
    j = np.arange(k)[None, :]
    # 0-based i+j has the same parity as 1-based (i+1)+(j+1)
    name = f"P{k}" if rows == 2 else f"checkerboard {rows}x{k}"
    return Pattern(((i + j) % 2 == 0).astype(np.uint8), name)


def corner(k: int) -> Pattern:
    """Q_k: 2 x (k+1), first row k ones then a zero, second row zero."""
    k = _need(k, "k")
    a = np.zeros((2, k + 1), dtype=np.uint8)
    a[0, :k] = 1
    return Pattern(a, f"Q{k}")


def gamma() -> Pattern:
    return Pattern([[1, 1], [1, 0]], "Gamma")


def identity_concat(k: int, l: int) -> Pattern:
    """k x kl: l identity blocks side by side."""
    k = _need(k, "k")
    l = _need(l, "l")
    eye = ZeroOneMatrix.identity(k)
    return Pattern(hstack(*([eye] * l)), f"R({k},{l})")


def unordered_star(k: int) -> Pattern:
    """2 x (2k+2): k columns (1,0), k columns (0,1), one (1,1), one (0,0)."""
    k = _need(k, "k")
    top = [1] * k + [0] * k + [1, 0]
    bottom = [0] * k + [1] * k + [1, 0]
    return Pattern([top, bottom], f"S{k}")


def _dims(text: str) -> tuple[int, int]:
    a, sep, b = text.lower().partition("x")
    if not sep:
        raise ValueError(text)
    return int(a), int(b)


def parse_pattern(spec: str) -> Pattern:
    """CLI pattern syntax.

    ``P2k:4`` checkerboard P_4 (``P2k:RxC`` gives an R x C checkerboard),
    ``Qk:3`` corner Q_3, ``gamma``, ``R:2x3`` identity concatenation,
    ``S:2`` unordered star, ``M:10,01`` literal rows, ``@file.txt`` matrix file.
    """
    s = spec.strip()
    try:
        if s.startswith("@"):
            return Pattern(read_matrix(s[1:]), s[1:])
        kind, _, arg = s.partition(":")
        kind = kind.lower()
        if kind == "gamma" and not arg:
            return gamma()
        if kind == "p2k":
            if "x" in arg.lower():
                r, c = _dims(arg)
                return checkerboard(c, rows=r)
            return checkerboard(int(arg))
        if kind == "qk":
            return corner(int(arg))
        if kind == "r":
            k, l = _dims(arg)
            return identity_concat(k, l)
        if kind == "s":
            return unordered_star(int(arg))
        if kind == "m":
            return Pattern(ZeroOneMatrix.from_rows(arg.split(",")), s)
    except (ValueError, OSError) as exc:
        if isinstance(exc, (InvalidSize, FormatError)):
            raise
        raise FormatError(f"bad pattern spec {spec!r}: {exc}") from exc
    raise FormatError(f"unknown pattern spec {spec!r}")
