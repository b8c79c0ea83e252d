"""Immutable 0-1 matrices, index sets and submatrix witnesses.

Storage is a read-only ``uint8`` numpy array.  Row and column bitmasks
(Python ints, bit ``j`` of row mask ``i`` is ``A[i, j]``) are packed lazily;
they give word-parallel AND/OR/ANDNOT and ``int.bit_count`` popcounts, which
is what the pure-Python kernels run on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyMatrix, FormatError, IndexOutOfRange, InvalidParams

__all__ = [
    "ZeroOneMatrix",
    "SubmatrixWitness",
    "index_set",
    "complement",
    "transpose",
    "submatrix",
    "count",
    "homogeneous_value",
    "parse",
    "emit",
    "read_matrix",
    "write_matrix",
    "hstack",
    "vstack",
]


def _pack_rows(a: np.ndarray) -> tuple[int, ...]:
    if a.shape[1] == 0:
        return tuple(0 for _ in range(a.shape[0]))
    packed = np.packbits(a, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


class ZeroOneMatrix:
    """Dense rectangular matrix of bits. Immutable; operations return new values."""

    __slots__ = ("_a", "_row_masks", "_col_masks", "_hash")

    def __init__(self, data):
        arr = np.asarray(data)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise InvalidParams(f"expected a 2-D array, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise InvalidParams("entries must be 0 or 1")
        a = np.array(arr, dtype=np.uint8, order="C", copy=True)
        a.setflags(write=False)
        self._a = a
        self._row_masks = None
        self._col_masks = None
        self._hash = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "ZeroOneMatrix":
        # trusted fast path: `a` must already be a 0/1 uint8 array nobody else mutates
        obj = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.uint8)
        a.setflags(write=False)
        obj._a = a
        obj._row_masks = None
        obj._col_masks = None
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ZeroOneMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "ZeroOneMatrix":
        return cls._wrap(np.ones((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "ZeroOneMatrix":
        return cls._wrap(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "ZeroOneMatrix":
        """Build from strings like ``"1010"``."""
        return cls([[int(ch) for ch in r] for r in rows])

    # -- basic accessors ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying ``uint8`` array."""
        return self._a

    @property
    def is_empty(self) -> bool:
        return self._a.size == 0

    @property
    def row_masks(self) -> tuple[int, ...]:
        if self._row_masks is None:
            self._row_masks = _pack_rows(self._a)
        return self._row_masks

    @property
    def col_masks(self) -> tuple[int, ...]:
        if self._col_masks is None:
            self._col_masks = _pack_rows(np.ascontiguousarray(self._a.T))
        return self._col_masks

    def __getitem__(self, key):
        i, j = key
        return int(self._a[i, j])

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def __eq__(self, other):
        if not isinstance(other, ZeroOneMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._a.tobytes()))
        return self._hash

    def __repr__(self):
        body = ",".join("".join(map(str, r)) for r in self._a.tolist())
        return f"{type(self).__name__}({self.rows}x{self.cols}:{body})"

    def __str__(self):
        return "\n".join("".join(map(str, r)) for r in self._a.tolist())

    # -- transformations ----------------------------------------------------

    def complement(self) -> "ZeroOneMatrix":
        return ZeroOneMatrix._wrap(1 - self._a)

    def transpose(self) -> "ZeroOneMatrix":
        return ZeroOneMatrix._wrap(self._a.T.copy())

    @property
    def T(self) -> "ZeroOneMatrix":
        return self.transpose()

    def reversed(self, rows: bool = True, cols: bool = True) -> "ZeroOneMatrix":
        """Reverse the row order and/or the column order."""
        a = self._a
        if rows:
            a = a[::-1, :]
        if cols:
            a = a[:, ::-1]
        return ZeroOneMatrix._wrap(a.copy())

    def slice(self, rows: Sequence[int], cols: Sequence[int]) -> "ZeroOneMatrix":
        """Submatrix on the given row and column indices (in the given order).

        Empty index sequences are allowed and give an empty matrix.
        """
        r = np.asarray(rows, dtype=np.intp).reshape(-1)
        c = np.asarray(cols, dtype=np.intp).reshape(-1)
        if r.size and (r.min() < 0 or r.max() >= self.rows):
            raise IndexOutOfRange(f"row index out of range for {self.rows} rows")
        if c.size and (c.min() < 0 or c.max() >= self.cols):
            raise IndexOutOfRange(f"column index out of range for {self.cols} columns")
        return ZeroOneMatrix._wrap(self._a[np.ix_(r, c)])

    def with_entries(self, entries: Iterable[tuple[int, int]], value: int) -> "ZeroOneMatrix":
        """Copy with the listed entries set to ``value``."""
        a = self._a.copy()
        for i, j in entries:
            a[i, j] = value
        return ZeroOneMatrix._wrap(a)

    def count(self, value: int) -> int:
        ones = int(self._a.sum(dtype=np.int64))
        return ones if value else self._a.size - ones

    def homogeneous_value(self) -> int | None:
        if self.is_empty:
            raise EmptyMatrix("homogeneous_value of an empty matrix")
        first = int(self._a.flat[0])
        return first if bool((self._a == first).all()) else None

    def to_text(self) -> str:
        return emit(self)


# ---------------------------------------------------------------------------
# index sets and witnesses


def index_set(indices: Iterable[int]) -> tuple[int, ...]:
    """Validate and return a strictly increasing tuple of non-negative ints."""
    t = tuple(int(i) for i in indices)
    for a, b in zip(t, t[1:]):
        if b <= a:
            raise InvalidParams(f"index set must be strictly increasing: {t}")
    if t and t[0] < 0:
        raise InvalidParams(f"negative index in {t}")
    return t


@dataclass(frozen=True)
class SubmatrixWitness:
    """Sorted row and column index sets locating a submatrix."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", index_set(self.rows))
        object.__setattr__(self, "cols", index_set(self.cols))
        if not self.rows or not self.cols:
            raise InvalidParams("witness index sets must be nonempty")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def check_bounds(self, shape: tuple[int, int]) -> None:
        if self.rows[-1] >= shape[0] or self.cols[-1] >= shape[1]:
            raise IndexOutOfRange(f"witness {self} does not fit a {shape[0]}x{shape[1]} matrix")

    def compose(self, inner: "SubmatrixWitness") -> "SubmatrixWitness":
        """Witness of ``inner`` (relative to the slice at ``self``) in host coordinates."""
        return SubmatrixWitness(
            tuple(self.rows[i] for i in inner.rows),
            tuple(self.cols[j] for j in inner.cols),
        )

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


# ---------------------------------------------------------------------------
# functional API


def complement(A: ZeroOneMatrix) -> ZeroOneMatrix:
    return A.complement()


def transpose(A: ZeroOneMatrix) -> ZeroOneMatrix:
    return A.transpose()


def submatrix(A: ZeroOneMatrix, w: SubmatrixWitness) -> ZeroOneMatrix:
    """``A[rows x cols]`` for a witness; raises IndexOutOfRange if it does not fit."""
    w.check_bounds(A.shape)
    return A.slice(w.rows, w.cols)


def count(A: ZeroOneMatrix, value: int) -> int:
    return A.count(value)


def homogeneous_value(A: ZeroOneMatrix) -> int | None:
    return A.homogeneous_value()


def hstack(*parts: ZeroOneMatrix) -> ZeroOneMatrix:
    return ZeroOneMatrix._wrap(np.hstack([p.array for p in parts]))


def vstack(*parts: ZeroOneMatrix) -> ZeroOneMatrix:
    return ZeroOneMatrix._wrap(np.vstack([p.array for p in parts]))


# ---------------------------------------------------------------------------
# text format: "R C" header, then R lines of C characters from {0,1}


def parse(text: str) -> ZeroOneMatrix:
    lines = [(no, raw) for no, raw in enumerate(text.splitlines(), start=1) if raw.strip()]
    if not lines:
        raise FormatError("empty input")
    head_no, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError(f"header must be 'R C', got {head.strip()!r}", head_no)
    r, c = int(parts[0]), int(parts[1])
    if r < 1 or c < 1:
        raise FormatError(f"dimensions must be positive, got {r}x{c}", head_no)
    body = lines[1:]
    if len(body) != r:
        where = body[r][0] if len(body) > r else (body[-1][0] if body else head_no)
        raise FormatError(f"expected {r} rows, found {len(body)}", where)
    out = np.empty((r, c), dtype=np.uint8)
    for i, (no, raw) in enumerate(body):
        lead = len(raw) - len(raw.lstrip())
        row = raw.strip()
        for j, ch in enumerate(row):
            if ch not in "01":
                raise FormatError(f"unexpected character {ch!r}", no, lead + j + 1)
        if len(row) != c:
            raise FormatError(f"row has length {len(row)}, expected {c}", no, lead + len(row) + 1)
        out[i] = np.frombuffer(row.encode("ascii"), dtype=np.uint8) - ord("0")
    return ZeroOneMatrix._wrap(out)


def emit(A: ZeroOneMatrix) -> str:
    body = "".join("".join("1" if x else "0" for x in row) + "\n" for row in A.array.tolist())
    return f"{A.rows} {A.cols}\n{body}"


def read_matrix(path) -> ZeroOneMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_matrix(path, A: ZeroOneMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(A))
