"""Result types shared by the oracle and the extractors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import VerificationError
from .matrix import SubmatrixWitness, ZeroOneMatrix

__all__ = ["HomogeneousBlock", "ExtractionOutcome", "Dichotomy", "remap_witness"]


def remap_witness(w: SubmatrixWitness, row_map: Callable[[int], int], col_map: Callable[[int], int]) -> SubmatrixWitness:
    """Translate index sets through coordinate maps (result re-sorted)."""
    return SubmatrixWitness(tuple(sorted(row_map(r) for r in w.rows)), tuple(sorted(col_map(c) for c in w.cols)))


@dataclass(frozen=True)
class HomogeneousBlock:
    value: int
    where: SubmatrixWitness

    @classmethod
    def of(cls, value: int, rows: Sequence[int], cols: Sequence[int]) -> "HomogeneousBlock":
        return cls(int(value), SubmatrixWitness(tuple(rows), tuple(cols)))

    @property
    def rows(self) -> tuple[int, ...]:
        return self.where.rows

    @property
    def cols(self) -> tuple[int, ...]:
        return self.where.cols

    @property
    def size(self) -> int:
        return min(len(self.where.rows), len(self.where.cols))

    def square(self) -> "HomogeneousBlock":
        """Trim to size x size (first indices kept)."""
        s = self.size
        return HomogeneousBlock(self.value, SubmatrixWitness(self.rows[:s], self.cols[:s]))

    def verify(self, A: ZeroOneMatrix) -> "HomogeneousBlock":
        self.where.check_bounds(A.shape)
        if A.slice(self.rows, self.cols).homogeneous_value() != self.value:
            raise VerificationError(f"block {self.to_dict()} is not homogeneous {self.value}")
        return self

    def to_dict(self) -> dict:
        return {"value": self.value, "rows": list(self.rows), "cols": list(self.cols), "size": self.size}


@dataclass
class ExtractionOutcome:
    """Either a homogeneous block or a copy of a forbidden pattern."""

    method: str
    block: HomogeneousBlock | None = None
    violation: SubmatrixWitness | None = None
    violation_pattern: ZeroOneMatrix | None = None
    unordered: bool = False
    fallback: bool = False
    exact: bool = True
    params: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.block is None) == (self.violation is None):
            raise ValueError("exactly one of block / violation must be set")
        if self.violation is not None and self.violation_pattern is None:
            raise ValueError("a violation needs its pattern")

    @property
    def kind(self) -> str:
        if self.violation is not None:
            return "violation"
        return "fallback-block" if self.fallback else "block"

    @property
    def is_block(self) -> bool:
        return self.block is not None

    @property
    def size(self) -> int:
        return self.block.size if self.block is not None else 0

    def verify(self, A: ZeroOneMatrix) -> "ExtractionOutcome":
        from .containment import verify_copy

        if self.block is not None:
            self.block.verify(A)
        else:
            verify_copy(A, self.violation_pattern, self.violation, self.unordered)
        return self

    def to_dict(self) -> dict:
        out = {"outcome": self.kind, "method": self.method, "params": self.params}
        if self.block is not None:
            out.update(self.block.to_dict())
        else:
            out.update(
                value=None,
                rows=list(self.violation.rows),
                cols=list(self.violation.cols),
                size=0,
                pattern=self.violation_pattern.tolist(),
                unordered=self.unordered,
            )
        out["exact"] = self.exact
        return out


@dataclass
class Dichotomy:
    """Block branch or P2 row-pair branch of the density dichotomy."""

    block: HomogeneousBlock | None = None
    pairs: dict = field(default_factory=dict)
    t: int = 0
    info: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "block" if self.block is not None else "pairs"

    def verify(self, A: ZeroOneMatrix) -> "Dichotomy":
        from .containment import verify_copy
        from .patterns import checkerboard

        if self.block is not None:
            self.block.verify(A)
            if self.block.value != 0:
                raise VerificationError("density block must be all-0")
            return self
        p2 = checkerboard(2)
        for (r, q), w in self.pairs.items():
            if w.rows != (r, q):
                raise VerificationError(f"pair {(r, q)} witness on rows {w.rows}")
            verify_copy(A, p2, w)
        return self
