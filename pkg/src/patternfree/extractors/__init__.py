"""Constructive extraction of homogeneous submatrices from pattern-free matrices.

Every extractor returns an :class:`~patternfree.blocks.ExtractionOutcome`
that has been verified against the input: either a homogeneous block or a
copy of a forbidden pattern proving the input was not pattern-free.
"""

from .basic import density_dichotomy, extract_all1row_free, lift_homcolumn
from .checkerboard import extract_checkerboard, extract_theorem1
from .corner import extract_q_one, extract_qk_zero, extract_theorem2
from .dispatch import extract_theorem_2by2, normalize_2by2
from .ordered import extract_ordered_general, extract_theorem3
from .perm import perm_dichotomy
from .unordered import extract_theorem_graph, extract_unordered

__all__ = [
    "density_dichotomy",
    "extract_all1row_free",
    "lift_homcolumn",
    "extract_checkerboard",
    "extract_theorem1",
    "extract_qk_zero",
    "extract_q_one",
    "extract_theorem2",
    "extract_theorem_2by2",
    "normalize_2by2",
    "extract_ordered_general",
    "extract_theorem3",
    "perm_dichotomy",
    "extract_unordered",
    "extract_theorem_graph",
]
