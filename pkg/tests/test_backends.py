"""The compiled and pure-Python kernels must return identical results."""

import numpy as np
import pytest

from patternfree import checkerboard, corner, gamma, parse_pattern
from patternfree.kernels import BACKEND, backends

from helpers import rand_matrix

IMPLS = backends()
pytestmark = pytest.mark.skipif("native" not in IMPLS, reason="compiled backend not built")


def test_backend_selected():
    assert BACKEND in ("native", "python")


PATTERNS = [checkerboard(2), corner(1), gamma(), parse_pattern("M:11,11"), checkerboard(3), parse_pattern("S:1"), parse_pattern("M:101,010,111")]


@pytest.mark.parametrize("seed", range(40))
def test_kernels_agree(seed):
    nat, py = IMPLS["native"], IMPLS["python"]
    g = np.random.default_rng(seed)
    n = int(g.integers(1, 70))
    m = int(g.integers(1, 70))
    A = rand_matrix(g, n, m, p=float(g.uniform(0.05, 0.9)))
    for P in PATTERNS:
        assert nat.ordered_first(A, P) == py.ordered_first(A, P)
        assert nat.unordered_first(A, P) == py.unordered_first(A, P)
        assert nat.count_ordered(A, P, 500) == py.count_ordered(A, P, 500)
    assert nat.p2_pairs(A) == py.p2_pairs(A)
    assert nat.gamma_free(A) == py.gamma_free(A)


@pytest.mark.parametrize("seed", range(20))
def test_max_square_agrees(seed):
    nat, py = IMPLS["native"], IMPLS["python"]
    g = np.random.default_rng(seed)
    A = rand_matrix(g, int(g.integers(1, 18)), int(g.integers(1, 18)), p=float(g.uniform(0.2, 0.8)))
    for v in (0, 1):
        assert nat.max_square(A, v, 0, -1) == py.max_square(A, v, 0, -1)
