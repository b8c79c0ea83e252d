from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternfree import (
    ZeroOneMatrix,
    checkerboard,
    contains_ordered,
    contains_unordered,
    corner,
    count_ordered_copies,
    find_p2_row_pairs,
    gamma,
    is_gamma_free,
    iter_ordered_copies,
    oracle_contains,
    p2_pair_witnesses,
    staircase,
    unordered_star,
    verify_copy,
)

from helpers import naive_contains, rand_matrix


def M(rows):
    return ZeroOneMatrix(rows)


def test_ordered_examples():
    r = contains_ordered(ZeroOneMatrix.identity(3), checkerboard(2))
    assert r.found and r.witness.rows == (0, 1) and r.witness.cols == (0, 1)
    assert not contains_ordered(M([[0, 1], [1, 0]]), checkerboard(2))
    assert not contains_ordered(staircase(5), corner(1))


def test_unordered_examples():
    assert contains_unordered(M([[0, 1], [1, 0]]), checkerboard(2))
    I4 = ZeroOneMatrix.identity(4)
    assert contains_unordered(I4, unordered_star(1)).found == oracle_contains(I4, unordered_star(1), True).found


def test_pattern_larger_than_matrix():
    assert not contains_ordered(ZeroOneMatrix.identity(3), checkerboard(9, rows=9))
    assert not contains_unordered(ZeroOneMatrix.identity(3), checkerboard(9, rows=9))


def test_ordered_implies_unordered(rng):
    for _ in range(1000):
        A = rand_matrix(rng, 6, 6)
        P = rand_matrix(rng, 2, int(rng.integers(1, 4)))
        if contains_ordered(A, P):
            assert contains_unordered(A, P)


def test_witness_is_lexicographic_minimum(rng):
    for _ in range(200):
        A = rand_matrix(rng, 6, 7)
        P = rand_matrix(rng, 2, 2)
        copies = list(iter_ordered_copies(A, P))
        r = contains_ordered(A, P)
        assert r.found == bool(copies)
        if copies:
            best = min((w.rows, w.cols) for w in copies)
            assert (r.witness.rows, r.witness.cols) == best


def test_count_examples():
    assert count_ordered_copies(ZeroOneMatrix.identity(2), M([[1]])) == 2
    assert count_ordered_copies(ZeroOneMatrix.ones(2, 2), M([[1, 1]])) == 2


def test_count_vs_naive(rng):
    for seed in range(100):
        A = rand_matrix(np.random.default_rng(seed), 8, 8)
        P = rand_matrix(np.random.default_rng(seed + 1000), 2, 2)
        a, p = A.tolist(), P.tolist()
        naive = sum(
            all(a[R[i]][C[j]] == p[i][j] for i in range(2) for j in range(2))
            for R in combinations(range(8), 2)
            for C in combinations(range(8), 2)
        )
        assert count_ordered_copies(A, P, cap=10**6) == naive
        assert count_ordered_copies(A, P, cap=3) == min(naive, 3)


def test_p2_pairs_examples():
    assert find_p2_row_pairs(ZeroOneMatrix.identity(3)) == {(0, 1), (0, 2), (1, 2)}
    assert find_p2_row_pairs(ZeroOneMatrix.zeros(4, 4)) == set()


def test_p2_pairs_definition(rng):
    p2 = checkerboard(2)
    for _ in range(1000):
        A = rand_matrix(rng, 12, 12)
        pairs = find_p2_row_pairs(A)
        for r, q in combinations(range(12), 2):
            expect = bool(contains_ordered(A.slice([r, q], range(12)), p2))
            assert ((r, q) in pairs) == expect
        for (r, q), w in p2_pair_witnesses(A).items():
            verify_copy(A, p2, w)


def test_gamma_free_examples():
    assert is_gamma_free(ZeroOneMatrix.identity(4))
    assert not is_gamma_free(gamma())
    assert is_gamma_free(M([[1, 0], [1, 1]]))


def test_gamma_free_agrees(rng):
    g = gamma()
    for _ in range(500):
        A = rand_matrix(rng, 7, 7, p=float(rng.uniform(0.1, 0.6)))
        assert is_gamma_free(A) == (not contains_ordered(A, g))


dims = st.tuples(st.integers(1, 6), st.integers(1, 6), st.integers(1, 2), st.integers(1, 3))


@settings(max_examples=200, deadline=None)
@given(dims, st.integers(0, 2**32 - 1))
def test_ordered_matches_naive(shape, seed):
    r, c, pr, pc = shape
    g = np.random.default_rng(seed)
    A, P = rand_matrix(g, r, c), rand_matrix(g, pr, pc)
    res = contains_ordered(A, P)
    assert res.found == naive_contains(A, P)
    if res.found:
        assert A.slice(res.witness.rows, res.witness.cols) == P


@settings(max_examples=200, deadline=None)
@given(dims, st.integers(0, 2**32 - 1))
def test_unordered_witness_verifies(shape, seed):
    r, c, pr, pc = shape
    g = np.random.default_rng(seed)
    A, P = rand_matrix(g, r, c), rand_matrix(g, pr, pc)
    res = contains_unordered(A, P)
    assert res.found == oracle_contains(A, P, unordered=True).found
    if res.found:
        verify_copy(A, P, res.witness, unordered=True)


def test_verify_copy_rejects():
    from patternfree import SubmatrixWitness, VerificationError

    with pytest.raises(VerificationError):
        verify_copy(ZeroOneMatrix.identity(3), checkerboard(2), SubmatrixWitness((0, 1), (1, 2)))
