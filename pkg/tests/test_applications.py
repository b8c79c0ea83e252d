from fractions import Fraction
from itertools import product

import networkx as nx
import numpy as np
import pytest

from patternfree import (
    NotChordalBipartite,
    NotTotallyBalanced,
    OrderingNotFound,
    ZeroOneMatrix,
    balance_verdict,
    bipartite_forest,
    chordal_bipartite_homogeneous,
    checkerboard,
    contains_ordered,
    corner,
    doubly_lexical_order,
    find_halfplane_ordering,
    find_cycle_submatrix,
    gamma,
    gamma_to_q1,
    halfplane_homogeneous,
    halfplane_incidence,
    interval_matrix,
    is_cycle_incidence,
    is_doubly_lexical,
    is_gamma_free,
    is_totally_balanced,
    totally_balanced_homogeneous,
)

from helpers import rand_matrix


def M(rows):
    return ZeroOneMatrix(rows)


def cycle_biadjacency(k):
    a = np.zeros((k, k), dtype=np.uint8)
    for i in range(k):
        a[i, i] = a[i, (i + 1) % k] = 1
    return ZeroOneMatrix._wrap(a)


def test_doubly_lexical_fixed_point():
    A = M([[0, 0], [0, 1]])
    assert is_doubly_lexical(A)
    r = doubly_lexical_order(A)
    assert r.row_perm == (0, 1) and r.col_perm == (0, 1)


def test_doubly_lexical_property(rng):
    assert is_doubly_lexical(doubly_lexical_order(M([[0, 1], [1, 0]])).apply(M([[0, 1], [1, 0]])))
    for _ in range(100):
        A = rand_matrix(rng, 8, 8)
        assert is_doubly_lexical(doubly_lexical_order(A).apply(A))


def test_gamma_to_q1_equivalence(rng):
    for _ in range(1000):
        A = rand_matrix(rng, 6, 6, p=float(rng.uniform(0.2, 0.8)))
        assert is_gamma_free(A) == (not contains_ordered(gamma_to_q1(A), corner(1)))


def test_recognition_examples():
    assert is_totally_balanced(gamma())
    C6 = M([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    v = balance_verdict(C6)
    assert not v.balanced and v.cycle.rows == (0, 1, 2) and v.cycle.cols == (0, 1, 2)
    assert is_cycle_incidence(C6)
    assert not is_cycle_incidence(ZeroOneMatrix.ones(2, 2))


def _chordal_bipartite_nx(A) -> bool:
    G = nx.Graph()
    n, m = A.shape
    G.add_nodes_from(range(n + m))
    G.add_edges_from((i, n + j) for i, j in zip(*np.nonzero(A.array)))
    return not any(len(c) >= 6 for c in nx.chordless_cycles(G))


def test_recognition_all_bipartite_up_to_3x4():
    for r, c in ((3, 3), (3, 4)):
        for bits in product((0, 1), repeat=r * c):
            A = ZeroOneMatrix._wrap(np.array(bits, dtype=np.uint8).reshape(r, c))
            assert is_totally_balanced(A) == _chordal_bipartite_nx(A)


def test_cycle_search(rng):
    for k in (3, 4, 5):
        C = cycle_biadjacency(k)
        w = find_cycle_submatrix(C)
        assert w is not None and is_cycle_incidence(C.slice(w.rows, w.cols))
    for _ in range(50):
        A = rand_matrix(rng, 7, 7, 0.35)
        w = find_cycle_submatrix(A)
        assert (w is None) == _chordal_bipartite_nx(A)
        if w is not None:
            assert is_cycle_incidence(A.slice(w.rows, w.cols))


def test_totally_balanced_homogeneous():
    out = totally_balanced_homogeneous(ZeroOneMatrix.ones(60, 60))
    assert out.block.value == 1 and out.size >= 3
    A = interval_matrix(200, seed=0)
    out = totally_balanced_homogeneous(A)
    assert A.slice(out.block.rows, out.block.cols).homogeneous_value() == out.block.value
    assert out.size >= 200 // 20 - 2
    with pytest.raises(NotTotallyBalanced):
        totally_balanced_homogeneous(M([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))


def test_chordal_pairs():
    pair = chordal_bipartite_homogeneous(ZeroOneMatrix.ones(8, 8))
    assert pair.verdict == "complete" and pair.size >= 1 and pair.fallback
    A = bipartite_forest(100, seed=0)
    pair = chordal_bipartite_homogeneous(A)
    want = 1 if pair.verdict == "complete" else 0
    assert pair.size >= 3
    assert A.slice(pair.left, pair.right).homogeneous_value() == want
    with pytest.raises(NotChordalBipartite):
        chordal_bipartite_homogeneous(cycle_biadjacency(4))


def test_halfplane_incidence():
    assert halfplane_incidence([(0, 0)], [(0, 1, "below")]) == M([[1]])
    # boundary counts as inside, exactly for rationals
    assert halfplane_incidence([(Fraction(1, 3), Fraction(1, 3))], [(1, 0, "above")]) == M([[1]])
    assert halfplane_incidence([(0.1 + 0.2, 0.3)], [(1, 0, "below")]) == M([[1]])


def test_halfplane_nested_columns():
    pts = [(x, 0) for x in range(8)]
    planes = [(0, b, "below") for b in (-1, 0.5, 2, -3)]
    order = find_halfplane_ordering(pts, planes)
    M_ = halfplane_incidence(pts, planes)
    assert not contains_ordered(M_.slice(order.point_order, order.classes["below"]), checkerboard(2))


def test_halfplane_random():
    g = np.random.default_rng(1)
    pts = [tuple(map(float, g.random(2))) for _ in range(50)]
    planes = [(float(g.uniform(-1, 1)), float(g.random()), "below") for _ in range(50)]
    try:
        order, out = halfplane_homogeneous(pts, planes)
    except OrderingNotFound:
        pytest.skip("no simple ordering verified on this instance")
    Minc = halfplane_incidence(pts, planes)
    assert Minc.slice(out.block.rows, out.block.cols).homogeneous_value() == out.block.value
    assert out.size >= 1
