from fractions import Fraction

import numpy as np
import pytest

from patternfree import (
    KINDS,
    GeneratorSpec,
    IndivisibleSize,
    InvalidParams,
    PatternAcyclic,
    ZeroOneMatrix,
    blowup,
    checkerboard,
    contains_ordered,
    corner,
    extract_unordered,
    generate,
    is_acyclic,
    is_gamma_free,
    max_homogeneous_square,
    oracle_contains,
    parse_pattern,
    pfree_probability,
    random_pfree,
    read_matrix,
    structured,
)

from conftest import FIXTURES

ONES = parse_pattern("M:11,11")


def test_random_pfree_seed7():
    A = random_pfree(ONES, 64, seed=7)
    assert not oracle_contains(A, ONES).found
    assert max_homogeneous_square(A, 1, force=True).size == 1


def test_random_pfree_density():
    p = pfree_probability(2, 2, 64)
    for seed in range(20):
        A = random_pfree(ONES, 64, seed=seed)
        assert p / 2 * 64 * 64 <= A.count(1) <= 2 * p * 64 * 64


def test_random_pfree_acyclic():
    with pytest.raises(PatternAcyclic):
        random_pfree(corner(1), 20)


@pytest.mark.parametrize(
    "name,spec,n,seed",
    [
        ("random_pfree_ones2x2_n64_seed0.txt", "M:11,11", 64, 0),
        ("random_pfree_ones2x2_n64_seed7.txt", "M:11,11", 64, 7),
        ("random_pfree_P3x3_n32_seed3.txt", "P2k:3x3", 32, 3),
    ],
)
def test_random_pfree_fixtures(name, spec, n, seed):
    A = random_pfree(parse_pattern(spec), n, seed=seed)
    assert A == read_matrix(FIXTURES / name)
    assert not contains_ordered(A, parse_pattern(spec))


def test_laminar_fixture():
    assert structured("laminar", 120, seed=0) == read_matrix(FIXTURES / "laminar_n120_seed0.txt")


def test_determinism():
    for kind, params in [
        ("random-pfree", {"pattern": "M:11,11"}),
        ("laminar", {}),
        ("bernoulli", {"p": 0.3}),
        ("planted", {"pattern": "P2k:2"}),
        ("gamma-free", {}),
        ("interval", {}),
        ("forest", {}),
    ]:
        a = generate(GeneratorSpec(kind, 30, 5, params))
        b = GeneratorSpec(kind, 30, 5, dict(params)).generate()
        assert a == b, kind


def test_seeds_differ():
    a = structured("bernoulli", 30, {"p": 0.5}, seed=1)
    b = structured("bernoulli", 30, {"p": 0.5}, seed=2)
    assert a != b


def test_blowup():
    assert blowup(ZeroOneMatrix([[1]]), 4) == ZeroOneMatrix.ones(4, 4)
    assert blowup(ZeroOneMatrix.identity(2), 4) == ZeroOneMatrix(
        [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]]
    )
    with pytest.raises(IndivisibleSize):
        blowup(ZeroOneMatrix.identity(3), 4)


def test_blowup_zero_count(rng):
    for _ in range(20):
        B = ZeroOneMatrix._wrap((rng.random((4, 4)) < 0.5).astype(np.uint8))
        assert blowup(B, 16).count(0) == 16 * B.count(0)


def test_blowup_keeps_p4_free():
    B = ZeroOneMatrix([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    P4 = checkerboard(4)
    assert not contains_ordered(B, P4)
    assert not contains_ordered(blowup(B, 16), P4)


def test_structured_properties():
    A = structured("staircase", 8)
    assert A == ZeroOneMatrix._wrap(np.triu(np.ones((8, 8), dtype=np.uint8)))
    assert not contains_ordered(A, corner(1))
    assert is_gamma_free(structured("gamma-free", 60, seed=3))
    assert is_acyclic(structured("forest", 25, seed=4))
    A = structured("laminar", 12, seed=1)
    out = extract_unordered(A, checkerboard(1), Fraction(1, 2))
    t = out.info["t"]
    assert out.info["dag_edges"] == t * (t - 1) // 2


def test_planted():
    A = structured("planted", 12, {"pattern": "P2k:2", "rows": [1, 5], "cols": [2, 9]})
    r = contains_ordered(A, checkerboard(2))
    assert r.found and A.slice(r.witness.rows, r.witness.cols) == checkerboard(2)


def test_bad_params():
    with pytest.raises(InvalidParams):
        structured("nope", 10)
    with pytest.raises(InvalidParams):
        structured("bernoulli", 10, {"p": 2})
    with pytest.raises(InvalidParams):
        structured("laminar", 10, {"bogus": 1})
    with pytest.raises(InvalidParams):
        structured("staircase", 0)


def test_kinds_listed():
    assert set(KINDS) >= {"random-pfree", "blowup", "staircase", "laminar", "bernoulli", "planted"}
