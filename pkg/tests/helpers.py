import numpy as np

from patternfree import ZeroOneMatrix


def rand_matrix(rng, rows, cols, p=0.5) -> ZeroOneMatrix:
    return ZeroOneMatrix._wrap((rng.random((rows, cols)) < p).astype(np.uint8))


def naive_contains(A, P) -> bool:
    """Definition-level ordered containment by plain loops."""
    from itertools import combinations

    a, p = A.tolist(), P.tolist()
    k, l = len(p), len(p[0])
    for R in combinations(range(A.rows), k):
        for C in combinations(range(A.cols), l):
            if all(a[R[i]][C[j]] == p[i][j] for i in range(k) for j in range(l)):
                return True
    return False
