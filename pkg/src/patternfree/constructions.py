"""Input generators: the random P-free construction, blow-ups and structured families.

Every generator is a pure function of its arguments and seed.  Randomness
comes from numpy's PCG64 seeded with ``[seed, site]`` where ``site`` is a
fixed constant per use-site, so adding a generator never shifts the streams
of the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .containment import contains_ordered, is_gamma_free, iter_ordered_copies
from .errors import IndivisibleSize, InvalidParams, PatternAcyclic, RetriesExhausted, VerificationError
from .matrix import ZeroOneMatrix
from .patterns import corner, is_acyclic, parse_pattern, reduce_to_core

__all__ = [
    "GeneratorSpec",
    "KINDS",
    "random_pfree",
    "blowup",
    "structured",
    "generate",
    "pfree_probability",
    "staircase",
    "laminar",
    "gamma_free_random",
    "interval_matrix",
    "bipartite_forest",
    "planted",
]

SITE_RANDOM_PFREE = 0x5EED01
SITE_LAMINAR = 0x5EED02
SITE_BERNOULLI = 0x5EED03
SITE_PLANTED = 0x5EED04
SITE_GAMMA = 0x5EED05
SITE_INTERVAL = 0x5EED06
SITE_FOREST = 0x5EED07

KINDS = (
    "random-pfree",
    "blowup",
    "staircase",
    "laminar",
    "bernoulli",
    "planted",
    "gamma-free",
    "interval",
    "forest",
)


def _rng(seed: int, site: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), site])


def _need_n(n: int) -> int:
    if int(n) < 1:
        raise InvalidParams(f"n must be positive, got {n}")
    return int(n)


def pfree_probability(k: int, l: int, n: int) -> float:
    """Entry probability 1/4 * n^(-1 + 1/(k+l)) for a core of shape k x l."""
    return 0.25 * n ** (-1.0 + 1.0 / (k + l))


def random_pfree(P: ZeroOneMatrix, n: int, seed: int = 0, retries: int = 16) -> ZeroOneMatrix:
    """Random n x n P-free matrix for a P that is not acyclic.

    P is first reduced to its core (rows and columns with at least two ones).
    An n x 2n Bernoulli(p) matrix is drawn; when its core copies number at
    most n, the last column of each copy is deleted and the leftmost n
    surviving columns are kept.  Otherwise the draw is repeated with the
    next seed.
    """
    n = _need_n(n)
    rows, cols = reduce_to_core(P)
    if not rows:
        raise PatternAcyclic("acyclic patterns are not handled by the random construction")
    core = P.slice(rows, cols)
    p = pfree_probability(core.rows, core.cols, n)
    for attempt in range(retries):
        rng = _rng(seed + attempt, SITE_RANDOM_PFREE)
        a = (rng.random((n, 2 * n)) < p).astype(np.uint8)
        A0 = ZeroOneMatrix._wrap(a)
        doomed = set()
        count = 0
        for w in iter_ordered_copies(A0, core):
            count += 1
            if count > n:
                break
            doomed.add(w.cols[-1])
        if count > n:
            continue
        keep = [c for c in range(2 * n) if c not in doomed][:n]
        out = ZeroOneMatrix._wrap(np.ascontiguousarray(a[:, keep]))
        if contains_ordered(out, P):
            raise VerificationError("random construction left a copy of P")  # pragma: no cover
        return out
    raise RetriesExhausted(f"more than n copies in {retries} draws (n={n})")


def blowup(B: ZeroOneMatrix, n: int) -> ZeroOneMatrix:
    """Replace each entry of B by an (n/m) x (n/m) constant block, m = rows of B."""
    n = _need_n(n)
    if B.is_empty:
        raise InvalidParams("cannot blow up an empty matrix")
    if n % B.rows:
        raise IndivisibleSize(f"n={n} is not a multiple of {B.rows}")
    f = n // B.rows
    return ZeroOneMatrix._wrap(np.kron(B.array, np.ones((f, f), dtype=np.uint8)).astype(np.uint8))


def staircase(n: int) -> ZeroOneMatrix:
    """A(i, j) = 1 iff j >= i; contains no Q1."""
    n = _need_n(n)
    return ZeroOneMatrix._wrap(np.triu(np.ones((n, n), dtype=np.uint8)))


def laminar(n: int, low: float = 0.2, shuffle: bool = True, seed: int = 0) -> ZeroOneMatrix:
    """Rows with nested zero sets.

    Row i has zeros on a prefix whose length falls evenly from n to about
    ``low * n``; rows and columns are then shuffled, which keeps the zero
    sets a chain under inclusion.
    """
    n = _need_n(n)
    if not 0 <= low <= 1:
        raise InvalidParams("low must lie in [0, 1]")
    z = np.linspace(n, int(round(low * n)), n).round().astype(int)
    a = (np.arange(n)[None, :] >= z[:, None]).astype(np.uint8)
    if shuffle:
        rng = _rng(seed, SITE_LAMINAR)
        a = a[rng.permutation(n)][:, rng.permutation(n)]
    return ZeroOneMatrix._wrap(np.ascontiguousarray(a))


def gamma_free_random(n: int, p: float | None = None, seed: int = 0) -> ZeroOneMatrix:
    """Random matrix closed under the rule that kills Gamma = [[1,1],[1,0]].

    Rows are processed top to bottom and each row left to right: a 1 at
    column c forces ones at every later column that some earlier row with a
    1 at c also has.  Entries only ever turn to 1, so one pass suffices.
    """
    n = _need_n(n)
    p = 2.0 / n if p is None else float(p)
    rng = _rng(seed, SITE_GAMMA)
    seeds = rng.random((n, n)) < p
    above = [0] * n  # union of earlier rows having a 1 in column c
    a = np.zeros((n, n), dtype=np.uint8)
    for r in range(n):
        row = sum(1 << int(c) for c in np.flatnonzero(seeds[r]))
        c = 0
        while c < n:
            if row >> c & 1:
                row |= above[c] >> (c + 1) << (c + 1)
            c += 1
        bits = [c for c in range(n) if row >> c & 1]
        for c in bits:
            above[c] |= row
        a[r, bits] = 1
    return ZeroOneMatrix._wrap(a)


def interval_matrix(n: int, cols: int | None = None, seed: int = 0, mean_len: float | None = None) -> ZeroOneMatrix:
    """Rows are random intervals over the column points (totally balanced)."""
    n = _need_n(n)
    m = n if cols is None else _need_n(cols)
    rng = _rng(seed, SITE_INTERVAL)
    mean_len = m / 4 if mean_len is None else mean_len
    starts = rng.integers(0, m, size=n)
    lens = rng.geometric(1.0 / max(mean_len, 1.0), size=n)
    ends = np.minimum(starts + lens - 1, m - 1)
    j = np.arange(m)[None, :]
    a = ((j >= starts[:, None]) & (j <= ends[:, None])).astype(np.uint8)
    return ZeroOneMatrix._wrap(a)


def bipartite_forest(n: int, seed: int = 0) -> ZeroOneMatrix:
    """Biadjacency matrix of a random spanning tree on n + n vertices."""
    n = _need_n(n)
    rng = _rng(seed, SITE_FOREST)
    order = rng.permutation(2 * n)
    a = np.zeros((n, n), dtype=np.uint8)
    left = [int(v) for v in order if v < n]
    right = [int(v) - n for v in order if v >= n]
    # alternate growth so both sides always have a vertex to attach to
    placed_l, placed_r = [left[0]], [right[0]]
    a[left[0], right[0]] = 1
    for v in left[1:]:
        a[v, placed_r[rng.integers(len(placed_r))]] = 1
        placed_l.append(v)
    for v in right[1:]:
        a[placed_l[rng.integers(len(placed_l))], v] = 1
        placed_r.append(v)
    return ZeroOneMatrix._wrap(a)


def planted(
    n: int,
    pattern: ZeroOneMatrix,
    rows=None,
    cols=None,
    p: float = 0.0,
    seed: int = 0,
) -> ZeroOneMatrix:
    """Bernoulli(p) background with ``pattern`` written at the given (or random) positions."""
    n = _need_n(n)
    k, l = pattern.shape
    if k > n or l > n:
        raise InvalidParams("pattern larger than the matrix")
    rng = _rng(seed, SITE_PLANTED)
    a = (rng.random((n, n)) < p).astype(np.uint8)
    rows = sorted(rng.choice(n, size=k, replace=False).tolist()) if rows is None else sorted(int(r) for r in rows)
    cols = sorted(rng.choice(n, size=l, replace=False).tolist()) if cols is None else sorted(int(c) for c in cols)
    if len(rows) != k or len(cols) != l or len(set(rows)) != k or len(set(cols)) != l:
        raise InvalidParams("plant positions must match the pattern shape")
    if max(rows) >= n or max(cols) >= n:
        raise InvalidParams("plant positions out of range")
    a[np.ix_(rows, cols)] = pattern.array
    return ZeroOneMatrix._wrap(a)


def _as_pattern(x) -> ZeroOneMatrix:
    return parse_pattern(x) if isinstance(x, str) else x


def _chain(A: ZeroOneMatrix) -> bool:
    z = A.array == 0
    order = np.argsort(z.sum(axis=1), kind="stable")
    zs = z[order]
    return bool((zs[:-1] <= zs[1:]).all()) if len(zs) > 1 else True


def structured(kind: str, n: int, params: dict | None = None, seed: int = 0) -> ZeroOneMatrix:
    """Named test families, each checked for its defining property before return."""
    params = dict(params or {})
    try:
        if kind == "staircase":
            A = staircase(n)
            if contains_ordered(A, corner(1)):
                raise VerificationError("staircase contains Q1")  # pragma: no cover
            return A
        if kind == "laminar":
            A = laminar(n, seed=seed, **params)
            if not _chain(A):
                raise VerificationError("laminar zero sets are not a chain")  # pragma: no cover
            return A
        if kind == "bernoulli":
            p = float(params.pop("p", 0.5))
            if not 0 <= p <= 1 or params:
                raise InvalidParams(f"bernoulli takes only p in [0, 1], got {params or p}")
            return ZeroOneMatrix._wrap((_rng(seed, SITE_BERNOULLI).random((_need_n(n), n)) < p).astype(np.uint8))
        if kind == "planted":
            pat = _as_pattern(params.pop("pattern"))
            A = planted(n, pat, seed=seed, **params)
            if not contains_ordered(A, pat):
                raise VerificationError("planted pattern not found")  # pragma: no cover
            return A
        if kind == "gamma-free":
            A = gamma_free_random(n, seed=seed, **params)
            if not is_gamma_free(A):
                raise VerificationError("gamma closure failed")  # pragma: no cover
            return A
        if kind == "interval":
            return interval_matrix(n, seed=seed, **params)
        if kind == "forest":
            A = bipartite_forest(n, seed=seed)
            if not is_acyclic(A):
                raise VerificationError("forest has a cycle")  # pragma: no cover
            return A
    except (TypeError, KeyError) as exc:
        raise InvalidParams(f"bad parameters for {kind!r}: {exc}") from exc
    raise InvalidParams(f"unknown structured kind {kind!r}")


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator kind plus its parameters; ``generate`` is deterministic in it."""

    kind: str
    n: int
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)

    def generate(self) -> ZeroOneMatrix:
        return generate(self)


def generate(spec: GeneratorSpec) -> ZeroOneMatrix:
    params = dict(spec.params)
    if spec.kind == "random-pfree":
        return random_pfree(_as_pattern(params.pop("pattern")), spec.n, spec.seed, **params)
    if spec.kind == "blowup":
        return blowup(params.pop("base"), spec.n)
    return structured(spec.kind, spec.n, params, spec.seed)
