# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled search kernels. Same contract as ``_purepy``."""

from itertools import permutations

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free, malloc

BACKEND = "native"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _popcount(const uint64_t* x, int W) noexcept nogil:
    cdef int w, s = 0
    for w in range(W):
        s += __builtin_popcountll(x[w])
    return s


cdef uint64_t* _pack(const unsigned char[:, ::1] a, int value, int* W_out) except NULL:
    cdef int n = a.shape[0], m = a.shape[1]
    cdef int W = (m + 63) // 64
    if W == 0:
        W = 1
    cdef uint64_t* R = <uint64_t*> calloc(<size_t>(n if n > 0 else 1) * W, sizeof(uint64_t))
    if R == NULL:
        raise MemoryError()
    cdef int i, j
    for i in range(n):
        for j in range(m):
            if (a[i, j] != 0) == (value != 0):
                R[i * W + (j >> 6)] |= (<uint64_t> 1) << (j & 63)
    W_out[0] = W
    return R


cdef inline bint _next_combo(int* rows, int k, int n) noexcept nogil:
    cdef int i = k - 1, t
    while i >= 0 and rows[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    rows[i] += 1
    for t in range(i + 1, k):
        rows[t] = rows[t - 1] + 1
    return True


def ordered_first(A, P):
    cdef const unsigned char[:, ::1] a = A.array
    cdef const unsigned char[:, ::1] p = P.array
    cdef int n = a.shape[0], m = a.shape[1], k = p.shape[0], b = p.shape[1]
    if k == 0 or b == 0 or k > n or b > m:
        return None
    cdef int* rows = <int*> malloc(k * sizeof(int))
    cdef int* cols = <int*> malloc(b * sizeof(int))
    cdef int i, j, c, t, pos, found
    cdef bint ok, match, hit = False
    try:
        for i in range(k):
            rows[i] = i
        with nogil:
            while True:
                pos = 0
                ok = True
                for j in range(b):
                    found = -1
                    for c in range(pos, m - (b - 1 - j)):
                        match = True
                        for t in range(k):
                            if a[rows[t], c] != p[t, j]:
                                match = False
                                break
                        if match:
                            found = c
                            break
                    if found < 0:
                        ok = False
                        break
                    cols[j] = found
                    pos = found + 1
                if ok:
                    hit = True
                    break
                if not _next_combo(rows, k, n):
                    break
        if hit:
            return tuple([rows[i] for i in range(k)]), tuple([cols[j] for j in range(b)])
        return None
    finally:
        free(rows)
        free(cols)


_DEMAND_CACHE = {}


def _demands(P):
    key = (P.shape, P.row_masks)
    hit = _DEMAND_CACHE.get(key)
    if hit is None:
        if len(_DEMAND_CACHE) > 4096:
            _DEMAND_CACHE.clear()
        hit = _DEMAND_CACHE[key] = _demands_uncached(P)
    return hit


def _demands_uncached(P):
    # per distinct row permutation of P: sorted (column code, count) pairs
    seen = set()
    out = []
    for perm in permutations([tuple(r) for r in P.array.tolist()]):
        if perm in seen:
            continue
        seen.add(perm)
        d = {}
        for colvec in zip(*perm):
            code = sum(bit << t for t, bit in enumerate(colvec))
            d[code] = d.get(code, 0) + 1
        out.append(sorted(d.items()))
    return out


def unordered_first(A, P):
    cdef const unsigned char[:, ::1] a = A.array
    cdef const unsigned char[:, ::1] p = P.array
    cdef int n = a.shape[0], m = a.shape[1], k = p.shape[0], b = p.shape[1]
    if k == 0 or b == 0 or k > n or b > m:
        return None
    if k > 20:
        raise ValueError("unordered kernel supports at most 20 pattern rows")
    demand_list = _demands(P)
    cdef int nperm = len(demand_list)
    cdef int ncode = 1 << k
    cdef int* off = <int*> malloc((nperm + 1) * sizeof(int))
    cdef int total = sum(len(d) for d in demand_list)
    cdef int* dcode = <int*> malloc((total if total else 1) * sizeof(int))
    cdef int* dcnt = <int*> malloc((total if total else 1) * sizeof(int))
    cdef int* hcnt = <int*> calloc(ncode, sizeof(int))
    cdef int* need = <int*> calloc(ncode, sizeof(int))
    cdef int* hcode = <int*> malloc(m * sizeof(int))
    cdef int* rows = <int*> malloc(k * sizeof(int))
    cdef int* cols = <int*> malloc(b * sizeof(int))
    cdef int* best = <int*> malloc(b * sizeof(int))
    cdef int i, j, c, t, q, e, nb, code_, pos
    cdef bint feasible, have, better, hit = False
    try:
        pos = 0
        for q in range(nperm):
            off[q] = pos
            for code, cnt in demand_list[q]:
                dcode[pos] = code
                dcnt[pos] = cnt
                pos += 1
        off[nperm] = pos
        for i in range(k):
            rows[i] = i
        with nogil:
            while True:
                for c in range(m):
                    code_ = 0
                    for t in range(k):
                        if a[rows[t], c]:
                            code_ |= 1 << t
                    hcode[c] = code_
                    hcnt[code_] += 1
                have = False
                for q in range(nperm):
                    feasible = True
                    for e in range(off[q], off[q + 1]):
                        if hcnt[dcode[e]] < dcnt[e]:
                            feasible = False
                            break
                    if not feasible:
                        continue
                    for e in range(off[q], off[q + 1]):
                        need[dcode[e]] = dcnt[e]
                    nb = 0
                    for c in range(m):
                        if need[hcode[c]] > 0:
                            need[hcode[c]] -= 1
                            cols[nb] = c
                            nb += 1
                    better = not have
                    if have:
                        for j in range(b):
                            if cols[j] != best[j]:
                                better = cols[j] < best[j]
                                break
                    if better:
                        for j in range(b):
                            best[j] = cols[j]
                        have = True
                for c in range(m):
                    hcnt[hcode[c]] = 0
                if have:
                    hit = True
                    break
                if not _next_combo(rows, k, n):
                    break
        if hit:
            return tuple([rows[i] for i in range(k)]), tuple([best[j] for j in range(b)])
        return None
    finally:
        free(off)
        free(dcode)
        free(dcnt)
        free(hcnt)
        free(need)
        free(hcode)
        free(rows)
        free(cols)
        free(best)


def count_ordered(A, P, long long cap):
    cdef const unsigned char[:, ::1] a = A.array
    cdef const unsigned char[:, ::1] p = P.array
    cdef int n = a.shape[0], m = a.shape[1], k = p.shape[0], b = p.shape[1]
    if k == 0 or b == 0 or k > n or b > m or cap <= 0:
        return 0
    cdef int* rows = <int*> malloc(k * sizeof(int))
    cdef long long* ways = <long long*> malloc((b + 1) * sizeof(long long))
    cdef int i, j, c, t
    cdef bint match
    cdef long long total = 0, v
    try:
        for i in range(k):
            rows[i] = i
        with nogil:
            while True:
                ways[0] = 1
                for j in range(1, b + 1):
                    ways[j] = 0
                for c in range(m):
                    for j in range(b - 1, -1, -1):
                        if ways[j] == 0:
                            continue
                        match = True
                        for t in range(k):
                            if a[rows[t], c] != p[t, j]:
                                match = False
                                break
                        if match:
                            v = ways[j + 1] + ways[j]
                            ways[j + 1] = v if v < cap else cap
                total += ways[b]
                if total >= cap:
                    total = cap
                    break
                if not _next_combo(rows, k, n):
                    break
        return total
    finally:
        free(rows)
        free(ways)


def p2_pairs(A):
    cdef const unsigned char[:, ::1] a = A.array
    cdef int n = a.shape[0], W = 0
    cdef uint64_t* R = _pack(a, 1, &W)
    cdef int r, q, w, w2, c1, c2
    cdef uint64_t u, x
    out = []
    try:
        for r in range(n):
            for q in range(r + 1, n):
                c1 = -1
                for w in range(W):
                    u = R[r * W + w] & ~R[q * W + w]
                    if u:
                        c1 = w * 64 + __builtin_ctzll(u)
                        break
                if c1 < 0:
                    continue
                c2 = -1
                w = c1 >> 6
                x = (R[q * W + w] & ~R[r * W + w])
                if (c1 & 63) == 63:
                    x = 0
                else:
                    x &= ~((((<uint64_t> 1) << ((c1 & 63) + 1))) - 1)
                if x:
                    c2 = w * 64 + __builtin_ctzll(x)
                else:
                    for w2 in range(w + 1, W):
                        x = R[q * W + w2] & ~R[r * W + w2]
                        if x:
                            c2 = w2 * 64 + __builtin_ctzll(x)
                            break
                if c2 >= 0:
                    out.append((r, q, c1, c2))
        return out
    finally:
        free(R)


def gamma_free(A):
    cdef const unsigned char[:, ::1] a = A.array
    cdef int n = a.shape[0], W = 0
    cdef uint64_t* R = _pack(a, 1, &W)
    cdef int r, q, w, c
    cdef uint64_t u, x
    cdef bint bad = False
    try:
        with nogil:
            for r in range(n):
                for q in range(r + 1, n):
                    c = -1
                    for w in range(W):
                        u = R[r * W + w] & R[q * W + w]
                        if u:
                            c = w * 64 + __builtin_ctzll(u)
                            break
                    if c < 0:
                        continue
                    w = c >> 6
                    x = R[r * W + w] & ~R[q * W + w]
                    if (c & 63) == 63:
                        x = 0
                    else:
                        x &= ~((((<uint64_t> 1) << ((c & 63) + 1))) - 1)
                    if not x:
                        for w in range((c >> 6) + 1, W):
                            x = R[r * W + w] & ~R[q * W + w]
                            if x:
                                break
                    if x:
                        bad = True
                        break
                if bad:
                    break
        return not bad
    finally:
        free(R)


cdef struct BB:
    int n
    int W
    uint64_t* rows
    uint64_t* masks      # (n + 2) * W, one per depth
    int* cands           # (n + 2) * n, one candidate list per depth
    int* cur
    int* best_rows
    uint64_t* best_mask
    int best
    bint found
    long long nodes
    long long budget
    bint aborted


cdef void _search(BB* s, int depth, int ncand, int* cand) noexcept nogil:
    cdef int W = s.W
    cdef uint64_t* mask = s.masks + depth * W
    cdef uint64_t* child = s.masks + (depth + 1) * W
    cdef int* newc = s.cands + (depth + 1) * s.n
    cdef int pc, val, i, r, nn, idx, w, cnt
    s.nodes += 1
    if s.budget >= 0 and s.nodes > s.budget:
        s.aborted = True
        return
    pc = _popcount(mask, W)
    val = depth if depth < pc else pc
    if val > s.best:
        s.best = val
        s.found = True
        for i in range(val):
            s.best_rows[i] = s.cur[i]
        for w in range(W):
            s.best_mask[w] = mask[w]
    if pc <= s.best:
        return
    nn = 0
    for i in range(ncand):
        r = cand[i]
        cnt = 0
        for w in range(W):
            cnt += __builtin_popcountll(mask[w] & s.rows[r * W + w])
        if cnt > s.best:
            newc[nn] = r
            nn += 1
    for idx in range(nn):
        if s.aborted:
            return
        if depth + nn - idx <= s.best:
            break
        r = newc[idx]
        cnt = 0
        for w in range(W):
            child[w] = mask[w] & s.rows[r * W + w]
            cnt += __builtin_popcountll(child[w])
        if cnt <= s.best:
            continue
        s.cur[depth] = r
        _search(s, depth + 1, nn - idx - 1, newc + idx + 1)


def max_square(A, int value, int lower=0, long long budget=-1):
    cdef const unsigned char[:, ::1] a = A.array
    cdef int n = a.shape[0], m = a.shape[1], W = 0
    cdef BB s
    cdef int i, w, size
    s.rows = _pack(a, value, &W)
    s.n = n
    s.W = W
    s.masks = <uint64_t*> calloc(<size_t>(n + 2) * W, sizeof(uint64_t))
    s.cands = <int*> calloc(<size_t>(n + 2) * (n if n > 0 else 1), sizeof(int))
    s.cur = <int*> calloc(n + 1, sizeof(int))
    s.best_rows = <int*> calloc(n + 1, sizeof(int))
    s.best_mask = <uint64_t*> calloc(W, sizeof(uint64_t))
    s.best = lower - 1 if lower > 0 else 0
    s.found = False
    s.nodes = 0
    s.budget = budget
    s.aborted = False
    try:
        for i in range(m):
            s.masks[i >> 6] |= (<uint64_t> 1) << (i & 63)
        for i in range(n):
            s.cands[i] = i
        with nogil:
            _search(&s, 0, n, s.cands)
        if not s.found:
            return 0, (), (), not s.aborted
        size = s.best
        rows = tuple([s.best_rows[i] for i in range(size)])
        cols = []
        for i in range(m):
            if len(cols) >= size:
                break
            if (s.best_mask[i >> 6] >> (i & 63)) & 1:
                cols.append(i)
        return size, rows, tuple(cols), not s.aborted
    finally:
        free(s.rows)
        free(s.masks)
        free(s.cands)
        free(s.cur)
        free(s.best_rows)
        free(s.best_mask)
