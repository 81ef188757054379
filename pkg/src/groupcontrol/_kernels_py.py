"""Pure-Python hot kernels.

Reference twin of ``_kernels.pyx``; both modules expose the same functions
with the same argument conventions and must return identical results.

Conventions: subsets are int bitmasks over ``[0, n)``; ``cols[a]`` is the
mask of individuals qualifying ``a``; ``rows[i]`` is the mask of individuals
``i`` qualifies; ``selfm`` is the mask of self-qualifiers. ``kind`` is
0 (consent), 1 (CSR) or 2 (LSR). Search functions return the witness mask
or -1.
"""

from itertools import combinations

CONSENT = 0
CSR = 1
LSR = 2

BACKEND = "python"


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def closure(rows, seed, T):
    result = seed & T
    frontier = result
    while frontier:
        reach = 0
        for a in _bits(frontier):
            reach |= rows[a]
        frontier = reach & T & ~result
        result |= frontier
    return result


def eval_mask(kind, s, t, cols, rows, selfm, T):
    if kind == CONSENT:
        size = T.bit_count()
        out = 0
        for a in _bits(T):
            q = (cols[a] & T).bit_count()
            if (selfm >> a) & 1:
                if q >= s:
                    out |= 1 << a
            elif size - q <= t - 1:
                out |= 1 << a
        return out
    if kind == CSR:
        seed = 0
        for a in _bits(T):
            if cols[a] & T == T:
                seed |= 1 << a
        return closure(rows, seed, T)
    if kind == LSR:
        return closure(rows, selfm & T, T)
    raise ValueError(f"unknown rule kind {kind}")


def _subsets(pool, k):
    members = list(_bits(pool))
    for size in range(min(k, len(members)) + 1):
        for combo in combinations(members, size):
            u = 0
            for i in combo:
                u |= 1 << i
            yield u


def search_add(kind, s, t, cols, rows, selfm, S, T, pool, k):
    for u in _subsets(pool, k):
        if eval_mask(kind, s, t, cols, rows, selfm, T | u) & S == S:
            return u
    return -1


def search_delete(kind, s, t, cols, rows, selfm, n, S, pool, k):
    full = (1 << n) - 1
    for u in _subsets(pool, k):
        if eval_mask(kind, s, t, cols, rows, selfm, full & ~u) & S == S:
            return u
    return -1


def partition_value(kind, s, t, cols, rows, selfm, n, U):
    full = (1 << n) - 1
    v = eval_mask(kind, s, t, cols, rows, selfm, U)
    v |= eval_mask(kind, s, t, cols, rows, selfm, full & ~U)
    return eval_mask(kind, s, t, cols, rows, selfm, v)


def search_partition(kind, s, t, cols, rows, selfm, n, S):
    if n == 0:
        return -1
    rest = ((1 << n) - 1) & ~1
    for extra in _subsets(rest, n - 1):
        u = extra | 1
        if partition_value(kind, s, t, cols, rows, selfm, n, u) & S == S:
            return u
    return -1
