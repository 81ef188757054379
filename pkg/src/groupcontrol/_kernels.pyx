# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels (n <= 64). Mirrors ``_kernels_py`` exactly."""

from libc.stdint cimport uint64_t, int64_t

cdef enum:
    MAXN = 64
    ADD = 0
    DELETE = 1
    PARTITION = 2

CONSENT = 0
CSR = 1
LSR = 2

BACKEND = "cython"
# bit 63 would collide with the -1 "no witness" sentinel
MAX_N = 63


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef struct Profile:
    int kind
    int s
    int t
    int n
    uint64_t selfm
    uint64_t cols[MAXN]
    uint64_t rows[MAXN]


cdef int load(Profile* p, int kind, int s, int t, cols, rows, selfm) except -1:
    cdef int n = len(cols)
    if n > MAX_N:
        raise ValueError("compiled kernels support at most 63 individuals")
    if kind < 0 or kind > 2:
        raise ValueError(f"unknown rule kind {kind}")
    p.kind = kind
    p.s = s
    p.t = t
    p.n = n
    p.selfm = <uint64_t>selfm
    cdef int i
    for i in range(n):
        p.cols[i] = <uint64_t>cols[i]
        p.rows[i] = <uint64_t>rows[i]
    return 0


cdef uint64_t c_closure(const Profile* p, uint64_t seed, uint64_t T) nogil:
    cdef uint64_t result = seed & T
    cdef uint64_t frontier = result
    cdef uint64_t reach, f
    cdef int a
    while frontier:
        reach = 0
        f = frontier
        while f:
            a = __builtin_ctzll(f)
            f &= f - 1
            reach |= p.rows[a]
        frontier = reach & T & ~result
        result |= frontier
    return result


cdef uint64_t c_eval(const Profile* p, uint64_t T) nogil:
    cdef uint64_t out = 0
    cdef uint64_t rest = T
    cdef uint64_t seed = 0
    cdef int a, q
    cdef int size
    if p.kind == 0:
        size = popcount(T)
        while rest:
            a = __builtin_ctzll(rest)
            rest &= rest - 1
            q = popcount(p.cols[a] & T)
            if (p.selfm >> a) & 1:
                if q >= p.s:
                    out |= (<uint64_t>1) << a
            elif size - q <= p.t - 1:
                out |= (<uint64_t>1) << a
        return out
    if p.kind == 1:
        while rest:
            a = __builtin_ctzll(rest)
            rest &= rest - 1
            if (p.cols[a] & T) == T:
                seed |= (<uint64_t>1) << a
        return c_closure(p, seed, T)
    return c_closure(p, p.selfm & T, T)


cdef inline uint64_t full_mask(int n) nogil:
    if n >= 64:
        return ~(<uint64_t>0)
    return ((<uint64_t>1) << n) - 1


cdef inline bint accepts(const Profile* p, int mode, uint64_t S, uint64_t T, uint64_t u) nogil:
    cdef uint64_t full = full_mask(p.n)
    cdef uint64_t v
    if mode == ADD:
        return (c_eval(p, T | u) & S) == S
    if mode == DELETE:
        return (c_eval(p, full & ~u) & S) == S
    v = c_eval(p, u) | c_eval(p, full & ~u)
    return (c_eval(p, v) & S) == S


cdef int64_t walk(const Profile* p, int mode, uint64_t S, uint64_t T,
                  uint64_t pool, uint64_t fixed, int k) nogil:
    """Size-then-lexicographic walk over subsets of ``pool`` (plus ``fixed``)."""
    cdef int members[MAXN]
    cdef int idx[MAXN]
    cdef int m = 0
    cdef uint64_t rest = pool
    cdef uint64_t u
    cdef int r, i, j
    while rest:
        members[m] = __builtin_ctzll(rest)
        rest &= rest - 1
        m += 1
    if k > m:
        k = m
    for r in range(k + 1):
        for i in range(r):
            idx[i] = i
        while True:
            u = fixed
            for i in range(r):
                u |= (<uint64_t>1) << members[idx[i]]
            if accepts(p, mode, S, T, u):
                return <int64_t>u
            i = r - 1
            while i >= 0 and idx[i] == m - r + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, r):
                idx[j] = idx[j - 1] + 1
    return -1


def closure(rows, uint64_t seed, uint64_t T):
    cdef Profile p
    load(&p, 2, 1, 1, [0] * len(rows), rows, 0)
    return c_closure(&p, seed, T)


def eval_mask(int kind, int s, int t, cols, rows, uint64_t selfm, uint64_t T):
    cdef Profile p
    load(&p, kind, s, t, cols, rows, selfm)
    return c_eval(&p, T)


def search_add(int kind, int s, int t, cols, rows, uint64_t selfm,
               uint64_t S, uint64_t T, uint64_t pool, int k):
    cdef Profile p
    cdef int64_t r
    load(&p, kind, s, t, cols, rows, selfm)
    with nogil:
        r = walk(&p, ADD, S, T, pool, 0, k)
    return r


def search_delete(int kind, int s, int t, cols, rows, uint64_t selfm, int n,
                  uint64_t S, uint64_t pool, int k):
    cdef Profile p
    cdef int64_t r
    load(&p, kind, s, t, cols, rows, selfm)
    with nogil:
        r = walk(&p, DELETE, S, 0, pool, 0, k)
    return r


def partition_value(int kind, int s, int t, cols, rows, uint64_t selfm, int n, uint64_t U):
    cdef Profile p
    load(&p, kind, s, t, cols, rows, selfm)
    cdef uint64_t full = full_mask(p.n)
    cdef uint64_t v = c_eval(&p, U) | c_eval(&p, full & ~U)
    return c_eval(&p, v)


def search_partition(int kind, int s, int t, cols, rows, uint64_t selfm, int n, uint64_t S):
    cdef Profile p
    cdef int64_t r
    if n == 0:
        return -1
    load(&p, kind, s, t, cols, rows, selfm)
    cdef uint64_t rest = full_mask(n) & ~(<uint64_t>1)
    with nogil:
        r = walk(&p, PARTITION, S, 0, rest, 1, n - 1)
    return r
