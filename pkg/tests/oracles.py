"""Naive reference implementations used as test oracles.

These work on plain Python sets and nested lists and follow the rule
definitions clause by clause. They share no code with the package.
"""

import itertools

import numpy as np


def naive_consent(phi, s, t, T):
    out = set()
    for a in T:
        yes = sum(1 for b in T if phi[b][a] == 1)
        no = sum(1 for b in T if phi[b][a] == 0)
        if phi[a][a] == 1 and yes >= s:
            out.add(a)
        elif phi[a][a] == 0 and no <= t - 1:
            out.add(a)
    return out


def naive_procedural(phi, T, kind):
    """Round-by-round K_0, K_1, ... until nothing changes."""
    T = set(T)
    if kind == "csr":
        K = {a for a in T if all(phi[b][a] == 1 for b in T)}
    else:
        K = {a for a in T if phi[a][a] == 1}
    while True:
        nxt = K | {a for a in T if any(phi[b][a] == 1 for b in K)}
        if nxt == K:
            return K
        K = nxt


def naive_eval(phi, rule, T):
    """``rule`` is ('consent', s, t), ('csr',) or ('lsr',)."""
    if rule[0] == "consent":
        return naive_consent(phi, rule[1], rule[2], set(T))
    return naive_procedural(phi, T, rule[0])


def subsets(items, max_size=None):
    items = sorted(items)
    top = len(items) if max_size is None else min(max_size, len(items))
    for r in range(top + 1):
        for c in itertools.combinations(items, r):
            yield set(c)


def naive_control(phi, rule, problem, S, T=None, k=None):
    """Exhaustive yes/no for a control instance, with no budget shortcuts."""
    n = len(phi)
    N = set(range(n))
    S = set(S)
    if problem == "GCAI":
        return any(S <= naive_eval(phi, rule, set(T) | U) for U in subsets(N - set(T), k))
    if problem == "GCDI":
        return any(S <= naive_eval(phi, rule, N - U) for U in subsets(N - S, k))
    for U in subsets(N):
        V = naive_eval(phi, rule, U) | naive_eval(phi, rule, N - U)
        if S <= naive_eval(phi, rule, V):
            return True
    return False


def box_feasible(bounds, constraints):
    """Lexicographically smallest integer point by full box enumeration, or None.

    ``constraints`` is a list of (coeffs, relation, rhs).
    """
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in bounds]
    if not axes:
        ok = all((0 <= rhs) if rel == "<=" else (0 >= rhs) for _, rel, rhs in constraints)
        return () if ok else None
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    keep = np.ones(len(grid), dtype=bool)
    for coeffs, rel, rhs in constraints:
        act = grid @ np.asarray(coeffs, dtype=np.int64)
        keep &= act <= rhs if rel == "<=" else act >= rhs
    hits = np.flatnonzero(keep)
    if len(hits) == 0:
        return None
    # meshgrid with ij indexing enumerates in lexicographic order
    return tuple(int(v) for v in grid[hits[0]])
