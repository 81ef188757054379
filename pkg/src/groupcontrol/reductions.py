"""Hardness reductions as instance generators, plus exhaustive source deciders.

Each generator maps a source instance to a control instance that is a
yes-instance exactly when the source is. The ``*_layout`` helpers expose
which indices play which role in the generated profile. Profile entries the
constructions leave unconstrained are always 0.

Index layouts (all 0-based):

* RX3C-based: element individuals ``0..3k-1``, then one individual per
  3-set in input order, then dummies.
* 3-SAT-based: ``a(x,1)`` per variable, ``a(x,2)`` per variable, ``a(c)`` per
  clause (after padding), ``a(C)``, then the two dummy blocks ``A1``, ``A2``.
* LRBDS-based: one individual per red vertex (input order), one per blue
  vertex, one per label, ``w``, then dummies.
"""

import itertools
import math
import random
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError
from .instances import GcaiInstance, GcdiInstance, GcpiInstance
from .rules import Profile, RuleSpec, mask

ORACLE_MAX_BITS = 24


def _limit(count, what):
    if count > 2**ORACLE_MAX_BITS:
        raise ResourceLimitError(f"{what} oracle search space", 2**ORACLE_MAX_BITS, count)


# -- source instances ---------------------------------------------------------


@dataclass(frozen=True)
class Rx3cInstance:
    """Exact cover by 3-sets where every element lies in exactly three sets.

    Elements are ``0..3*kappa-1``; ``sets`` may repeat.
    """

    kappa: int
    sets: tuple

    def __post_init__(self):
        if not isinstance(self.kappa, int) or self.kappa < 1:
            raise InputError(f"kappa must be a positive integer, got {self.kappa!r}")
        sets = tuple(tuple(sorted(int(x) for x in c)) for c in self.sets)
        size = 3 * self.kappa
        if len(sets) != size:
            raise InputError(f"expected {size} sets for kappa={self.kappa}, got {len(sets)}")
        counts = [0] * size
        for j, c in enumerate(sets):
            if len(c) != 3 or len(set(c)) != 3:
                raise InputError(f"set {j} must have three distinct elements: {c}")
            for x in c:
                if not 0 <= x < size:
                    raise InputError(f"set {j} names element {x} outside 0..{size - 1}")
                counts[x] += 1
        for x, cnt in enumerate(counts):
            if cnt != 3:
                raise InputError(f"element {x} occurs in {cnt} sets, expected exactly 3")
        object.__setattr__(self, "sets", sets)

    @property
    def num_elements(self):
        return 3 * self.kappa


@dataclass(frozen=True)
class ThreeSatInstance:
    """CNF with exactly three literals per clause.

    A literal is ``(var, positive)``; literals in a clause may repeat.
    """

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if not isinstance(self.num_vars, int) or self.num_vars < 0:
            raise InputError("num_vars must be a non-negative integer")
        clauses = []
        for j, c in enumerate(self.clauses):
            c = tuple((int(v), bool(pos)) for v, pos in c)
            if len(c) != 3:
                raise InputError(f"clause {j} has {len(c)} literals, expected 3")
            for v, _ in c:
                if not 0 <= v < self.num_vars:
                    raise InputError(f"clause {j} uses undeclared variable {v}")
            clauses.append(c)
        object.__setattr__(self, "clauses", tuple(clauses))


def _check_graph(n_red, n_blue, edges):
    if n_red < 0 or n_blue < 0:
        raise InputError("vertex counts must be non-negative")
    out = set()
    for r, b in edges:
        if not (0 <= r < n_red and 0 <= b < n_blue):
            raise InputError(f"edge ({r},{b}) out of range")
        out.add((int(r), int(b)))
    return frozenset(out)


@dataclass(frozen=True)
class RbdsInstance:
    """Red-blue dominating set: at most ``k`` red vertices dominating all blue ones."""

    n_red: int
    n_blue: int
    edges: frozenset
    k: int

    def __post_init__(self):
        object.__setattr__(self, "edges", _check_graph(self.n_red, self.n_blue, self.edges))
        if self.k < 0:
            raise InputError("k must be non-negative")


@dataclass(frozen=True)
class LrbdsInstance:
    """Labeled variant: at most one red vertex per label ``1..k``.

    ``labels[r]`` is the label of red vertex ``r``.
    """

    labels: tuple
    n_blue: int
    edges: frozenset
    k: int

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if self.k < 0:
            raise InputError("k must be non-negative")
        for r, lab in enumerate(labels):
            if not 1 <= lab <= self.k:
                raise InputError(f"red vertex {r} has label {lab} outside 1..{self.k}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", _check_graph(len(labels), self.n_blue, self.edges))

    @property
    def n_red(self):
        return len(self.labels)


# -- deciders -----------------------------------------------------------------


def oracle_rx3c(src: Rx3cInstance) -> bool:
    _limit(math.comb(len(src.sets), src.kappa), "rx3c")
    everything = (1 << src.num_elements) - 1
    covers = [mask(c) for c in src.sets]
    for pick in itertools.combinations(covers, src.kappa):
        union = 0
        for c in pick:
            if union & c:
                break
            union |= c
        else:
            if union == everything:
                return True
    return False


def oracle_3sat(src: ThreeSatInstance) -> bool:
    _limit(2**src.num_vars, "3sat")
    for values in itertools.product((False, True), repeat=src.num_vars):
        if all(any(values[v] == pos for v, pos in c) for c in src.clauses):
            return True
    return False


def _dominates(chosen, n_blue, edges):
    covered = {b for r, b in edges if r in chosen}
    return len(covered) == n_blue


def oracle_rbds(src: RbdsInstance) -> bool:
    size = min(src.k, src.n_red)
    _limit(sum(math.comb(src.n_red, i) for i in range(size + 1)), "rbds")
    for i in range(size + 1):
        for chosen in itertools.combinations(range(src.n_red), i):
            if _dominates(set(chosen), src.n_blue, src.edges):
                return True
    return False


def oracle_lrbds(src: LrbdsInstance) -> bool:
    classes = [[None] + [r for r, lab in enumerate(src.labels) if lab == i] for i in range(1, src.k + 1)]
    _limit(math.prod(len(c) for c in classes), "lrbds")
    for pick in itertools.product(*classes):
        if _dominates({r for r in pick if r is not None}, src.n_blue, src.edges):
            return True
    return False


# -- RX3C-based constructions -------------------------------------------------


def rx3c_layout(src: Rx3cInstance, dummies: int = 0) -> dict:
    m = src.num_elements
    c = len(src.sets)
    return {
        "elements": list(range(m)),
        "sets": list(range(m, m + c)),
        "dummies": list(range(m + c, m + c + dummies)),
    }


def _names(layout):
    names = []
    for i in layout["elements"]:
        names.append(f"x{i}")
    for j, _ in enumerate(layout["sets"]):
        names.append(f"c{j}")
    for j, _ in enumerate(layout["dummies"]):
        names.append(f"d{j}")
    return tuple(names)


def rx3c_to_gcai_consent(src: Rx3cInstance, s: int, t: int) -> GcaiInstance:
    """Adding control under consent ``(s, t)``, ``s >= 2``; budget ``kappa``."""
    if s < 2 or t < 1:
        raise InputError("this construction needs s >= 2 and t >= 1")
    lay = rx3c_layout(src, dummies=s - 2)
    X, C, D = lay["elements"], lay["sets"], lay["dummies"]
    ones = [(x, x) for x in X]
    for a_c, c in zip(C, src.sets):
        ones.extend((a_c, X[x]) for x in c)
    ones.extend((d, x) for d in D for x in X)
    n = len(X) + len(C) + len(D)
    profile = Profile.from_entries(n, ones, _names(lay))
    return GcaiInstance(profile, RuleSpec.consent(s, t), mask(X), mask(X + D), src.kappa)


def rx3c_to_gcdi_consent(src: Rx3cInstance, s: int, t: int) -> GcdiInstance:
    """Deletion control under consent ``(s, t)``, ``t >= 3``; budget ``2 kappa``.

    The opinions of the adding construction are flipped; ``t - 3`` extra
    members of S are qualified by everyone else and so survive any deletion.
    """
    if s < 1 or t < 3:
        raise InputError("this construction needs s >= 1 and t >= 3")
    lay = rx3c_layout(src, dummies=t - 3)
    X, C, D = lay["elements"], lay["sets"], lay["dummies"]
    ones = [(x, y) for x in X for y in X if x != y]
    for a_c, c in zip(C, src.sets):
        ones.extend((a_c, X[x]) for x in X if x not in c)
    ones.extend((a, b) for a in C for b in C)
    n = len(X) + len(C) + len(D)
    ones.extend((y, d) for d in D for y in range(n) if y != d)
    profile = Profile.from_entries(n, ones, _names(lay))
    return GcdiInstance(profile, RuleSpec.consent(s, t), mask(X + D), 2 * src.kappa)


def rx3c_to_gcai_lsr(src: Rx3cInstance) -> GcaiInstance:
    """Adding control under LSR: only set individuals qualify themselves."""
    lay = rx3c_layout(src)
    X, C = lay["elements"], lay["sets"]
    ones = [(a_c, a_c) for a_c in C]
    for a_c, c in zip(C, src.sets):
        ones.extend((a_c, X[x]) for x in c)
    profile = Profile.from_entries(len(X) + len(C), ones, _names(lay))
    return GcaiInstance(profile, RuleSpec.lsr(), mask(X), mask(X), src.kappa)


def rx3c_to_gcai_csr(src: Rx3cInstance) -> GcaiInstance:
    """Adding control under CSR: added set individuals are unanimously qualified."""
    lay = rx3c_layout(src)
    X, C = lay["elements"], lay["sets"]
    ones = [(x, a_c) for x in X for a_c in C]
    ones.extend((a, b) for a in C for b in C)
    for a_c, c in zip(C, src.sets):
        ones.extend((a_c, X[x]) for x in c)
    profile = Profile.from_entries(len(X) + len(C), ones, _names(lay))
    return GcaiInstance(profile, RuleSpec.csr(), mask(X), mask(X), src.kappa)


# -- 3-SAT-based construction -------------------------------------------------


def padded_clauses(src: ThreeSatInstance, t: int) -> tuple:
    """Clauses with the first one repeated until there are at least ``t - 1``."""
    clauses = list(src.clauses)
    if t >= 3 and len(clauses) < t - 1:
        if not clauses:
            raise InputError("cannot pad an empty clause list")
        clauses.extend([clauses[0]] * (t - 1 - len(clauses)))
    return tuple(clauses)


def threesat_layout(src: ThreeSatInstance, t: int) -> dict:
    m = src.num_vars
    nc = len(padded_clauses(src, t))
    nd = t - 2 if t >= 3 else 0
    base = 2 * m + nc
    return {
        "x1": list(range(m)),
        "x2": list(range(m, 2 * m)),
        "clauses": list(range(2 * m, base)),
        "all_clauses": base,
        "A1": list(range(base + 1, base + 1 + nd)),
        "A2": list(range(base + 1 + nd, base + 1 + 2 * nd)),
    }


def threesat_to_gcpi_consent(src: ThreeSatInstance, s: int, t: int) -> GcpiInstance:
    """Partition control under consent ``(s, t)``, ``t >= 2``.

    For ``t >= 3`` the clause list is padded (see :func:`padded_clauses`) and
    ``2t - 4`` dummies are added, half of them in S.
    """
    if s < 1 or t < 2:
        raise InputError("this construction needs s >= 1 and t >= 2")
    clauses = padded_clauses(src, t)
    lay = threesat_layout(src, t)
    X1, X2, CL, aC = lay["x1"], lay["x2"], lay["clauses"], lay["all_clauses"]
    A1, A2 = lay["A1"], lay["A2"]
    core = X1 + X2 + CL + [aC]
    zero = set()
    zero.update((a, a) for a in core)
    zero.update((X2[v], X1[v]) for v in range(src.num_vars))
    zero.update((c, aC) for c in CL)
    zero.update((aC, x2) for x2 in X2)
    zero.update((c, x2) for c in CL for x2 in X2)
    for c, clause in zip(CL, clauses):
        for v, positive in clause:
            zero.add((X2[v] if positive else X1[v], c))
    ones = [(a, b) for a in core for b in core if (a, b) not in zero]
    # dummies: disqualified by all dummies; A2 disqualified by everyone;
    # A1 qualified by the non-clause core; dummies disqualify the core
    clause_set = set(CL)
    ones.extend((a, d) for a in core if a not in clause_set for d in A1)
    n = len(core) + len(A1) + len(A2)
    names = (
        [f"x{v}_1" for v in range(src.num_vars)]
        + [f"x{v}_2" for v in range(src.num_vars)]
        + [f"c{j}" for j in range(len(CL))]
        + ["C"]
        + [f"A1_{j}" for j in range(len(A1))]
        + [f"A2_{j}" for j in range(len(A2))]
    )
    profile = Profile.from_entries(n, ones, names)
    return GcpiInstance(profile, RuleSpec.consent(s, t), mask(X1 + [aC] + A1))


# -- dominating-set constructions ---------------------------------------------


def rbds_to_lrbds(src: RbdsInstance) -> LrbdsInstance:
    """Copy every red vertex once per label; copies keep the original neighbourhood.

    Red vertex ``v`` becomes ``v*k + (i-1)`` with label ``i``.
    """
    k = src.k
    labels = tuple(i for _ in range(src.n_red) for i in range(1, k + 1))
    edges = frozenset((v * k + i, u) for v, u in src.edges for i in range(k))
    return LrbdsInstance(labels, src.n_blue, edges, k)


def lrbds_layout(src: LrbdsInstance, s: int) -> dict:
    r, b, k = src.n_red, src.n_blue, src.k
    w = r + b + k
    return {
        "red": list(range(r)),
        "blue": list(range(r, r + b)),
        "labels": list(range(r + b, w)),
        "w": w,
        "dummies": list(range(w + 1, w + 1 + s - 3)),
    }


def lrbds_to_gcpi_consent(src: LrbdsInstance, s: int) -> GcpiInstance:
    """Partition control under consent ``(s, 2)``, ``s >= 3``, with ``|S| = 1``.

    Needs ``k >= 1``: with no labels and no blue vertices the two-stage vote
    cannot separate the target from the dummies.
    """
    if s < 3:
        raise InputError("this construction needs s >= 3")
    if src.k < 1:
        raise InputError("this construction needs at least one label")
    lay = lrbds_layout(src, s)
    R, B, L, w, D = lay["red"], lay["blue"], lay["labels"], lay["w"], lay["dummies"]
    ones = []
    ones.extend((B[u], B[v]) for u in range(len(B)) for v in range(len(B)) if u != v)
    ones.extend((c, c) for c in L)
    ones.extend((r, w) for r in R)
    ones.extend((c, b) for c in L for b in B)
    dummy_set = set(D)
    n = w + 1 + len(D)
    ones.extend((d, x) for d in D for x in range(n) if x not in dummy_set and x != w)
    for r in R:
        for u, b in enumerate(B):
            if (r, u) not in src.edges:
                ones.append((r, b))
        ones.append((r, L[src.labels[r] - 1]))
    names = (
        [f"r{v}" for v in R]
        + [f"b{u}" for u in range(len(B))]
        + [f"label{i + 1}" for i in range(len(L))]
        + ["w"]
        + [f"d{j}" for j in range(len(D))]
    )
    profile = Profile.from_entries(n, ones, names)
    return GcpiInstance(profile, RuleSpec.consent(s, 2), mask([w]))


# -- random sources -----------------------------------------------------------


def random_rx3c(kappa: int, rng: random.Random, max_tries: int = 10_000) -> Rx3cInstance:
    """Uniformly shuffled triple-occurrence multiset cut into 3-sets (rejection sampled)."""
    slots = [x for x in range(3 * kappa) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(slots)
        sets = [slots[i:i + 3] for i in range(0, len(slots), 3)]
        if all(len(set(c)) == 3 for c in sets):
            return Rx3cInstance(kappa, tuple(tuple(c) for c in sets))
    raise InputError(f"no valid RX3C instance found in {max_tries} tries")


def random_3sat(num_vars: int, num_clauses: int, rng: random.Random) -> ThreeSatInstance:
    clauses = tuple(
        tuple((rng.randrange(num_vars), rng.random() < 0.5) for _ in range(3))
        for _ in range(num_clauses)
    )
    return ThreeSatInstance(num_vars, clauses)


def _random_edges(n_red, n_blue, density, rng):
    return frozenset(
        (r, b) for r in range(n_red) for b in range(n_blue) if rng.random() < density
    )


def random_rbds(n_red: int, n_blue: int, k: int, rng: random.Random, density: float = 0.4) -> RbdsInstance:
    return RbdsInstance(n_red, n_blue, _random_edges(n_red, n_blue, density, rng), k)


def random_lrbds(n_red: int, n_blue: int, k: int, rng: random.Random, density: float = 0.4) -> LrbdsInstance:
    labels = tuple(rng.randint(1, k) for _ in range(n_red))
    return LrbdsInstance(labels, n_blue, _random_edges(n_red, n_blue, density, rng), k)
