"""Profiles and the social rules evaluated on them.

Subsets of the society are plain ``int`` bitmasks over the individual indices
``0..n-1`` (bit ``i`` set means individual ``i`` is a member). Use
:func:`mask` and :func:`members` to convert from and to index lists.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import kernels
from .errors import InputError

# -- bitset helpers ---------------------------------------------------------


def mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        if i < 0:
            raise InputError(f"negative index {i}")
        out |= 1 << i
    return out


def members(m: int) -> list:
    """Sorted list of indices set in ``m``."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def full(n: int) -> int:
    return (1 << n) - 1


def as_mask(n: int, subset) -> int:
    """Accept an int bitmask or an iterable of indices; check it lies in ``[0, n)``."""
    if isinstance(subset, bool):
        raise InputError("subset must be a bitmask or iterable of indices")
    if isinstance(subset, int):
        m = subset
        if m < 0:
            raise InputError("subset bitmask must be non-negative")
    else:
        m = mask(subset)
    if m >> n:
        bad = [i for i in members(m) if i >= n]
        raise InputError(f"index {bad[0]} out of range for n={n}")
    return m


# -- profiles ---------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """An n-by-n opinion matrix; ``rows[i]`` holds the individuals ``i`` qualifies.

    The transposed view ``cols[j]`` (who qualifies ``j``) is precomputed since
    every rule scans columns.
    """

    rows: tuple
    names: tuple = ()
    cols: tuple = field(init=False, repr=False, compare=False)
    selfm: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise InputError("a profile needs at least one individual")
        rows = tuple(int(r) for r in self.rows)
        for i, r in enumerate(rows):
            if r < 0 or r >> n:
                raise InputError(f"row {i} has entries outside the {n} columns")
        names = tuple(self.names) if self.names else (None,) * n
        if len(names) != n:
            raise InputError(f"{len(names)} names given for {n} individuals")
        cols = [0] * n
        for i, r in enumerate(rows):
            bit = 1 << i
            for j in members(r):
                cols[j] |= bit
        selfm = 0
        for i, r in enumerate(rows):
            if (r >> i) & 1:
                selfm |= 1 << i
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "cols", tuple(cols))
        object.__setattr__(self, "selfm", selfm)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], names=()):
        """Build from a square 0/1 matrix (lists of ints or ``"0101"`` strings)."""
        n = len(matrix)
        rows = []
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise InputError(f"row {i} has length {len(row)}, expected {n}")
            r = 0
            for j, v in enumerate(row):
                v = int(v)
                if v not in (0, 1):
                    raise InputError(f"entry ({i},{j}) is {v}, expected 0 or 1")
                if v:
                    r |= 1 << j
            rows.append(r)
        return cls(tuple(rows), tuple(names))

    @classmethod
    def from_entries(cls, n: int, ones: Iterable, names=()):
        """Build from the list of ``(i, j)`` pairs with ``phi(i, j) = 1``."""
        rows = [0] * n
        for i, j in ones:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"entry ({i},{j}) out of range for n={n}")
            rows[i] |= 1 << j
        return cls(tuple(rows), tuple(names))

    @property
    def n(self) -> int:
        return len(self.rows)

    def phi(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return (self.rows[i] >> j) & 1

    def matrix(self) -> list:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def with_entry(self, i: int, j: int, value: int) -> "Profile":
        self._check(i)
        self._check(j)
        rows = list(self.rows)
        if value:
            rows[i] |= 1 << j
        else:
            rows[i] &= ~(1 << j)
        return Profile(tuple(rows), self.names)

    def permuted(self, order: Sequence[int]) -> "Profile":
        """Relabel so that new individual ``p`` is old individual ``order[p]``."""
        if sorted(order) != list(range(self.n)):
            raise InputError("order must be a permutation of range(n)")
        rows = []
        for p in order:
            r = 0
            for q, old in enumerate(order):
                if (self.rows[p] >> old) & 1:
                    r |= 1 << q
            rows.append(r)
        return Profile(tuple(rows), tuple(self.names[p] for p in order))

    def _check(self, i):
        if not 0 <= i < self.n:
            raise InputError(f"index {i} out of range for n={self.n}")


# -- rules ------------------------------------------------------------------

CONSENT = "consent"
CSR = "csr"
LSR = "lsr"

_KIND_CODE = {CONSENT: kernels.CONSENT, CSR: kernels.CSR, LSR: kernels.LSR}


@dataclass(frozen=True)
class RuleSpec:
    kind: str
    s: Optional[int] = None
    t: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KIND_CODE:
            raise InputError(f"unknown rule kind {self.kind!r}")
        if self.kind == CONSENT:
            for name in ("s", "t"):
                v = getattr(self, name)
                if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                    raise InputError(f"consent quota {name} must be a positive integer, got {v!r}")
        elif self.s is not None or self.t is not None:
            raise InputError(f"{self.kind} takes no quotas")

    @classmethod
    def consent(cls, s: int, t: int) -> "RuleSpec":
        return cls(CONSENT, s, t)

    @classmethod
    def csr(cls) -> "RuleSpec":
        return cls(CSR)

    @classmethod
    def lsr(cls) -> "RuleSpec":
        return cls(LSR)

    @property
    def is_consent(self) -> bool:
        return self.kind == CONSENT

    def kernel_args(self):
        """``(kind code, s, t)`` as the kernels expect them."""
        if self.kind == CONSENT:
            return _KIND_CODE[CONSENT], self.s, self.t
        return _KIND_CODE[self.kind], 1, 1

    def __str__(self):
        if self.kind == CONSENT:
            return f"consent {self.s} {self.t}"
        return self.kind


def _run(profile: Profile, rule: RuleSpec, T: int) -> int:
    kind, s, t = rule.kernel_args()
    k = kernels.for_size(profile.n)
    return k.eval_mask(kind, s, t, profile.cols, profile.rows, profile.selfm, T)


def eval_consent(profile: Profile, rule: RuleSpec, T) -> int:
    """Socially qualified members of ``T`` under the consent rule ``(s, t)``.

    A self-qualifier needs at least ``s`` qualifiers in ``T``; a
    self-disqualifier is kept unless at least ``t`` members of ``T``
    disqualify it. Both counts include the individual itself.
    """
    if not isinstance(rule, RuleSpec) or rule.kind != CONSENT:
        raise InputError("eval_consent needs a consent RuleSpec")
    return _run(profile, rule, as_mask(profile.n, T))


def eval_csr(profile: Profile, T) -> int:
    """Closure from the members of ``T`` qualified by all of ``T``."""
    return _run(profile, RuleSpec.csr(), as_mask(profile.n, T))


def eval_lsr(profile: Profile, T) -> int:
    """Closure from the self-qualifiers in ``T``."""
    return _run(profile, RuleSpec.lsr(), as_mask(profile.n, T))


def evaluate(profile: Profile, rule: RuleSpec, T) -> int:
    if not isinstance(rule, RuleSpec):
        raise InputError(f"expected a RuleSpec, got {type(rule).__name__}")
    return _run(profile, rule, as_mask(profile.n, T))
