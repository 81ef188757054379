"""The three group-control problems, verdicts and witness verification."""

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import InputError
from .rules import Profile, RuleSpec, as_mask, evaluate, full, members


class Problem(str, enum.Enum):
    GCAI = "GCAI"  # adding individuals
    GCDI = "GCDI"  # deleting individuals
    GCPI = "GCPI"  # partitioning individuals

    def __str__(self):
        return self.value


class Outcome(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    IMMUNE = "IMMUNE"
    ALREADY_QUALIFIED = "ALREADY_QUALIFIED"

    def __str__(self):
        return self.value


def _check_common(profile, rule, S, k):
    if not isinstance(profile, Profile):
        raise InputError("profile must be a Profile")
    if not isinstance(rule, RuleSpec):
        raise InputError("rule must be a RuleSpec")
    if S == 0:
        raise InputError("S must be nonempty")
    if k is not None and (not isinstance(k, int) or k < 0):
        raise InputError(f"budget k must be a non-negative integer, got {k!r}")


@dataclass(frozen=True)
class GcaiInstance:
    """Make all of ``S`` qualified by adding at most ``k`` individuals to ``T``."""

    profile: Profile
    rule: RuleSpec
    S: int
    T: int
    k: int

    problem = Problem.GCAI

    def __post_init__(self):
        n = self.profile.n
        object.__setattr__(self, "S", as_mask(n, self.S))
        object.__setattr__(self, "T", as_mask(n, self.T))
        _check_common(self.profile, self.rule, self.S, self.k)
        if self.S & ~self.T:
            raise InputError("S must be a subset of T")

    @property
    def pool(self) -> int:
        """Individuals that may be added."""
        return full(self.profile.n) & ~self.T

    def already_qualified(self) -> bool:
        return evaluate(self.profile, self.rule, self.T) & self.S == self.S


@dataclass(frozen=True)
class GcdiInstance:
    """Make all of ``S`` qualified by deleting at most ``k`` individuals outside ``S``."""

    profile: Profile
    rule: RuleSpec
    S: int
    k: int

    problem = Problem.GCDI

    def __post_init__(self):
        object.__setattr__(self, "S", as_mask(self.profile.n, self.S))
        _check_common(self.profile, self.rule, self.S, self.k)

    @property
    def pool(self) -> int:
        """Individuals that may be deleted."""
        return full(self.profile.n) & ~self.S

    def already_qualified(self) -> bool:
        return evaluate(self.profile, self.rule, full(self.profile.n)) & self.S == self.S


@dataclass(frozen=True)
class GcpiInstance:
    """Make all of ``S`` qualified by a two-stage vote over a partition of N."""

    profile: Profile
    rule: RuleSpec
    S: int

    problem = Problem.GCPI

    def __post_init__(self):
        object.__setattr__(self, "S", as_mask(self.profile.n, self.S))
        _check_common(self.profile, self.rule, self.S, None)

    def already_qualified(self) -> bool:
        return evaluate(self.profile, self.rule, full(self.profile.n)) & self.S == self.S


def is_strict(inst) -> bool:
    """True when ``inst`` meets the input assumption that S is not yet qualified."""
    return not inst.already_qualified()


def require_strict(inst):
    if inst.already_qualified():
        raise InputError(
            f"S is already socially qualified; not a strict {inst.problem} instance"
        )
    return inst


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: Optional[int] = None
    solver: str = ""
    theorem: Optional[int] = None

    @property
    def is_yes(self) -> bool:
        return self.outcome in (Outcome.YES, Outcome.ALREADY_QUALIFIED)

    def comparable(self) -> Outcome:
        """Outcome with IMMUNE folded into NO, for cross-solver comparison."""
        return Outcome.NO if self.outcome == Outcome.IMMUNE else self.outcome

    def format(self) -> str:
        if self.outcome == Outcome.IMMUNE:
            return f"IMMUNE (thm={self.theorem})"
        line = self.outcome.value
        if self.witness is not None:
            line += " [" + " ".join(str(i) for i in members(self.witness)) + "]"
        return f"{line} (solver={self.solver})"

    __str__ = format


# -- verification -----------------------------------------------------------


def verify_gcai(inst: GcaiInstance, U) -> bool:
    U = as_mask(inst.profile.n, U)
    if U & inst.T:
        raise InputError("added individuals must lie outside T")
    if U.bit_count() > inst.k:
        return False
    return evaluate(inst.profile, inst.rule, inst.T | U) & inst.S == inst.S


def verify_gcdi(inst: GcdiInstance, U) -> bool:
    U = as_mask(inst.profile.n, U)
    if U & inst.S:
        raise InputError("individuals in S cannot be deleted")
    if U.bit_count() > inst.k:
        return False
    rest = full(inst.profile.n) & ~U
    return evaluate(inst.profile, inst.rule, rest) & inst.S == inst.S


def partition_outcome(inst: GcpiInstance, U) -> int:
    """Qualified set after the two-stage vote over ``(U, N \\ U)``."""
    p, rule = inst.profile, inst.rule
    U = as_mask(p.n, U)
    first = evaluate(p, rule, U) | evaluate(p, rule, full(p.n) & ~U)
    return evaluate(p, rule, first)


def verify_gcpi(inst: GcpiInstance, U) -> bool:
    return partition_outcome(inst, U) & inst.S == inst.S


def verify(inst, U) -> bool:
    if isinstance(inst, GcaiInstance):
        return verify_gcai(inst, U)
    if isinstance(inst, GcdiInstance):
        return verify_gcdi(inst, U)
    if isinstance(inst, GcpiInstance):
        return verify_gcpi(inst, U)
    raise InputError(f"not a control instance: {type(inst).__name__}")
