"""Bounded integer linear feasibility.

A small exact engine for systems with a handful of variables and modest
bounds: depth-first search over the variables in the caller's order, with
interval propagation at every node. Values are tried in increasing order and
propagation never discards a feasible point, so the first assignment found is
the lexicographically smallest one.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError

LE = "<="
GE = ">="

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: int

    def __post_init__(self):
        if self.relation not in (LE, GE):
            raise InputError(f"relation must be '<=' or '>=', got {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", int(self.rhs))

    def holds(self, values) -> bool:
        act = sum(c * v for c, v in zip(self.coeffs, values))
        return act <= self.rhs if self.relation == LE else act >= self.rhs


@dataclass(frozen=True)
class FeasibilitySystem:
    bounds: tuple
    constraints: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        bounds = tuple((int(lo), int(hi)) for lo, hi in self.bounds)
        for i, (lo, hi) in enumerate(bounds):
            if lo > hi:
                raise InputError(f"variable {i}: lower bound {lo} exceeds upper bound {hi}")
        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints
        )
        for j, c in enumerate(cons):
            if len(c.coeffs) != len(bounds):
                raise InputError(
                    f"constraint {j} has {len(c.coeffs)} coefficients for {len(bounds)} variables"
                )
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def num_vars(self) -> int:
        return len(self.bounds)

    def box_size(self) -> int:
        size = 1
        for lo, hi in self.bounds:
            size *= hi - lo + 1
        return size

    def format(self) -> str:
        names = self.names or tuple(f"x{i}" for i in range(self.num_vars))
        lines = [f"vars {self.num_vars}"]
        for name, (lo, hi) in zip(names, self.bounds):
            lines.append(f"  {lo} <= {name} <= {hi}")
        lines.append(f"constraints {len(self.constraints)}")
        for c in self.constraints:
            terms = []
            for name, a in zip(names, c.coeffs):
                if a == 0:
                    continue
                sign = "-" if a < 0 else "+"
                mag = "" if abs(a) == 1 else f"{abs(a)}*"
                terms.append(f"{sign} {mag}{name}")
            lhs = " ".join(terms).lstrip("+ ") if terms else "0"
            lines.append(f"  {lhs} {c.relation} {c.rhs}")
        return "\n".join(lines)


def check_assignment(system: FeasibilitySystem, values: Sequence[int]) -> bool:
    """Independent validator: bounds and every constraint."""
    if len(values) != system.num_vars:
        return False
    for v, (lo, hi) in zip(values, system.bounds):
        if not lo <= v <= hi:
            return False
    return all(c.holds(values) for c in system.constraints)


def _check_width(system: FeasibilitySystem):
    def big(x):
        return abs(x) > INT64_MAX

    for lo, hi in system.bounds:
        if big(lo) or big(hi):
            raise InputError("variable bound exceeds 64-bit range")
    for c in system.constraints:
        if big(c.rhs) or any(big(a) for a in c.coeffs):
            raise InputError("constraint data exceeds 64-bit range")
        worst = sum(abs(a) * max(abs(lo), abs(hi)) for a, (lo, hi) in zip(c.coeffs, system.bounds))
        if big(worst) or big(worst + abs(c.rhs)):
            raise InputError("constraint activity may exceed 64-bit range")


def _propagate(rows, lo, hi) -> bool:
    """Tighten ``lo``/``hi`` in place against ``a.x <= b`` rows; False if empty."""
    changed = True
    while changed:
        changed = False
        for a, b in rows:
            minact = 0
            for j, aj in a:
                minact += aj * (lo[j] if aj > 0 else hi[j])
            if minact > b:
                return False
            slack = b - minact
            for j, aj in a:
                if lo[j] == hi[j]:
                    continue
                if aj > 0:
                    cap = lo[j] + slack // aj
                    if cap < hi[j]:
                        hi[j] = cap
                        changed = True
                else:
                    floor = hi[j] - slack // (-aj)
                    if floor > lo[j]:
                        lo[j] = floor
                        changed = True
    return True


def feasible(system: FeasibilitySystem) -> Optional[tuple]:
    """Lexicographically smallest integer point of the system, or None."""
    _check_width(system)
    rows = []
    for c in system.constraints:
        sign = 1 if c.relation == LE else -1
        terms = tuple((j, sign * a) for j, a in enumerate(c.coeffs) if a)
        rows.append((terms, sign * c.rhs))
    v = system.num_vars

    def dfs(i, lo, hi):
        if not _propagate(rows, lo, hi):
            return None
        if i == v:
            return tuple(lo)
        for val in range(lo[i], hi[i] + 1):
            lo2, hi2 = lo[:], hi[:]
            lo2[i] = hi2[i] = val
            found = dfs(i + 1, lo2, hi2)
            if found is not None:
                return found
        return None

    result = dfs(0, [lo for lo, _ in system.bounds], [hi for _, hi in system.bounds])
    if result is not None and not check_assignment(system, result):
        raise AssertionError("feasibility engine returned an invalid assignment")
    return result
