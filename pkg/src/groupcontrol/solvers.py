"""Deciding control instances.

``solve`` dispatches in this order under :attr:`Strategy.AUTO`:

1. S already qualified (lenient input)   -> ALREADY_QUALIFIED
2. immune (problem, rule) pair           -> IMMUNE
3. GCDI with consent (s, 2)              -> poly-thm3
   GCDI with CSR                         -> poly-thm8
4. GCAI / GCDI with a consent rule       -> fpt-ilp
5. everything else                       -> brute-force

Brute force is the only route for GCPI under CSR (its complexity is open)
and for GCAI under CSR/LSR (no FPT formulation is known). Every YES verdict,
from any route, is re-verified before it is returned.
"""

import enum
import math
from typing import Optional

from . import ilp, kernels
from .errors import InputError, ResourceLimitError, StrategyError
from .instances import (
    GcaiInstance,
    GcdiInstance,
    GcpiInstance,
    Outcome,
    Problem,
    Verdict,
    verify,
)
from .rules import CONSENT, CSR, LSR, RuleSpec, eval_csr, evaluate, full, members

DEFAULT_MAX_BITS = 22

SOLVER_IMMUNITY = "immunity"
SOLVER_PRECHECK = "precheck"
SOLVER_THM3 = "poly-thm3"
SOLVER_THM8 = "poly-thm8"
SOLVER_FPT = "fpt-ilp"
SOLVER_BRUTE = "brute-force"


class Strategy(str, enum.Enum):
    AUTO = "auto"
    IMMUNITY = "immunity"
    POLY_THM3 = "poly-thm3"
    POLY_THM8 = "poly-thm8"
    FPT_ILP = "fpt-ilp"
    BRUTE_FORCE = "brute-force"

    def __str__(self):
        return self.value


# -- immunity -----------------------------------------------------------------


def immunity_theorem(problem: Problem, rule: RuleSpec) -> Optional[int]:
    """Number of the immunity result covering ``(problem, rule)``, if any."""
    problem = Problem(problem)
    if rule.kind == CONSENT:
        if rule.s == 1 and rule.t == 1:
            return 1
        if rule.t == 1 and problem in (Problem.GCDI, Problem.GCPI):
            return 2
        if rule.s == 1 and problem == Problem.GCAI:
            return 2
        return None
    if rule.kind == LSR and problem in (Problem.GCDI, Problem.GCPI):
        return 6
    return None


def immunity_check(problem: Problem, rule: RuleSpec) -> bool:
    return immunity_theorem(problem, rule) is not None


# -- helpers ------------------------------------------------------------------


def _finish(inst, U, solver: str) -> Verdict:
    if U is None:
        return Verdict(Outcome.NO, solver=solver)
    if not verify(inst, U):
        raise AssertionError(f"{solver} produced a witness that fails verification")
    if U == 0 and inst.problem in (Problem.GCAI, Problem.GCDI):
        return Verdict(Outcome.ALREADY_QUALIFIED, witness=0, solver=solver)
    return Verdict(Outcome.YES, witness=U, solver=solver)


def _need(inst, problem, rule_ok, strategy, what):
    if inst.problem != problem or not rule_ok:
        raise StrategyError(
            f"{strategy} applies only to {what}; got {inst.problem} under {inst.rule}"
        )


# -- polynomial algorithms ----------------------------------------------------


def solve_gcdi_consent_s2(inst: GcdiInstance) -> Verdict:
    """Deletion control for consent ``(s, 2)`` in O(n^2).

    Every self-disqualifying member of S can keep only its own disqualifying
    vote, so all disqualifiers outside S must go; deleting more never helps a
    self-qualifier. Hence the forced deletion set decides the instance.
    """
    rule = inst.rule
    _need(inst, Problem.GCDI, rule.kind == CONSENT and rule.t == 2, SOLVER_THM3, "GCDI under consent (s, 2)")
    p = inst.profile
    outside = inst.pool
    U = 0
    for a in members(inst.S & ~p.selfm):
        U |= outside & ~p.cols[a]
    if U.bit_count() > inst.k:
        return Verdict(Outcome.NO, solver=SOLVER_THM3)
    if evaluate(p, rule, full(p.n) & ~U) & inst.S != inst.S:
        return Verdict(Outcome.NO, solver=SOLVER_THM3)
    return _finish(inst, U, SOLVER_THM3)


def solve_gcdi_csr(inst: GcdiInstance) -> Verdict:
    """Deletion control for CSR: try deleting the disqualifiers of each individual."""
    _need(inst, Problem.GCDI, inst.rule.kind == CSR, SOLVER_THM8, "GCDI under CSR")
    p = inst.profile
    everyone = full(p.n)
    for a in range(p.n):
        D = everyone & ~p.cols[a]
        if D.bit_count() > inst.k:
            continue
        # D and S are disjoint whenever this check passes
        if eval_csr(p, everyone & ~D) & inst.S == inst.S:
            return _finish(inst, D, SOLVER_THM8)
    return Verdict(Outcome.NO, solver=SOLVER_THM8)


# -- FPT route ----------------------------------------------------------------


def opinion_groups(profile, S: int, pool: int):
    """Group ``pool`` by opinion vector over ``S`` (members of S in index order).

    Returns ``[(beta, [members...]), ...]`` sorted by ``beta``; only realized
    vectors appear and members are in increasing index order.
    """
    targets = members(S)
    groups = {}
    for a in members(pool):
        row = profile.rows[a]
        beta = tuple((row >> j) & 1 for j in targets)
        groups.setdefault(beta, []).append(a)
    return sorted(groups.items())


def _beta_name(beta):
    return "".join(str(b) for b in beta)


def gcai_system(inst: GcaiInstance):
    """Counting system for adding: one variable per realized opinion group of N \\ T."""
    p, rule = inst.profile, inst.rule
    groups = opinion_groups(p, inst.S, inst.pool)
    bounds = [(0, len(g)) for _, g in groups]
    cons = [ilp.Constraint([1] * len(groups), ilp.LE, inst.k)]
    for i, a in enumerate(members(inst.S)):
        qualifiers = (p.cols[a] & inst.T).bit_count()
        if (p.selfm >> a) & 1:
            coeffs = [beta[i] for beta, _ in groups]
            cons.append(ilp.Constraint(coeffs, ilp.GE, rule.s - qualifiers))
        else:
            disqualifiers = inst.T.bit_count() - qualifiers
            coeffs = [1 - beta[i] for beta, _ in groups]
            cons.append(ilp.Constraint(coeffs, ilp.LE, rule.t - 1 - disqualifiers))
    names = [f"x_{_beta_name(beta)}" for beta, _ in groups]
    return ilp.FeasibilitySystem(bounds, cons, names), groups


def gcdi_system(inst: GcdiInstance):
    """Counting system for deleting: one variable per realized opinion group of N \\ S."""
    p, rule = inst.profile, inst.rule
    groups = opinion_groups(p, inst.S, inst.pool)
    bounds = [(0, len(g)) for _, g in groups]
    cons = [ilp.Constraint([1] * len(groups), ilp.LE, inst.k)]
    for i, a in enumerate(members(inst.S)):
        qualifiers = p.cols[a].bit_count()
        if (p.selfm >> a) & 1:
            # qualifiers - sum(beta[i] * y) >= s
            coeffs = [beta[i] for beta, _ in groups]
            cons.append(ilp.Constraint(coeffs, ilp.LE, qualifiers - rule.s))
        else:
            # disqualifiers - sum((1 - beta[i]) * y) <= t - 1
            disqualifiers = p.n - qualifiers
            coeffs = [1 - beta[i] for beta, _ in groups]
            cons.append(ilp.Constraint(coeffs, ilp.GE, disqualifiers - (rule.t - 1)))
    names = [f"y_{_beta_name(beta)}" for beta, _ in groups]
    return ilp.FeasibilitySystem(bounds, cons, names), groups


def _assemble(groups, counts) -> int:
    U = 0
    for (_, group), c in zip(groups, counts):
        for a in group[:c]:
            U |= 1 << a
    return U


def solve_fpt_gcai(inst: GcaiInstance) -> Verdict:
    _need(inst, Problem.GCAI, inst.rule.kind == CONSENT, SOLVER_FPT, "consent rules")
    system, groups = gcai_system(inst)
    counts = ilp.feasible(system)
    return _finish(inst, None if counts is None else _assemble(groups, counts), SOLVER_FPT)


def solve_fpt_gcdi(inst: GcdiInstance) -> Verdict:
    _need(inst, Problem.GCDI, inst.rule.kind == CONSENT, SOLVER_FPT, "consent rules")
    system, groups = gcdi_system(inst)
    counts = ilp.feasible(system)
    return _finish(inst, None if counts is None else _assemble(groups, counts), SOLVER_FPT)


# -- exhaustive search --------------------------------------------------------


def search_space(inst) -> int:
    """Number of candidate witnesses brute force may have to examine."""
    if isinstance(inst, GcpiInstance):
        return 2 ** (inst.profile.n - 1)
    p = inst.pool.bit_count()
    return sum(math.comb(p, i) for i in range(min(inst.k, p) + 1))


def solve_brute(inst, max_bits: int = DEFAULT_MAX_BITS) -> Verdict:
    """Exhaustive search returning the smallest, then lexicographically first, witness.

    Refuses instances with more than ``2**max_bits`` candidates. For GCPI
    individual 0 is kept on the ``U`` side, which loses nothing since swapping
    the two parts gives the same two-stage outcome.
    """
    p = inst.profile
    kind, s, t = inst.rule.kernel_args()
    kern = kernels.for_size(p.n)
    args = (kind, s, t, p.cols, p.rows, p.selfm)
    count = search_space(inst)
    if count > 2**max_bits:
        raise ResourceLimitError("max_bits", max_bits, max(count - 1, 0).bit_length())
    if isinstance(inst, GcaiInstance):
        U = kern.search_add(*args, inst.S, inst.T, inst.pool, inst.k)
    elif isinstance(inst, GcdiInstance):
        U = kern.search_delete(*args, p.n, inst.S, inst.pool, inst.k)
    elif isinstance(inst, GcpiInstance):
        U = kern.search_partition(*args, p.n, inst.S)
    else:
        raise InputError(f"not a control instance: {type(inst).__name__}")
    return _finish(inst, None if U < 0 else U, SOLVER_BRUTE)


# -- dispatcher ---------------------------------------------------------------


def auto_route(inst) -> Strategy:
    """The strategy AUTO would use, ignoring the already-qualified precheck."""
    rule = inst.rule
    if immunity_check(inst.problem, rule):
        return Strategy.IMMUNITY
    if inst.problem == Problem.GCDI:
        if rule.kind == CONSENT and rule.t == 2:
            return Strategy.POLY_THM3
        if rule.kind == CSR:
            return Strategy.POLY_THM8
    if rule.kind == CONSENT and inst.problem in (Problem.GCAI, Problem.GCDI):
        return Strategy.FPT_ILP
    return Strategy.BRUTE_FORCE


def applicable(inst, strategy: Strategy) -> bool:
    strategy = Strategy(strategy)
    rule = inst.rule
    if strategy in (Strategy.AUTO, Strategy.BRUTE_FORCE):
        return True
    if strategy == Strategy.IMMUNITY:
        return immunity_check(inst.problem, rule)
    if strategy == Strategy.POLY_THM3:
        return inst.problem == Problem.GCDI and rule.kind == CONSENT and rule.t == 2
    if strategy == Strategy.POLY_THM8:
        return inst.problem == Problem.GCDI and rule.kind == CSR
    return rule.kind == CONSENT and inst.problem in (Problem.GCAI, Problem.GCDI)


def _already(inst) -> Verdict:
    witness = None if inst.problem == Problem.GCPI else 0
    return Verdict(Outcome.ALREADY_QUALIFIED, witness=witness, solver=SOLVER_PRECHECK)


def solve(inst, strategy: Strategy = Strategy.AUTO, max_bits: int = DEFAULT_MAX_BITS) -> Verdict:
    strategy = Strategy(strategy)
    if not applicable(inst, strategy):
        raise StrategyError(f"strategy {strategy} does not apply to {inst.problem} under {inst.rule}")
    if strategy == Strategy.AUTO:
        if inst.already_qualified():
            return _already(inst)
        strategy = auto_route(inst)
    if strategy == Strategy.IMMUNITY:
        if inst.already_qualified():
            return _already(inst)
        return Verdict(
            Outcome.IMMUNE,
            solver=SOLVER_IMMUNITY,
            theorem=immunity_theorem(inst.problem, inst.rule),
        )
    if strategy == Strategy.POLY_THM3:
        return solve_gcdi_consent_s2(inst)
    if strategy == Strategy.POLY_THM8:
        return solve_gcdi_csr(inst)
    if strategy == Strategy.FPT_ILP:
        if inst.problem == Problem.GCAI:
            return solve_fpt_gcai(inst)
        return solve_fpt_gcdi(inst)
    return solve_brute(inst, max_bits=max_bits)
