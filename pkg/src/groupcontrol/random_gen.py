"""Seeded random profiles and control instances.

Everything here draws from a caller-supplied ``random.Random``, so a seed
fully determines the output. Instances are lenient: S may already be
qualified, and the solvers report that as ALREADY_QUALIFIED.
"""

import random
from typing import Optional

from .instances import GcaiInstance, GcdiInstance, GcpiInstance, Problem
from .rules import Profile, RuleSpec, full


def random_profile(n: int, rng: random.Random, density: float = 0.5) -> Profile:
    rows = []
    for _ in range(n):
        r = 0
        for j in range(n):
            if rng.random() < density:
                r |= 1 << j
        rows.append(r)
    return Profile(tuple(rows))


def random_subset(pool: int, rng: random.Random, size: int) -> int:
    """Uniform ``size``-subset of the members of ``pool``."""
    idx = [i for i in range(pool.bit_length()) if pool >> i & 1]
    m = 0
    for i in rng.sample(idx, min(size, len(idx))):
        m |= 1 << i
    return m


def random_rule(rng: random.Random, max_quota: int = 3) -> RuleSpec:
    kind = rng.choice(("consent", "consent", "csr", "lsr"))
    if kind == "consent":
        return RuleSpec.consent(rng.randint(1, max_quota), rng.randint(1, max_quota))
    return RuleSpec(kind)


def random_instance(
    problem,
    rule: RuleSpec,
    n: int,
    rng: random.Random,
    max_s: Optional[int] = None,
    k: Optional[int] = None,
):
    """Random instance of ``problem`` with ``n`` individuals.

    |S| is drawn from 1..max_s (default n). For GCAI, T is S plus a random
    part of the rest; k defaults to a draw from 0..|pool|.
    """
    problem = Problem(problem)
    p = random_profile(n, rng)
    N = full(n)
    S = random_subset(N, rng, rng.randint(1, min(max_s or n, n)))
    if problem == Problem.GCPI:
        return GcpiInstance(p, rule, S)
    if problem == Problem.GCDI:
        pool = N & ~S
        kk = rng.randint(0, pool.bit_count()) if k is None else k
        return GcdiInstance(p, rule, S, kk)
    rest = N & ~S
    T = S | random_subset(rest, rng, rng.randint(0, rest.bit_count()))
    pool = N & ~T
    kk = rng.randint(0, pool.bit_count()) if k is None else k
    return GcaiInstance(p, rule, S, T, kk)
