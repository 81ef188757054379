import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcontrol.errors import InputError
from groupcontrol.rules import (
    Profile,
    RuleSpec,
    as_mask,
    eval_consent,
    eval_csr,
    eval_lsr,
    evaluate,
    full,
    mask,
    members,
)
from oracles import naive_eval

RULES = [RuleSpec.consent(s, t) for s in (1, 2, 3) for t in (1, 2, 3)] + [RuleSpec.csr(), RuleSpec.lsr()]


def as_tuple(rule):
    if rule.is_consent:
        return ("consent", rule.s, rule.t)
    return (rule.kind,)


def csr_example():
    # a, b qualify each other and themselves; c qualifies no one
    return Profile.from_entries(3, [(0, 0), (0, 1), (1, 1), (1, 0)])


@st.composite
def profiles(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    return Profile(tuple(rows))


# -- bitsets and profiles -----------------------------------------------------


def test_mask_members_roundtrip():
    assert mask([0, 3, 5]) == 0b101001
    assert members(0b101001) == [0, 3, 5]
    assert members(0) == []
    assert full(3) == 7


def test_as_mask_rejects_out_of_range():
    with pytest.raises(InputError):
        as_mask(3, [3])
    with pytest.raises(InputError):
        as_mask(3, 0b1000)
    with pytest.raises(InputError):
        mask([-1])
    assert as_mask(3, [0, 2]) == 0b101


def test_profile_views():
    p = Profile.from_matrix([[1, 0, 1], [0, 0, 0], [1, 1, 0]], names=["a", "b", "c"])
    assert p.n == 3
    assert p.phi(0, 2) == 1 and p.phi(2, 0) == 1 and p.phi(1, 1) == 0
    assert p.cols[0] == 0b101
    assert p.selfm == 0b001
    assert p.matrix() == [[1, 0, 1], [0, 0, 0], [1, 1, 0]]
    assert p.with_entry(1, 1, 1).selfm == 0b011


@pytest.mark.parametrize(
    "bad",
    [
        [[1, 0]],
        [[1, 2], [0, 0]],
        [],
    ],
)
def test_profile_rejects_bad_matrix(bad):
    with pytest.raises(InputError):
        Profile.from_matrix(bad)


def test_permuted_relabels():
    p = Profile.from_matrix([[1, 1, 0], [0, 0, 0], [0, 1, 1]])
    q = p.permuted([2, 0, 1])
    for i in range(3):
        for j in range(3):
            assert q.phi(i, j) == p.phi([2, 0, 1][i], [2, 0, 1][j])


@pytest.mark.parametrize("s,t", [(0, 1), (1, 0), (-1, 2)])
def test_rulespec_rejects_nonpositive_quotas(s, t):
    with pytest.raises(InputError):
        RuleSpec.consent(s, t)


def test_rulespec_no_quota_condition_enforced():
    # quotas beyond n are legal input
    p = Profile.from_matrix([[1]])
    assert evaluate(p, RuleSpec.consent(5, 5), 1) == 0


# -- worked examples ----------------------------------------------------------


def test_all_disqualify_gives_empty():
    p = Profile.from_matrix([[0] * 3] * 3)
    assert eval_consent(p, RuleSpec.consent(1, 2), full(3)) == 0


def test_single_self_qualifier_liberal():
    p = Profile.from_matrix([[1]])
    assert evaluate(p, RuleSpec.consent(1, 1), 1) == 1


def test_csr_example_full_and_after_deletion():
    p = csr_example()
    assert eval_csr(p, full(3)) == 0
    assert eval_csr(p, 0b011) == 0b011


def test_lsr_expands_from_self_qualifier():
    p = Profile.from_entries(2, [(0, 0), (0, 1)])
    assert eval_lsr(p, 0b11) == 0b11


def test_lsr_without_self_qualifier_is_empty():
    p = Profile.from_entries(3, [(0, 1), (1, 2), (2, 0)])
    assert eval_lsr(p, full(3)) == 0


@pytest.mark.parametrize("rule", RULES, ids=str)
def test_empty_society(rule):
    p = Profile.from_matrix([[1, 1], [1, 1]])
    assert evaluate(p, rule, 0) == 0


def test_consent_matches_count_oracle_seeded():
    rng = random.Random(4)
    p = Profile(tuple(rng.getrandbits(4) for _ in range(4)))
    rule = RuleSpec.consent(2, 2)
    assert set(members(evaluate(p, rule, full(4)))) == naive_eval(p.matrix(), ("consent", 2, 2), range(4))


@pytest.mark.parametrize("kind", ["csr", "lsr"])
def test_procedural_matches_iteration_oracle_seeded(kind):
    rng = random.Random(5)
    for _ in range(50):
        p = Profile(tuple(rng.getrandbits(5) for _ in range(5)))
        got = set(members(evaluate(p, RuleSpec(kind), full(5))))
        assert got == naive_eval(p.matrix(), (kind,), range(5))


# -- properties ---------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(profiles(), st.data())
def test_eval_matches_oracle(p, data):
    rule = data.draw(st.sampled_from(RULES))
    T = data.draw(st.integers(0, full(p.n)))
    assert set(members(evaluate(p, rule, T))) == naive_eval(p.matrix(), as_tuple(rule), members(T))


@settings(max_examples=300, deadline=None)
@given(profiles(max_n=8), st.data())
def test_containment(p, data):
    rule = data.draw(st.sampled_from(RULES))
    T = data.draw(st.integers(0, full(p.n)))
    assert evaluate(p, rule, T) & ~T == 0


@settings(max_examples=200, deadline=None)
@given(profiles(), st.data())
def test_liberal_rule_depends_only_on_self_opinion(p, data):
    T = data.draw(st.integers(0, full(p.n)))
    assert evaluate(p, RuleSpec.consent(1, 1), T) == p.selfm & T


@settings(max_examples=200, deadline=None)
@given(profiles(), st.data())
def test_procedural_fixpoint_is_stable(p, data):
    T = data.draw(st.integers(0, full(p.n)))
    for rule in (RuleSpec.csr(), RuleSpec.lsr()):
        K = evaluate(p, rule, T)
        # one more round of expansion adds nothing
        grown = K
        for b in members(K):
            grown |= p.rows[b] & T
        assert grown == K


@settings(max_examples=200, deadline=None)
@given(profiles(), st.data())
def test_csr_inside_lsr_when_seed_self_qualifies(p, data):
    T = data.draw(st.integers(0, full(p.n)))
    seed = 0
    for a in members(T):
        if p.cols[a] & T == T:
            seed |= 1 << a
    if seed & ~p.selfm == 0:
        assert eval_csr(p, T) & ~eval_lsr(p, T) == 0


def test_exhaustive_n2_all_rules():
    for bits in range(16):
        rows = (bits & 3, bits >> 2)
        p = Profile(rows)
        for rule, T in itertools.product(RULES, range(4)):
            assert set(members(evaluate(p, rule, T))) == naive_eval(p.matrix(), as_tuple(rule), members(T))
