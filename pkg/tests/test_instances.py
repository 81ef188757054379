import pytest

from groupcontrol.errors import InputError
from groupcontrol.instances import (
    GcaiInstance,
    GcdiInstance,
    GcpiInstance,
    Outcome,
    Problem,
    Verdict,
    is_strict,
    partition_outcome,
    require_strict,
    verify,
    verify_gcai,
    verify_gcdi,
)
from groupcontrol.rules import Profile, RuleSpec

ZERO2 = Profile.from_matrix([[0, 0], [0, 0]])


def test_gcai_requires_s_subset_of_t():
    with pytest.raises(InputError):
        GcaiInstance(ZERO2, RuleSpec.consent(1, 2), [0, 1], [0], 1)


def test_empty_s_rejected():
    with pytest.raises(InputError):
        GcdiInstance(ZERO2, RuleSpec.consent(1, 2), [], 1)


def test_negative_budget_rejected():
    with pytest.raises(InputError):
        GcdiInstance(ZERO2, RuleSpec.consent(1, 2), [0], -1)


def test_out_of_range_index_rejected():
    with pytest.raises(InputError):
        GcpiInstance(ZERO2, RuleSpec.csr(), [2])


def test_pools():
    inst = GcaiInstance(Profile.from_matrix([[0] * 3] * 3), RuleSpec.csr(), [0], [0, 1], 1)
    assert inst.pool == 0b100
    assert GcdiInstance(ZERO2, RuleSpec.csr(), [0], 1).pool == 0b10
    assert inst.problem == Problem.GCAI


def test_strictness():
    inst = GcdiInstance(ZERO2, RuleSpec.consent(1, 2), [0], 1)
    assert is_strict(inst)
    liberal = GcdiInstance(Profile.from_matrix([[1, 0], [0, 0]]), RuleSpec.consent(1, 1), [0], 0)
    assert not is_strict(liberal)
    with pytest.raises(InputError):
        require_strict(liberal)


def test_verify_gcdi_example():
    inst = GcdiInstance(ZERO2, RuleSpec.consent(1, 2), [0], 1)
    assert verify_gcdi(inst, [1])
    assert not verify_gcdi(inst, [])
    with pytest.raises(InputError):
        verify_gcdi(inst, [0])


def test_verify_respects_budget():
    inst = GcdiInstance(ZERO2, RuleSpec.consent(1, 2), [0], 0)
    assert not verify(inst, [1])


def test_verify_gcai_rejects_members_of_t():
    inst = GcaiInstance(ZERO2, RuleSpec.consent(1, 2), [0], [0], 1)
    with pytest.raises(InputError):
        verify_gcai(inst, [0])


def test_partition_outcome_all_zero():
    p = Profile.from_matrix([[0] * 3] * 3)
    inst = GcpiInstance(p, RuleSpec.consent(1, 2), [0])
    # a_1 alone: qualified in its singleton; the pair {b, c} yields no one
    assert partition_outcome(inst, [0]) == 0b001
    assert verify(inst, [0])


def test_verdict_format():
    assert str(Verdict(Outcome.YES, 0b10, "poly-thm3")) == "YES [1] (solver=poly-thm3)"
    assert str(Verdict(Outcome.IMMUNE, solver="immunity", theorem=2)) == "IMMUNE (thm=2)"
    assert str(Verdict(Outcome.NO, solver="brute-force")) == "NO (solver=brute-force)"
    assert Verdict(Outcome.IMMUNE).comparable() == Outcome.NO
    assert Verdict(Outcome.ALREADY_QUALIFIED, 0).is_yes
