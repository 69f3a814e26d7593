import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from controlapprox.approx import approval_ccav_approx, voiced_ccdc_approx
from controlapprox.control import (ControlInstance, ControlSpec, DeleteSet, Partition, is_feasible,
                                   measure)
from controlapprox.election import Action, Approval, Election, Rule, TieRule, Voter
from controlapprox.errors import DomainError, ResourceError
from controlapprox.generators import random_control_instance, random_msc
from controlapprox.oracles import (decide_control, decide_via_approx, exists_x3c, opt_control,
                                   opt_mku, opt_msc, verify_strictness)
from controlapprox.reductions import MkuInstance, MscInstance, X3cInstance

F = frozenset
MKU2 = MkuInstance(("u1", "u2"), (F({"u1"}), F({"u2"})), 2)


def test_ccdc_already_winning():
    e = Election.from_rankings("pa", [("p", "a")])
    res = opt_control(ControlInstance(ControlSpec(Rule.PLURALITY, Action.DC), e, "p"))
    assert res.measure == 1 and res.solution == DeleteSet(())


def test_mku_gadget_optimum():
    from controlapprox.reductions import mku_to_plurality_ccdc
    inst = mku_to_plurality_ccdc(MKU2).instance
    assert len(inst.election.candidates) == 6
    res = opt_control(inst)
    assert res.measure == 3 and res.solution == DeleteSet({"u1", "u2"})


@pytest.mark.parametrize("ballots", list(itertools.product(["pa", "ap"], repeat=2)))
def test_ccpv_two_voters_matches_partition_enumeration(ballots):
    e = Election.from_rankings("pa", [tuple(b) for b in ballots])
    inst = ControlInstance(ControlSpec(Rule.PLURALITY, Action.PV, tie_rule=TieRule.TE), e, "p")
    # independent enumeration of the four ordered partitions
    best = min((measure(inst, Partition(set(first), {0, 1} - set(first)))
                for r in range(3) for first in itertools.combinations((0, 1), r)))
    assert opt_control(inst).measure == best


def test_opt_msc_example():
    src = MscInstance(("1", "2"), (F({"1"}), F({"2"}), F({"1", "2"})))
    assert opt_msc(src) == (2,)


def test_opt_mku_full_family():
    src = MkuInstance(("a", "b", "c"), (F("ab"), F("bc")), 2)
    assert opt_mku(src) == ((0, 1), 3)


def test_x3c_single_triple():
    assert exists_x3c(X3cInstance(("a", "b", "c"), (F("abc"),), 1))


def test_node_budget_raises():
    src = random_msc(random.Random(0), 6, 10)
    with pytest.raises(ResourceError):
        opt_msc(src, node_budget=3)


def test_size_limit_and_budget():
    e = Election.from_approvals(("p", "c"), [{"c"}, {"c"}])
    W = tuple(Voter(Approval(F("p"), F(("p", "c")))) for _ in range(3))
    inst = ControlInstance(ControlSpec(Rule.APPROVAL, Action.AV), e, "p", W)
    assert opt_control(inst).measure == 4
    assert opt_control(inst, size_limit=2).solution is None


# --- strictness ----------------------------------------------------------------

def test_strictness_singleton():
    rep = verify_strictness("msc-ccav", MscInstance(("x1",), (F({"x1"}),)))
    assert rep.ok and rep.opt_equal
    assert rep.solutions_checked == 1


def test_strictness_mku_example():
    rep = verify_strictness("mku-ccdc", MKU2)
    assert rep.ok and rep.opt_equal and rep.solutions_checked > 1


def test_corrupted_mapback_is_caught():
    src = MscInstance(("x1", "x2"), (F({"x1"}), F({"x2"})))
    rep = verify_strictness("msc-ccav", src, mapback=lambda *_: ())
    assert rep.violations


def test_strictness_rejects_decision_reductions():
    with pytest.raises(DomainError):
        verify_strictness("hs-plurality-dcudc", None)


# --- decision ------------------------------------------------------------------

def test_decide_via_approx_examples():
    C = ("p", "c")
    e = Election.from_approvals(C, [{"c"}])
    yes = ControlInstance(ControlSpec(Rule.APPROVAL, Action.AV), e, "p",
                          tuple(Voter(Approval(F("p"), F(C))) for _ in range(2)))
    no = ControlInstance(yes.spec, e, "p", yes.pool[:1])
    assert decide_via_approx(yes, approval_ccav_approx) and decide_control(yes)
    assert not decide_via_approx(no, approval_ccav_approx) and not decide_control(no)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60)
def test_decide_via_approx_agrees_with_oracle(seed):
    rng = random.Random(seed)
    inst = random_control_instance(rng, ControlSpec(Rule.APPROVAL, Action.AV), rng.randint(1, 3),
                                   rng.randint(0, 3), rng.randint(0, 3), (1, 2))
    assert decide_via_approx(inst, approval_ccav_approx) == decide_control(inst)


@given(st.integers(0, 2**32 - 1), st.sampled_from(list(Rule)))
@settings(max_examples=40)
def test_opt_solution_is_feasible_and_minimal(seed, rule):
    rng = random.Random(seed)
    inst = random_control_instance(rng, ControlSpec(rule, Action.DC), rng.randint(1, 4), rng.randint(0, 4))
    res = opt_control(inst)
    assert is_feasible(inst, res.solution)
    others = [c for c in inst.election.candidates if c != "p"]
    for r in range(len(res.solution)):
        for combo in itertools.combinations(others, r):
            assert not is_feasible(inst, DeleteSet(combo))
    assert res.measure <= voiced_ccdc_approx(rule, inst).measure
