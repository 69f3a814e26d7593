import math
from fractions import Fraction

import pytest

from controlapprox.control import (AddSet, ControlInstance, ControlSpec, DeleteSet, Goal, Partition,
                                   is_feasible, measure, parse_problem, performance_ratio)
from controlapprox.election import Action, Election, Rule, TieRule, Voter, Approval
from controlapprox.errors import BallotKindError, DomainError, NoSolutionError


def approval_instance(action, approvals, p="p", pool=(), budget=None, candidates=("p", "c")):
    e = Election.from_approvals(candidates, approvals)
    universe = frozenset(candidates)
    pool = tuple(Voter(Approval(frozenset(a), universe)) for a in pool)
    return ControlInstance(ControlSpec(Rule.APPROVAL, action, budget=budget), e, p, pool)


def test_ccdv_empty_solution_when_p_already_wins():
    inst = approval_instance(Action.DV, [{"p"}, {"p", "c"}])
    assert is_feasible(inst, DeleteSet(()))
    assert measure(inst, DeleteSet(())) == 1


def test_ccdc_deleting_p_is_a_domain_error():
    e = Election.from_rankings("pa", [("a", "p")])
    inst = ControlInstance(ControlSpec(Rule.PLURALITY, Action.DC), e, "p")
    with pytest.raises(DomainError):
        is_feasible(inst, DeleteSet({"p"}))
    assert measure(inst, DeleteSet({"p"})) == math.inf


def test_budget_caps_feasibility():
    inst = approval_instance(Action.AV, [{"c"}], pool=[{"p"}, {"p"}], budget=1)
    assert not is_feasible(inst, AddSet({0, 1}))
    unlimited = approval_instance(Action.AV, [{"c"}], pool=[{"p"}, {"p"}])
    assert is_feasible(unlimited, AddSet({0, 1}))


def test_measure_examples():
    inst = approval_instance(Action.AV, [{"p"}], pool=[{"c"}])
    assert measure(inst, AddSet(())) == 1
    assert measure(inst, AddSet({0})) == math.inf  # p and c tie


def test_balanced_partition_measure():
    e = Election.from_rankings("pa", [("p", "a")] * 4)
    inst = ControlInstance(ControlSpec(Rule.PLURALITY, Action.PV, tie_rule=TieRule.TE), e, "p")
    sol = Partition({0, 1}, {2, 3})
    assert is_feasible(inst, sol)
    assert measure(inst, sol) == 1


def test_performance_ratio_examples():
    assert performance_ratio(5, 5) == 1
    assert performance_ratio(6, 3) == 2
    assert performance_ratio(3, 6) == 2
    assert performance_ratio(math.inf, 3) == math.inf
    assert isinstance(performance_ratio(4, 3), Fraction)
    with pytest.raises(NoSolutionError):
        performance_ratio(3, math.inf)


def test_destructive_goal():
    e = Election.from_rankings("pa", [("p", "a"), ("p", "a"), ("a", "p")])
    inst = ControlInstance(ControlSpec(Rule.PLURALITY, Action.DV, Goal.DESTRUCTIVE), e, "p")
    assert not is_feasible(inst, DeleteSet(()))
    assert is_feasible(inst, DeleteSet({0}))  # 1:1 tie, p no longer the unique winner


def test_ballot_kind_checked_on_construction():
    e = Election.from_rankings("pa", [("p", "a")])
    with pytest.raises(BallotKindError):
        ControlInstance(ControlSpec(Rule.APPROVAL, Action.DV), e, "p")


def test_wrong_solution_type_is_rejected():
    inst = approval_instance(Action.DV, [{"p"}])
    assert measure(inst, AddSet(())) == math.inf
    assert measure(inst, DeleteSet({7})) == math.inf


def test_tie_rule_only_for_partitions():
    with pytest.raises(DomainError):
        ControlSpec(Rule.PLURALITY, Action.PV)
    with pytest.raises(DomainError):
        ControlSpec(Rule.PLURALITY, Action.DV, tie_rule=TieRule.TE)


def test_ac_pool_and_registered():
    e = Election.from_rankings("pas", [("s", "a", "p"), ("p", "a", "s"), ("a", "p", "s")])
    inst = ControlInstance(ControlSpec(Rule.PLURALITY, Action.AC), e, "p", ("s",))
    assert inst.registered == ("p", "a")
    assert not is_feasible(inst, AddSet(()))  # p and a tie 1:1 plus the s-voter goes to a
    assert not is_feasible(inst, AddSet({"s"}))
    with pytest.raises(DomainError):
        ControlInstance(ControlSpec(Rule.PLURALITY, Action.AC), e, "p", ("p",))


@pytest.mark.parametrize("name,expected", [
    ("approval-ccav", "approval-CCUAV"),
    ("plurality-dcudc", "plurality-DCUDC"),
    ("condorcet-ccpv-te", "condorcet-CCPV-TE"),
    ("approval-CCUDV", "approval-CCUDV"),
])
def test_parse_problem(name, expected):
    assert parse_problem(name).name == expected


def test_parse_problem_with_budget():
    spec = parse_problem("approval-ccav", 2)
    assert spec.limited and spec.name == "approval-CCAV"


@pytest.mark.parametrize("name", ["approval", "borda-ccav", "approval-xxav", "plurality-ccpv-zz",
                                  "plurality-ccpv"])
def test_parse_problem_rejects(name):
    with pytest.raises(DomainError):
        parse_problem(name)
