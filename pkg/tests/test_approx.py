import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from controlapprox.approx import (approval_ccav_approx, approval_ccdv_approx, build_ccav_cip,
                                  build_ccdv_cip, voiced_ccdc_approx)
from controlapprox.cip import exact_solve
from controlapprox.control import (ControlInstance, ControlSpec, DeleteSet, is_feasible, measure,
                                   performance_ratio)
from controlapprox.election import Action, Approval, Election, Rule, Voter
from controlapprox.errors import DomainError, NoSolutionError
from controlapprox.generators import random_control_instance
from controlapprox.oracles import opt_control

C = ("p", "c")


def ccav(approvals, pool, budget=None, weights=None):
    e = Election.from_approvals(C, approvals, weights)
    W = tuple(Voter(Approval(frozenset(a), frozenset(C))) for a in pool)
    return ControlInstance(ControlSpec(Rule.APPROVAL, Action.AV, budget=budget), e, "p", W)


def ccdv(approvals, budget=None, weights=None):
    e = Election.from_approvals(C, approvals, weights)
    return ControlInstance(ControlSpec(Rule.APPROVAL, Action.DV, budget=budget), e, "p")


# --- CCAV ------------------------------------------------------------------

def test_ccav_no_rows_when_p_wins():
    cip, mapping = build_ccav_cip(ccav([{"p"}], [{"p"}]))
    assert cip.n_rows == 0 and mapping.threatened == ()
    res = approval_ccav_approx(ccav([{"p"}], [{"p"}]))
    assert res.solution.items == frozenset() and res.measure == 1


def test_ccav_two_voter_example():
    inst = ccav([{"c"}], [{"p"}, {"p"}])
    cip, mapping = build_ccav_cip(inst)
    assert cip.A == ((1, 1),) and cip.b == (2,) and cip.c == (1, 1)
    res = approval_ccav_approx(inst)
    assert res.solution.items == {0, 1} and res.measure == 3
    assert opt_control(inst).measure == 3


def test_ccav_demand_exceeds_supply():
    inst = ccav([{"c"}], [{"p"}])
    with pytest.raises(NoSolutionError):
        approval_ccav_approx(inst)
    assert opt_control(inst).solution is None


def test_ccav_non_p_voter_gets_no_column():
    cip, mapping = build_ccav_cip(ccav([{"c"}], [{"c"}, {"p"}, {"p", "c"}]))
    assert mapping.columns == (1, 2)
    assert mapping.eligible == {"c": (1,)}


def test_ccav_budget_threshold():
    with pytest.raises(NoSolutionError):
        approval_ccav_approx(ccav([{"c"}], [{"p"}, {"p"}], budget=1))
    assert approval_ccav_approx(ccav([{"c"}], [{"p"}, {"p"}], budget=2)).measure == 3


def test_ccav_weighted_coverage():
    inst = ccav([{"c"}, {"c"}], [{"p"}, {"p"}], weights=[1, 2])
    inst = ControlInstance(inst.spec, inst.election, "p",
                           (Voter(Approval(frozenset("p"), frozenset(C)), 4), inst.pool[1]))
    cip, _ = build_ccav_cip(inst)
    assert cip.A == ((4, 1),) and cip.b == (4,)
    assert approval_ccav_approx(inst).solution.items == {0}


# --- CCDV ------------------------------------------------------------------

def test_ccdv_no_rows_when_p_wins():
    inst = ccdv([{"p"}])
    assert build_ccdv_cip(inst)[0].n_rows == 0
    assert approval_ccdv_approx(inst).measure == 1


def test_ccdv_three_voter_example():
    inst = ccdv([{"c"}, {"c"}, {"p"}])
    cip, mapping = build_ccdv_cip(inst)
    assert mapping.deficits == {"c": 1}
    # lead of 1 means p needs c to drop by 2
    assert cip.A == ((1, 1),) and cip.b == (2,)
    res = approval_ccdv_approx(inst)
    assert res.solution.items == {0, 1} and res.measure == 3
    assert opt_control(inst).measure == 3


def test_ccdv_p_approver_gets_no_column():
    _, mapping = build_ccdv_cip(ccdv([{"p", "c"}, {"c"}]))
    assert mapping.columns == (1,)


def test_ccdv_lockstep_scores():
    inst = ccdv([{"p", "c"}, {"p", "c"}])
    with pytest.raises(NoSolutionError):
        approval_ccdv_approx(inst)
    assert opt_control(inst).solution is None


def test_cip_builders_check_the_spec():
    with pytest.raises(DomainError):
        build_ccav_cip(ccdv([{"p"}]))
    with pytest.raises(DomainError):
        build_ccdv_cip(ccav([{"p"}], []))


# --- voiced CCDC -------------------------------------------------------------

def ccdc(rule, candidates, ballots):
    if rule is Rule.APPROVAL:
        e = Election.from_approvals(candidates, ballots)
    else:
        e = Election.from_rankings(candidates, ballots)
    return ControlInstance(ControlSpec(rule, Action.DC), e, "p")


def test_ccdc_single_candidate():
    res = voiced_ccdc_approx(Rule.PLURALITY, ccdc(Rule.PLURALITY, ("p",), [("p",)]))
    assert res.solution.items == frozenset() and res.measure == 1


@pytest.mark.parametrize("rule", list(Rule))
def test_ccdc_deletes_all_rivals(rule):
    ballots = [{"a"}, {"b"}] if rule is Rule.APPROVAL else [("a", "b", "p"), ("b", "p", "a")]
    res = voiced_ccdc_approx(rule, ccdc(rule, ("p", "a", "b"), ballots))
    assert res.solution == DeleteSet({"a", "b"}) and res.measure == 3


def test_ccdc_ratio_example():
    inst = ccdc(Rule.PLURALITY, ("p", "a", "b", "c"),
                [("p", "a", "b", "c"), ("p", "b", "a", "c"), ("a", "p", "b", "c"), ("a", "p", "c", "b")])
    opt = opt_control(inst)
    assert opt.measure == 2 and opt.solution == DeleteSet({"a"})
    res = voiced_ccdc_approx(Rule.PLURALITY, inst)
    assert performance_ratio(res.measure, opt.measure) == 2


def test_ccdc_rule_mismatch():
    with pytest.raises(DomainError):
        voiced_ccdc_approx(Rule.APPROVAL, ccdc(Rule.PLURALITY, ("p",), [("p",)]))


seeds = st.integers(0, 2**32 - 1)


@given(seeds, st.sampled_from([Action.AV, Action.DV]))
def test_cip_approx_feasible_iff_opt_exists(seed, action):
    rng = random.Random(seed)
    inst = random_control_instance(rng, ControlSpec(Rule.APPROVAL, action), rng.randint(1, 3),
                                   rng.randint(0, 4), rng.randint(0, 3), (1, 2))
    algo = approval_ccav_approx if action is Action.AV else approval_ccdv_approx
    opt = opt_control(inst)
    if opt.solution is None:
        with pytest.raises(NoSolutionError):
            algo(inst)
        return
    res = algo(inst)
    assert is_feasible(inst, res.solution)
    assert res.measure == measure(inst, res.solution) >= opt.measure


@given(seeds, st.sampled_from([Rule.PLURALITY, Rule.APPROVAL, Rule.CONDORCET]))
def test_voiced_ccdc_within_m(seed, rule):
    rng = random.Random(seed)
    m = rng.randint(1, 5)
    inst = random_control_instance(rng, ControlSpec(rule, Action.DC), m, rng.randint(0, 5), 0, (1, 3))
    res = voiced_ccdc_approx(rule, inst)
    assert is_feasible(inst, res.solution)
    opt = opt_control(inst)
    assert performance_ratio(res.measure, opt.measure) <= Fraction(m)
