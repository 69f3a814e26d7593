"""Approximation algorithms for electoral control.

Approval CCAV and CCDV (weighted or not) are encoded as covering integer
programs and solved with the greedy CIP routine, which gives a logarithmic
ratio.  CCDC under any voiced rule is approximated within ``m`` by deleting
everyone except ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cip import Cip, greedy_solve
from .control import (Action, AddSet, ControlInstance, ControlSolution, DeleteSet, Goal, Measure,
                      Rule, is_feasible, measure)
from .election import approval_scores
from .errors import DomainError, InfeasibleError, NoSolutionError


@dataclass(frozen=True)
class CipMapping:
    """How a control instance was encoded as a CIP.

    ``threatened`` lists the candidates scoring at least ``p`` (one CIP row
    each), ``deficits`` their score lead over ``p``, ``eligible`` the voters
    that can close each gap, and ``columns[j]`` the voter index behind CIP
    column ``j`` (into the pool for CCAV, into the election for CCDV).
    """

    threatened: tuple[str, ...]
    deficits: dict[str, int]
    eligible: dict[str, tuple[int, ...]]
    columns: tuple[int, ...]


@dataclass(frozen=True)
class ApproxResult:
    solution: ControlSolution
    measure: Measure
    certificate: Optional[CipMapping] = None


def _require_spec(instance: ControlInstance, action: Action) -> None:
    spec = instance.spec
    if spec.rule is not Rule.APPROVAL or spec.action is not action or spec.goal is not Goal.CONSTRUCTIVE:
        raise DomainError(f"expected an approval-CC{action.value} instance, got {spec.name}")


def _build(instance: ControlInstance, voters, column_filter, helps) -> tuple[Cip, CipMapping]:
    p = instance.p
    scores = approval_scores(instance.election)
    threatened = tuple(c for c in instance.election.candidates
                       if c != p and scores[c] >= scores[p])
    deficits = {c: scores[c] - scores[p] for c in threatened}
    columns = tuple(i for i, v in enumerate(voters) if column_filter(v.ballot.approved))
    eligible = {c: tuple(i for i in columns if helps(voters[i].ballot.approved, c))
                for c in threatened}
    A = tuple(tuple(voters[i].weight if i in members else 0 for i in columns)
              for members in (frozenset(eligible[c]) for c in threatened))
    cip = Cip(A=A, b=tuple(deficits[c] + 1 for c in threatened),
              c=(1,) * len(columns), d=(1,) * len(columns))
    return cip, CipMapping(threatened, deficits, eligible, columns)


def build_ccav_cip(instance: ControlInstance) -> tuple[Cip, CipMapping]:
    """Columns are the unregistered voters approving ``p``; rows the threatened rivals."""
    _require_spec(instance, Action.AV)
    p = instance.p
    return _build(instance, instance.pool,
                  column_filter=lambda approved: p in approved,
                  helps=lambda approved, c: c not in approved)


def build_ccdv_cip(instance: ControlInstance) -> tuple[Cip, CipMapping]:
    """Columns are the registered voters not approving ``p``."""
    _require_spec(instance, Action.DV)
    p = instance.p
    return _build(instance, instance.election.voters,
                  column_filter=lambda approved: p not in approved,
                  helps=lambda approved, c: c in approved)


def _solve(instance, cip, mapping, solution_type) -> ApproxResult:
    try:
        sol = greedy_solve(cip)
    except InfeasibleError:
        raise NoSolutionError(f"{instance.spec.name}: p cannot be made a unique winner") from None
    chosen = frozenset(mapping.columns[j] for j, xj in enumerate(sol.x) if xj)
    solution = solution_type(chosen)
    # limited variants: threshold the unlimited answer against the budget
    if instance.spec.limited and len(solution) > instance.spec.budget:
        raise NoSolutionError(f"approximate solution of size {len(solution)} exceeds the budget "
                              f"{instance.spec.budget}")
    assert is_feasible(instance, solution)
    return ApproxResult(solution, 1 + len(solution), mapping)


def approval_ccav_approx(instance: ControlInstance) -> ApproxResult:
    cip, mapping = build_ccav_cip(instance)
    return _solve(instance, cip, mapping, AddSet)


def approval_ccdv_approx(instance: ControlInstance) -> ApproxResult:
    cip, mapping = build_ccdv_cip(instance)
    return _solve(instance, cip, mapping, DeleteSet)


def voiced_ccdc_approx(rule: Rule, instance: ControlInstance) -> ApproxResult:
    """Delete every candidate but ``p``; a voiced rule then elects ``p`` alone.

    The measure is ``m``, hence the ratio to any optimum is at most ``m``.
    """
    spec = instance.spec
    if Rule(rule) is not spec.rule:
        raise DomainError(f"rule {Rule(rule).value} does not match the instance rule {spec.rule.value}")
    if spec.action is not Action.DC or spec.goal is not Goal.CONSTRUCTIVE:
        raise DomainError(f"expected a CCDC instance, got {spec.name}")
    solution = DeleteSet(frozenset(instance.election.candidates) - {instance.p})
    if spec.limited and len(solution) > spec.budget:
        raise NoSolutionError(f"deleting {len(solution)} candidates exceeds the budget {spec.budget}")
    return ApproxResult(solution, measure(instance, solution))

