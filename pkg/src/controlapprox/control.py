"""Control problem instances, feasibility, measures and performance ratios.

Measures follow the "+1" convention throughout: an add/delete solution of size
``s`` has measure ``1 + s`` and a partition ``(P1, P2)`` has measure
``1 + abs(len(P1) - len(P2))``; infeasible solutions have measure ``math.inf``.
Raw sizes are therefore ``measure - 1``.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Collection
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .election import (Action, Approval, Election, Ranking, Rule, TieRule, Voter, restrict,
                       two_stage_winners, winners)
from .errors import BallotKindError, DomainError, NoSolutionError

__all__ = [
    "Action", "AddSet", "ControlInstance", "ControlSolution", "ControlSpec", "DeleteSet", "Goal",
    "INFEASIBLE", "Measure", "Partition", "Rule", "TieRule", "is_feasible", "measure",
    "outcome_winners", "parse_problem", "performance_ratio",
]

INFEASIBLE = math.inf
Measure = Union[int, float]


class Goal(str, enum.Enum):
    CONSTRUCTIVE = "constructive"
    DESTRUCTIVE = "destructive"


@dataclass(frozen=True)
class ControlSpec:
    """Which control problem is posed.

    ``budget`` is the limit ``k`` of the limited variants; ``None`` means
    unlimited.  It is ignored for partition actions.
    """

    rule: Rule
    action: Action
    goal: Goal = Goal.CONSTRUCTIVE
    budget: Optional[int] = None
    tie_rule: Optional[TieRule] = None

    def __post_init__(self):
        object.__setattr__(self, "rule", Rule(self.rule))
        object.__setattr__(self, "action", Action(self.action))
        object.__setattr__(self, "goal", Goal(self.goal))
        if self.tie_rule is not None:
            object.__setattr__(self, "tie_rule", TieRule(self.tie_rule))
        if self.action.is_partition != (self.tie_rule is not None):
            raise DomainError("a tie rule is required exactly for partition actions")
        if self.budget is not None and (isinstance(self.budget, bool) or not isinstance(self.budget, int)
                                        or self.budget < 0):
            raise DomainError(f"budget must be a nonnegative integer or None, got {self.budget!r}")

    @property
    def limited(self) -> bool:
        return self.budget is not None and not self.action.is_partition

    @property
    def name(self) -> str:
        """Conventional problem name, e.g. ``approval-CCAV`` or ``plurality-DCUDC``."""
        prefix = "CC" if self.goal is Goal.CONSTRUCTIVE else "DC"
        if self.action.is_partition:
            return f"{self.rule.value}-{prefix}{self.action.value}-{self.tie_rule.value}"
        unlimited = "" if self.limited else "U"
        return f"{self.rule.value}-{prefix}{unlimited}{self.action.value}"


def parse_problem(problem: str, budget: Optional[int] = None) -> ControlSpec:
    """Parse a problem name such as ``approval-ccav``, ``plurality-dcudc`` or ``condorcet-ccpv-te``."""
    try:
        rule_name, rest, *tie = problem.lower().split("-")
        rule = Rule(rule_name)
        goal = {"cc": Goal.CONSTRUCTIVE, "dc": Goal.DESTRUCTIVE}[rest[:2]]
        action_name = rest[2:]
        unlimited = False
        if action_name.startswith("u") and action_name[1:].upper() in ("AC", "DC", "AV", "DV"):
            unlimited, action_name = True, action_name[1:]
        action = Action(action_name.upper())
        tie_rule = TieRule(tie[0].upper()) if tie else None
    except (ValueError, KeyError, IndexError):
        raise DomainError(f"cannot parse problem name {problem!r}") from None
    if len(tie) > 1 or (unlimited and budget is not None):
        raise DomainError(f"cannot parse problem name {problem!r}")
    return ControlSpec(rule, action, goal, budget, tie_rule)


@dataclass(frozen=True)
class ControlInstance:
    """A control instance.

    For AC the election ranges over registered and spoiler candidates alike
    and ``pool`` lists the spoiler ids.  For AV ``pool`` holds the unregistered
    voters.  Other actions take no pool.
    """

    spec: ControlSpec
    election: Election
    p: str
    pool: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pool", tuple(self.pool))
        cands = self.election.candidate_set
        action = self.spec.action
        if action is Action.AC:
            if len(set(self.pool)) != len(self.pool) or not set(self.pool) <= cands:
                raise DomainError("AC pool must list distinct candidates of the election")
            if self.p in self.pool:
                raise DomainError("the distinguished candidate cannot be a spoiler")
        elif action is Action.AV:
            for i, v in enumerate(self.pool):
                if not isinstance(v, Voter):
                    raise DomainError(f"AV pool entry {i} is not a voter")
                if v.ballot.universe != cands:
                    raise DomainError(f"unregistered voter {i} does not range over the candidates")
        elif self.pool:
            raise DomainError(f"{action.value} takes no pool")
        if self.p not in cands:
            raise DomainError(f"distinguished candidate {self.p!r} is not a candidate")
        kind = Approval if self.spec.rule is Rule.APPROVAL else Ranking
        ballots = [v.ballot for v in self.election.voters]
        if action is Action.AV:
            ballots += [v.ballot for v in self.pool]
        for b in ballots:
            if not isinstance(b, kind):
                raise BallotKindError(f"{self.spec.rule.value} needs {kind.__name__.lower()} ballots, "
                                      f"found a {type(b).__name__.lower()} ballot")

    @property
    def registered(self) -> tuple[str, ...]:
        if self.spec.action is Action.AC:
            spoilers = set(self.pool)
            return tuple(c for c in self.election.candidates if c not in spoilers)
        return self.election.candidates


@dataclass(frozen=True)
class AddSet:
    """Spoiler ids (AC) or indices into the unregistered pool (AV)."""

    items: frozenset

    def __post_init__(self):
        object.__setattr__(self, "items", frozenset(self.items))

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class DeleteSet:
    """Candidate ids (DC) or voter indices (DV)."""

    items: frozenset

    def __post_init__(self):
        object.__setattr__(self, "items", frozenset(self.items))

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class Partition:
    """Two parts: voter indices for PV, candidate ids for PC/RPC."""

    first: frozenset
    second: frozenset

    def __post_init__(self):
        object.__setattr__(self, "first", frozenset(self.first))
        object.__setattr__(self, "second", frozenset(self.second))


ControlSolution = Union[AddSet, DeleteSet, Partition]

_KIND = {Action.AC: AddSet, Action.AV: AddSet, Action.DC: DeleteSet, Action.DV: DeleteSet,
         Action.PV: Partition, Action.PC: Partition, Action.RPC: Partition}


def _check_items(items: Collection, allowed: Collection, what: str) -> None:
    bad = [x for x in items if x not in allowed]
    if bad:
        raise DomainError(f"{what} not available: {sorted(map(str, bad))}")


def outcome_winners(instance: ControlInstance, solution: ControlSolution) -> frozenset[str]:
    """Winners of the election after applying ``solution`` (budget not checked)."""
    spec, e = instance.spec, instance.election
    action = spec.action
    if not isinstance(solution, _KIND[action]):
        raise DomainError(f"{action.value} needs a {_KIND[action].__name__}, "
                          f"got {type(solution).__name__}")
    if action is Action.AC:
        _check_items(solution.items, instance.pool, "spoiler candidates")
        return winners(spec.rule, restrict(e, set(instance.registered) | solution.items))
    if action is Action.DC:
        if instance.p in solution.items:
            raise DomainError("the distinguished candidate may not be deleted")
        _check_items(solution.items, e.candidate_set, "candidates")
        return winners(spec.rule, restrict(e, e.candidate_set - solution.items))
    if action is Action.AV:
        _check_items(solution.items, range(len(instance.pool)), "unregistered voters")
        added = [instance.pool[i] for i in sorted(solution.items)]
        return winners(spec.rule, e.with_voters(e.voters + tuple(added)))
    if action is Action.DV:
        _check_items(solution.items, range(len(e.voters)), "voters")
        return winners(spec.rule, e.with_voters(v for i, v in enumerate(e.voters)
                                                if i not in solution.items))
    return two_stage_winners(spec.rule, e, action, spec.tie_rule, (solution.first, solution.second))


def is_feasible(instance: ControlInstance, solution: ControlSolution) -> bool:
    spec = instance.spec
    result = outcome_winners(instance, solution)
    if spec.limited and len(solution) > spec.budget:
        return False
    unique = result == {instance.p}
    return unique if spec.goal is Goal.CONSTRUCTIVE else not unique


def measure(instance: ControlInstance, solution: ControlSolution) -> Measure:
    try:
        ok = is_feasible(instance, solution)
    except DomainError:
        return INFEASIBLE
    if not ok:
        return INFEASIBLE
    if isinstance(solution, Partition):
        return 1 + abs(len(solution.first) - len(solution.second))
    return 1 + len(solution)


def performance_ratio(achieved: Measure, optimal: Measure) -> Union[Fraction, float]:
    """``max(achieved/optimal, optimal/achieved)`` as an exact fraction (or ``inf``)."""
    if optimal == INFEASIBLE:
        raise NoSolutionError("no optimal solution exists to compare against")
    if achieved == INFEASIBLE:
        return INFEASIBLE
    r = Fraction(achieved, optimal)
    return max(r, 1 / r)
