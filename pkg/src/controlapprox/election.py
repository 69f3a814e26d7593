"""Elections, ballots and winner determination.

Three rules are supported: plurality and Condorcet over rankings, approval over
approval ballots.  All arithmetic is on integer weights.  Voters form a
multiset; a voter is identified by its position in ``Election.voters``.
"""

from __future__ import annotations

import enum
from collections.abc import Collection, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Union

from .errors import BallotKindError, DomainError


class Rule(str, enum.Enum):
    PLURALITY = "plurality"
    APPROVAL = "approval"
    CONDORCET = "condorcet"


class Action(str, enum.Enum):
    AC = "AC"
    DC = "DC"
    AV = "AV"
    DV = "DV"
    PV = "PV"
    PC = "PC"
    RPC = "RPC"

    @property
    def is_partition(self) -> bool:
        return self in (Action.PV, Action.PC, Action.RPC)


class TieRule(str, enum.Enum):
    TE = "TE"  # only a unique subelection winner advances
    TP = "TP"  # every subelection winner advances


@dataclass(frozen=True)
class Ranking:
    """A strict total order over its universe, best first."""

    order: tuple[str, ...]
    universe: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        universe = frozenset(self.order)
        if len(universe) != len(self.order):
            raise DomainError(f"ranking repeats a candidate: {self.order}")
        object.__setattr__(self, "universe", universe)

    def prefers(self, a: str, b: str) -> bool:
        return self.order.index(a) < self.order.index(b)


@dataclass(frozen=True)
class Approval:
    approved: frozenset[str]
    universe: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "approved", frozenset(self.approved))
        object.__setattr__(self, "universe", frozenset(self.universe))
        if not self.approved <= self.universe:
            extra = sorted(self.approved - self.universe)
            raise DomainError(f"approved candidates outside the universe: {extra}")


Ballot = Union[Ranking, Approval]


@dataclass(frozen=True)
class Voter:
    ballot: Ballot
    weight: int = 1

    def __post_init__(self):
        if isinstance(self.weight, bool) or not isinstance(self.weight, int) or self.weight < 1:
            raise DomainError(f"voter weight must be a positive integer, got {self.weight!r}")


@dataclass(frozen=True)
class Election:
    """Candidates (in a fixed order) and a multiset of voters over exactly them."""

    candidates: tuple[str, ...]
    voters: tuple[Voter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "voters", tuple(self.voters))
        cset = frozenset(self.candidates)
        if len(cset) != len(self.candidates):
            raise DomainError(f"duplicate candidate ids: {self.candidates}")
        for c in self.candidates:
            if not isinstance(c, str) or not c:
                raise DomainError(f"candidate ids must be nonempty strings, got {c!r}")
        for i, v in enumerate(self.voters):
            if v.ballot.universe != cset:
                raise DomainError(f"voter {i} ranges over {sorted(v.ballot.universe)}, "
                                  f"not the candidate set {sorted(cset)}")

    @classmethod
    def from_rankings(cls, candidates: Sequence[str], rankings: Iterable[Sequence[str]],
                      weights: Iterable[int] | None = None) -> Election:
        rankings = list(rankings)
        weights = [1] * len(rankings) if weights is None else list(weights)
        return cls(tuple(candidates),
                   tuple(Voter(Ranking(tuple(r)), w) for r, w in zip(rankings, weights, strict=True)))

    @classmethod
    def from_approvals(cls, candidates: Sequence[str], approvals: Iterable[Collection[str]],
                       weights: Iterable[int] | None = None) -> Election:
        approvals = list(approvals)
        weights = [1] * len(approvals) if weights is None else list(weights)
        universe = frozenset(candidates)
        return cls(tuple(candidates),
                   tuple(Voter(Approval(frozenset(a), universe), w)
                         for a, w in zip(approvals, weights, strict=True)))

    @property
    def candidate_set(self) -> frozenset[str]:
        return frozenset(self.candidates)

    @property
    def total_weight(self) -> int:
        return sum(v.weight for v in self.voters)

    def with_voters(self, voters: Iterable[Voter]) -> Election:
        return Election(self.candidates, tuple(voters))


def restrict_ballot(ballot: Ballot, subset: Collection[str]) -> Ballot:
    """Restrict a ballot to ``subset`` (induced order, or intersection)."""
    subset = frozenset(subset)
    if not subset <= ballot.universe:
        raise DomainError(f"cannot restrict to unknown candidates {sorted(subset - ballot.universe)}")
    if isinstance(ballot, Ranking):
        return Ranking(tuple(c for c in ballot.order if c in subset))
    return Approval(ballot.approved & subset, subset)


def restrict(election: Election, subset: Collection[str]) -> Election:
    """The election on ``subset`` with every ballot restricted; candidate order is kept."""
    subset = frozenset(subset)
    if not subset <= election.candidate_set:
        raise DomainError(f"unknown candidates {sorted(subset - election.candidate_set)}")
    return Election(tuple(c for c in election.candidates if c in subset),
                    tuple(Voter(restrict_ballot(v.ballot, subset), v.weight) for v in election.voters))


def _require(election: Election, kind: type) -> None:
    for i, v in enumerate(election.voters):
        if not isinstance(v.ballot, kind):
            raise BallotKindError(f"voter {i} casts a {type(v.ballot).__name__.lower()} ballot; "
                                  f"expected {kind.__name__.lower()}")


def plurality_scores(election: Election) -> dict[str, int]:
    _require(election, Ranking)
    scores = dict.fromkeys(election.candidates, 0)
    for v in election.voters:
        if v.ballot.order:
            scores[v.ballot.order[0]] += v.weight
    return scores


def approval_scores(election: Election) -> dict[str, int]:
    _require(election, Approval)
    scores = dict.fromkeys(election.candidates, 0)
    for v in election.voters:
        for c in v.ballot.approved:
            scores[c] += v.weight
    return scores


def pairwise_score(election: Election, a: str, b: str) -> int:
    """Weight preferring ``a`` to ``b`` minus weight preferring ``b`` to ``a``."""
    if a == b:
        raise DomainError("pairwise score needs two distinct candidates")
    for c in (a, b):
        if c not in election.candidate_set:
            raise DomainError(f"unknown candidate {c!r}")
    _require(election, Ranking)
    score = 0
    for v in election.voters:
        score += v.weight if v.ballot.prefers(a, b) else -v.weight
    return score


def pairwise_matrix(election: Election) -> dict[str, dict[str, int]]:
    """All pairwise scores at once: ``m[a][b] == pairwise_score(election, a, b)``."""
    _require(election, Ranking)
    m = {a: dict.fromkeys(election.candidates, 0) for a in election.candidates}
    for v in election.voters:
        order, w = v.ballot.order, v.weight
        for i, a in enumerate(order):
            row = m[a]
            for b in order[i + 1:]:
                row[b] += w
                m[b][a] -= w
    return m


def condorcet_winner(election: Election) -> str | None:
    _require(election, Ranking)
    cands = election.candidates
    if len(cands) == 1:
        return cands[0]
    # rank positions per voter, then test each candidate with early exit
    positions = [({c: i for i, c in enumerate(v.ballot.order)}, v.weight) for v in election.voters]
    for a in cands:
        for b in cands:
            if a == b:
                continue
            margin = 0
            for pos, w in positions:
                margin += w if pos[a] < pos[b] else -w
            if margin <= 0:
                break
        else:
            return a
    return None


def _argmax(scores: dict[str, int]) -> frozenset[str]:
    if not scores:
        return frozenset()
    best = max(scores.values())
    return frozenset(c for c, s in scores.items() if s == best)


def winners(rule: Rule, election: Election) -> frozenset[str]:
    rule = Rule(rule)
    if rule is Rule.PLURALITY:
        return _argmax(plurality_scores(election))
    if rule is Rule.APPROVAL:
        return _argmax(approval_scores(election))
    if not election.candidates:
        _require(election, Ranking)
        return frozenset()
    w = condorcet_winner(election)
    return frozenset() if w is None else frozenset({w})


def is_unique_winner(rule: Rule, election: Election, p: str) -> bool:
    if p not in election.candidate_set:
        raise DomainError(f"unknown candidate {p!r}")
    return winners(rule, election) == {p}


def _survivors(rule: Rule, election: Election, tie_rule: TieRule) -> frozenset[str]:
    w = winners(rule, election)
    if TieRule(tie_rule) is TieRule.TE and len(w) != 1:
        return frozenset()
    return w


def two_stage_winners(rule: Rule, election: Election, action: Action, tie_rule: TieRule,
                      partition: tuple[Collection, Collection]) -> frozenset[str]:
    """Winners of a partition-control two-stage election.

    For PV the parts hold voter indices; for PC and RPC they hold candidate ids.
    The final round is held among the advancing candidates with ballots
    restricted to them.
    """
    action = Action(action)
    if not action.is_partition:
        raise DomainError(f"{action.value} is not a partition action")
    first, second = (frozenset(part) for part in partition)
    if first & second:
        raise DomainError("partition parts overlap")
    if action is Action.PV:
        if first | second != frozenset(range(len(election.voters))):
            raise DomainError("voter partition does not cover the voters exactly")
        sub1 = election.with_voters(election.voters[i] for i in sorted(first))
        sub2 = election.with_voters(election.voters[i] for i in sorted(second))
        finalists = _survivors(rule, sub1, tie_rule) | _survivors(rule, sub2, tie_rule)
    else:
        if first | second != election.candidate_set:
            raise DomainError("candidate partition does not cover the candidates exactly")
        finalists = _survivors(rule, restrict(election, first), tie_rule)
        if action is Action.RPC:
            finalists |= _survivors(rule, restrict(election, second), tie_rule)
        else:
            finalists |= second
    if not finalists:
        return frozenset()
    return winners(rule, restrict(election, finalists))
