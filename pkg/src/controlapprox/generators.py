"""Seeded random instances.  Every generator takes a ``random.Random``."""

from __future__ import annotations

import random

from .cip import Cip
from .control import Action, ControlInstance, ControlSpec, Rule
from .election import Approval, Election, Ranking, Voter
from .errors import DomainError
from .reductions import HittingSetInstance, MkuInstance, MscInstance, X3cInstance


def _positive(**sizes):
    for name, value in sizes.items():
        if value < 1:
            raise DomainError(f"{name} must be at least 1, got {value}")


def random_msc(rng: random.Random, universe: int, sets: int) -> MscInstance:
    """Uniform random sets, then every uncovered element joins a random set."""
    _positive(universe=universe, sets=sets)
    U = tuple(f"x{i}" for i in range(1, universe + 1))
    family = [{x for x in U if rng.random() < 0.5} for _ in range(sets)]
    for x in U:
        if not any(x in s for s in family):
            family[rng.randrange(sets)].add(x)
    return MscInstance(U, tuple(frozenset(s) for s in family))


def random_mku(rng: random.Random, universe: int, sets: int, k: int) -> MkuInstance:
    _positive(universe=universe, sets=sets, k=k)
    U = tuple(f"u{i}" for i in range(1, universe + 1))
    family = []
    for _ in range(sets):
        s = {u for u in U if rng.random() < 0.5} or {rng.choice(U)}
        family.append(frozenset(s))
    return MkuInstance(U, tuple(family), k)


def random_hitting_set(rng: random.Random, ground: int, sets: int, k: int) -> HittingSetInstance:
    """Sets are uniform random subsets, so an occasional empty set is possible."""
    _positive(ground=ground, sets=sets, k=k)
    B = tuple(f"b{i}" for i in range(1, ground + 1))
    family = tuple(frozenset(b for b in B if rng.random() < 0.4) for _ in range(sets))
    return HittingSetInstance(B, family, k)


def random_x3c(rng: random.Random, k: int, sets: int, plant: bool | None = None) -> X3cInstance:
    """Random triples; with ``plant`` an exact cover is hidden among them.

    ``plant=None`` flips a fair coin.
    """
    _positive(k=k, sets=sets)
    B = tuple(f"b{i}" for i in range(1, 3 * k + 1))
    if plant is None:
        plant = rng.random() < 0.5
    family = []
    if plant and sets >= k:
        shuffled = list(B)
        rng.shuffle(shuffled)
        family = [frozenset(shuffled[3 * i:3 * i + 3]) for i in range(k)]
    while len(family) < sets:
        family.append(frozenset(rng.sample(B, 3)))
    rng.shuffle(family)
    return X3cInstance(B, tuple(family), k)


def random_election(rng: random.Random, rule: Rule, candidates: int, voters: int,
                    weights: tuple[int, ...] = (1,)) -> Election:
    _positive(candidates=candidates)
    C = tuple(["p"] + [f"c{i}" for i in range(1, candidates)])
    return Election(C, tuple(_random_voter(rng, rule, C, weights) for _ in range(voters)))


def _random_voter(rng, rule, C, weights) -> Voter:
    if Rule(rule) is Rule.APPROVAL:
        ballot = Approval(frozenset(c for c in C if rng.random() < 0.5), frozenset(C))
    else:
        ballot = Ranking(tuple(rng.sample(C, len(C))))
    return Voter(ballot, rng.choice(weights))


def random_control_instance(rng: random.Random, spec: ControlSpec, candidates: int, voters: int,
                            pool: int = 0, weights: tuple[int, ...] = (1,)) -> ControlInstance:
    """A random instance for ``spec``; ``pool`` sizes the spoiler/unregistered pool."""
    if spec.action is Action.AC:
        election = random_election(rng, spec.rule, candidates + pool, voters, weights)
        spoilers = election.candidates[candidates:]
        return ControlInstance(spec, election, "p", spoilers)
    election = random_election(rng, spec.rule, candidates, voters, weights)
    if spec.action is Action.AV:
        extra = tuple(_random_voter(rng, spec.rule, election.candidates, weights) for _ in range(pool))
        return ControlInstance(spec, election, "p", extra)
    return ControlInstance(spec, election, "p")


def random_cip(rng: random.Random, max_rows: int = 6, max_cols: int = 6, max_entry: int = 3) -> Cip:
    """Small CIP with entries in ``0..max_entry``; costs and bounds in ``1..max_entry``."""
    m, n = rng.randint(0, max_rows), rng.randint(1, max_cols)
    A = tuple(tuple(rng.randint(0, max_entry) for _ in range(n)) for _ in range(m))
    b = tuple(rng.randint(0, max_entry) for _ in range(m))
    c = tuple(rng.randint(1, max_entry) for _ in range(n))
    d = tuple(rng.randint(1, max_entry) for _ in range(n))
    return Cip(A, b, c, d)

