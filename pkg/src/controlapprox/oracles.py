"""Brute-force exact solvers, the strictness verifier and the decision wrapper.

Every search is deterministic and bounded by a node budget (feasibility
checks or enumerated candidates); running out raises :class:`ResourceError`
rather than returning a possibly wrong answer.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .control import (INFEASIBLE, Action, AddSet, ControlInstance, ControlSolution, DeleteSet,
                      Measure, Partition, is_feasible, measure, performance_ratio)
from .errors import DomainError, NoSolutionError, ResourceError
from .reductions import REDUCTIONS, HittingSetInstance, MkuInstance, MscInstance, X3cInstance

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class OptResult:
    solution: Optional[ControlSolution]
    measure: Measure
    nodes_explored: int


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceError(f"search exceeded the node budget of {self.limit}")


def _atoms(instance: ControlInstance) -> tuple:
    """The objects a solution picks from, in canonical order."""
    action, e = instance.spec.action, instance.election
    if action is Action.AC:
        return instance.pool
    if action is Action.AV:
        return tuple(range(len(instance.pool)))
    if action is Action.DC:
        return tuple(c for c in e.candidates if c != instance.p)
    if action is Action.DV:
        return tuple(range(len(e.voters)))
    if action is Action.PV:
        return tuple(range(len(e.voters)))
    return e.candidates


def _subset_solutions(instance: ControlInstance, max_size: int) -> Iterator[ControlSolution]:
    kind = AddSet if instance.spec.action in (Action.AC, Action.AV) else DeleteSet
    atoms = _atoms(instance)
    for size in range(min(max_size, len(atoms)) + 1):
        for combo in itertools.combinations(atoms, size):
            yield kind(frozenset(combo))


def _partition_solutions(instance: ControlInstance) -> Iterator[Partition]:
    atoms = _atoms(instance)
    n = len(atoms)
    # ascending measure 1 + |2s - n|, then smaller first part, then lexicographic
    for s in sorted(range(n + 1), key=lambda s: (abs(2 * s - n), s)):
        for combo in itertools.combinations(range(n), s):
            chosen = set(combo)
            yield Partition(frozenset(atoms[i] for i in combo),
                            frozenset(atoms[i] for i in range(n) if i not in chosen))


def candidate_solutions(instance: ControlInstance, size_limit: Optional[int] = None
                        ) -> Iterator[ControlSolution]:
    """All well-formed solutions in (measure, lexicographic) order.

    Add/delete searches are capped at ``size_limit`` and at the spec's budget.
    """
    spec = instance.spec
    if spec.action.is_partition:
        yield from _partition_solutions(instance)
        return
    bound = len(_atoms(instance))
    if size_limit is not None:
        bound = min(bound, size_limit)
    if spec.limited:
        bound = min(bound, spec.budget)
    yield from _subset_solutions(instance, bound)


def feasible_solutions(instance: ControlInstance, size_limit: Optional[int] = None,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> Iterator[ControlSolution]:
    budget = _Budget(node_budget)
    for sol in candidate_solutions(instance, size_limit):
        budget.tick()
        if is_feasible(instance, sol):
            yield sol


def opt_control(instance: ControlInstance, size_limit: Optional[int] = None,
                node_budget: int = DEFAULT_NODE_BUDGET) -> OptResult:
    """Minimum-measure feasible solution by exhaustive search (``None`` if there is none)."""
    budget = _Budget(node_budget)
    for sol in candidate_solutions(instance, size_limit):
        budget.tick()
        if is_feasible(instance, sol):
            return OptResult(sol, measure(instance, sol), budget.used)
    return OptResult(None, INFEASIBLE, budget.used)


# ---------------------------------------------------------------------------
# source problems


def _subfamilies(m: int, node_budget: int) -> Iterator[tuple[int, ...]]:
    budget = _Budget(node_budget)
    for size in range(m + 1):
        for combo in itertools.combinations(range(m), size):
            budget.tick()
            yield combo


def covers(src: MscInstance, chosen: Sequence[int]) -> bool:
    return frozenset().union(*(src.family[i] for i in chosen)) == frozenset(src.universe)


def opt_msc(src: MscInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, ...]:
    """Smallest covering subfamily (set indices); lexicographically first among ties."""
    for combo in _subfamilies(len(src.family), node_budget):
        if covers(src, combo):
            return combo
    raise AssertionError("an MSC instance always has a cover")  # guaranteed by MscInstance


def union_size(family: Sequence[frozenset], chosen: Sequence[int]) -> int:
    return len(frozenset().union(*(family[i] for i in chosen)))


def opt_mku(src: MkuInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[tuple[int, ...], int]:
    """The ``k`` sets with the smallest union, and that union's size."""
    budget = _Budget(node_budget)
    best, best_size = None, None
    for combo in itertools.combinations(range(len(src.family)), src.k):
        budget.tick()
        size = union_size(src.family, combo)
        if best_size is None or size < best_size:
            best, best_size = combo, size
    return best, best_size


def hits(src: HittingSetInstance, chosen: Sequence[str]) -> bool:
    chosen = set(chosen)
    return all(s & chosen for s in src.family)


def opt_hitting_set(src: HittingSetInstance, node_budget: int = DEFAULT_NODE_BUDGET
                    ) -> Optional[tuple[str, ...]]:
    """Smallest hitting set ignoring ``k`` (``None`` if some set is empty)."""
    if any(not s for s in src.family):
        return None
    for combo in _subfamilies(len(src.ground), node_budget):
        chosen = tuple(src.ground[i] for i in combo)
        if hits(src, chosen):
            return chosen
    raise AssertionError("the whole ground set hits every nonempty set")


def has_hitting_set(src: HittingSetInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    best = opt_hitting_set(src, node_budget)
    return best is not None and len(best) <= src.k


def exists_x3c(src: X3cInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    ground = frozenset(src.ground)
    budget = _Budget(node_budget)
    for combo in itertools.combinations(range(len(src.family)), src.k):
        budget.tick()
        if frozenset().union(*(src.family[i] for i in combo)) == ground:
            return True
    return False


# ---------------------------------------------------------------------------
# strictness


@dataclass
class StrictnessReport:
    """Outcome of checking ``R_source(I, g(I, y)) <= R_target(f(I), y)`` over feasible ``y``.

    Source measures use the same "+1" convention as control measures:
    ``1 + |cover|`` for MSC and ``1 + |union|`` for MkU.
    """

    instance_id: str
    solutions_checked: int = 0
    max_source_ratio: Fraction = Fraction(1)
    max_target_ratio: Fraction = Fraction(1)
    violations: list = field(default_factory=list)
    opt_source: int = 0  # raw optimum (cover size / union size)
    opt_target: int = 0  # raw optimum (solution size)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def opt_equal(self) -> bool:
        return self.opt_source == self.opt_target


def _source_value(reduction_id: str, src, mapped: tuple) -> Union[int, float]:
    """Raw objective of a mapped source solution, ``inf`` if it is not feasible."""
    if reduction_id in ("msc-ccav", "msc-ccdv"):
        return len(mapped) if covers(src, mapped) else INFEASIBLE
    if len(mapped) != src.k or len(set(mapped)) != src.k:
        return INFEASIBLE
    return union_size(src.family, mapped)


def verify_strictness(reduction_id: str, src, enumeration_bound: Optional[int] = None,
                      instance_id: str = "", mapback: Optional[Callable] = None,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> StrictnessReport:
    """Enumerate every feasible target solution (up to ``enumeration_bound`` in size).

    ``mapback`` overrides the reduction's solution map; tests use it for
    negative controls.
    """
    if reduction_id not in ("msc-ccav", "msc-ccdv", "mku-ccdc"):
        raise DomainError(f"{reduction_id} is not an approximation-preserving reduction")
    red = REDUCTIONS[reduction_id]
    g = mapback or red.backward
    art = red.forward(src)
    if reduction_id == "mku-ccdc":
        opt_src = opt_mku(src, node_budget)[1]
    else:
        opt_src = len(opt_msc(src, node_budget))
    target_opt = opt_control(art.instance, enumeration_bound, node_budget)
    if target_opt.solution is None:
        raise NoSolutionError("the reduced instance has no feasible solution within the bound")
    report = StrictnessReport(instance_id, opt_source=opt_src, opt_target=int(target_opt.measure) - 1)
    for y in feasible_solutions(art.instance, enumeration_bound, node_budget):
        r_target = performance_ratio(measure(art.instance, y), target_opt.measure)
        try:
            mapped = tuple(g(src, art, y))
        except DomainError:
            mapped, value = None, INFEASIBLE
        else:
            value = _source_value(reduction_id, src, mapped)
        r_source = performance_ratio(1 + value, 1 + opt_src)
        report.solutions_checked += 1
        report.max_target_ratio = max(report.max_target_ratio, r_target)
        report.max_source_ratio = max(report.max_source_ratio, r_source)
        if r_source > r_target:
            report.violations.append((y, r_source, r_target))
    return report


# ---------------------------------------------------------------------------
# decision


def decide_via_approx(instance: ControlInstance, algorithm: Callable[[ControlInstance], object]) -> bool:
    """Yes iff the approximation algorithm returns a feasible solution.

    Any approximation algorithm returns a solution exactly on yes-instances,
    so it decides the underlying control problem.
    """
    try:
        result = algorithm(instance)
    except NoSolutionError:
        return False
    return is_feasible(instance, result.solution)


def decide_control(instance: ControlInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """Exact yes/no: does any feasible solution exist?"""
    return opt_control(instance, node_budget=node_budget).solution is not None


def source_yes(reduction_id: str, src, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    if reduction_id in ("hs-plurality-dcudc", "hs-condorcet-ccudv"):
        return has_hitting_set(src, node_budget)
    if reduction_id == "x3c-condorcet-ccuav":
        return exists_x3c(src, node_budget)
    raise DomainError(f"{reduction_id} is not a yes/no reduction")


@dataclass(frozen=True)
class DecisionCheck:
    source_yes: bool
    target_yes: bool
    mapped: Optional[tuple]  # source certificate extracted from the optimal target solution
    mapped_ok: bool

    @property
    def ok(self) -> bool:
        return self.source_yes == self.target_yes and self.mapped_ok


def verify_decision(reduction_id: str, src, node_budget: int = DEFAULT_NODE_BUDGET) -> DecisionCheck:
    """Compare source and target yes/no, and check the extracted certificate."""
    red = REDUCTIONS[reduction_id]
    art = red.forward(src)
    yes = source_yes(reduction_id, src, node_budget)
    opt = opt_control(art.instance, node_budget=node_budget)
    if opt.solution is None:
        return DecisionCheck(yes, False, None, True)
    mapped = tuple(red.backward(src, art, opt.solution))
    if reduction_id == "x3c-condorcet-ccuav":
        ok = len(mapped) == src.k and frozenset().union(*(src.family[i] for i in mapped)) == set(src.ground)
    else:
        ok = len(mapped) <= src.k and hits(src, mapped)
    return DecisionCheck(yes, True, mapped, ok)
