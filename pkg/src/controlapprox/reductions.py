"""Gadget constructions from classic covering problems to control problems.

Each forward map ``f`` returns a :class:`ReductionArtifact`: the control
instance plus a provenance table tying gadget voters/candidates back to
source sets and elements.  The solution maps ``g`` read that table rather
than re-deriving the gadget.

Rankings that the constructions leave partly unspecified are completed
canonically: named blocks in source order, then leftover source elements in
source order, then auxiliary candidates (buffers, then p/c/w/e).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from .control import (Action, AddSet, ControlInstance, ControlSolution, ControlSpec, DeleteSet, Goal,
                      Rule, is_feasible)
from .election import Election, Voter, Approval, Ranking
from .errors import DomainError, PreconditionError


def _distinct(items: Sequence[str], what: str) -> tuple[str, ...]:
    items = tuple(items)
    if len(set(items)) != len(items):
        raise DomainError(f"{what} has repeated elements")
    if any(not isinstance(x, str) or not x for x in items):
        raise DomainError(f"{what} elements must be nonempty strings")
    return items


def _family(family: Iterable[Iterable[str]], ground: Sequence[str]) -> tuple[frozenset[str], ...]:
    family = tuple(frozenset(s) for s in family)
    g = set(ground)
    for i, s in enumerate(family):
        if not s <= g:
            raise DomainError(f"set {i} has elements outside the ground set: {sorted(s - g)}")
    return family


@dataclass(frozen=True)
class MscInstance:
    """Minimum set cover: pick fewest sets whose union is the universe."""

    universe: tuple[str, ...]
    family: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(self, "universe", _distinct(self.universe, "universe"))
        object.__setattr__(self, "family", _family(self.family, self.universe))
        if not self.family:
            raise DomainError("the family must not be empty")
        if frozenset().union(*self.family) != frozenset(self.universe):
            raise DomainError("the family does not cover the universe")


@dataclass(frozen=True)
class MkuInstance:
    """Minimum k-union: pick ``k`` sets with the smallest union."""

    universe: tuple[str, ...]
    family: tuple[frozenset[str], ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "universe", _distinct(self.universe, "universe"))
        object.__setattr__(self, "family", _family(self.family, self.universe))
        if not self.universe:
            raise DomainError("the universe must be nonempty")
        if any(not s for s in self.family):
            raise DomainError("every set must be nonempty")
        if not 1 <= self.k <= len(self.family):
            raise DomainError(f"k must lie in [1, {len(self.family)}], got {self.k}")


@dataclass(frozen=True)
class HittingSetInstance:
    """Is there ``B' ⊆ ground`` of size at most ``k`` meeting every set?"""

    ground: tuple[str, ...]
    family: tuple[frozenset[str], ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "ground", _distinct(self.ground, "ground set"))
        object.__setattr__(self, "family", _family(self.family, self.ground))
        if self.k < 1:
            raise DomainError(f"k must be positive, got {self.k}")


@dataclass(frozen=True)
class X3cInstance:
    """Exact cover of a ``3k``-element ground set by ``k`` of the given triples."""

    ground: tuple[str, ...]
    family: tuple[frozenset[str], ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "ground", _distinct(self.ground, "ground set"))
        object.__setattr__(self, "family", _family(self.family, self.ground))
        if self.k < 1 or len(self.ground) != 3 * self.k:
            raise DomainError(f"ground set must have 3k elements with k >= 1 (k={self.k}, "
                              f"|B|={len(self.ground)})")
        if any(len(s) != 3 for s in self.family):
            raise DomainError("every member must have exactly three elements")


SourceInstance = MscInstance | MkuInstance | HittingSetInstance | X3cInstance


@dataclass(frozen=True)
class ReductionArtifact:
    """A reduced instance with its provenance table and gadget constants.

    Provenance keys name gadget objects (``"pool:3"``, ``"voter:0"``,
    ``"candidate:x1"``); values name source objects (``"set:3"``,
    ``"element:x1"``) or gadget roles (``"padding:1"``, ``"type2"``).
    """

    instance: ControlInstance
    provenance: dict[str, str]
    parameters: dict[str, Any] = field(default_factory=dict)


def _in_order(subset: Iterable[str], reference: Sequence[str]) -> tuple[str, ...]:
    subset = set(subset)
    return tuple(x for x in reference if x in subset)


def _check_reserved(names: Iterable[str], reserved: Iterable[str]) -> None:
    clash = set(names) & set(reserved)
    if clash:
        raise DomainError(f"source element names clash with gadget candidates: {sorted(clash)}")


def _require_feasible(art: ReductionArtifact, sol: ControlSolution) -> None:
    if not is_feasible(art.instance, sol):
        raise DomainError("the target solution is not feasible for the reduced instance")


def _indices(art: ReductionArtifact, keys: Iterable[str], prefix: str) -> list[int]:
    out = []
    for key in keys:
        ref = art.provenance.get(key, "")
        if ref.startswith(prefix):
            out.append(int(ref[len(prefix):]))
    return sorted(out)


# ---------------------------------------------------------------------------
# Minimum set cover -> approval CCAV / CCDV


def msc_to_approval_ccav(src: MscInstance) -> ReductionArtifact:
    """Candidates ``U + {p}``, no registered voters, one pool voter per set.

    Pool voter ``i`` approves exactly the candidates outside ``S_i`` (so
    always ``p``).
    """
    _check_reserved(src.universe, ["p"])
    cands = src.universe + ("p",)
    universe = frozenset(cands)
    pool = tuple(Voter(Approval(universe - s, universe)) for s in src.family)
    spec = ControlSpec(Rule.APPROVAL, Action.AV)
    instance = ControlInstance(spec, Election(cands, ()), "p", pool)
    provenance = {f"pool:{i}": f"set:{i}" for i in range(len(src.family))}
    provenance.update({f"candidate:{x}": f"element:{x}" for x in src.universe})
    return ReductionArtifact(instance, provenance, {"n_sets": len(src.family)})


def ccav_solution_to_msc(src: MscInstance, art: ReductionArtifact, sol: AddSet) -> tuple[int, ...]:
    """Indices of the sets whose voters were added."""
    _require_feasible(art, sol)
    return tuple(_indices(art, (f"pool:{i}" for i in sol.items), "set:"))


def msc_to_approval_ccdv(src: MscInstance) -> ReductionArtifact:
    """Candidates ``U + {p}``; one voter per set approving its elements, plus padding.

    With ``k`` the largest element score, padding voter ``t`` (1-based)
    approves ``p`` and every element whose score deficit ``k - score`` is at
    least ``t``, leaving all candidates at exactly ``k`` approvals.
    """
    _check_reserved(src.universe, ["p"])
    cands = src.universe + ("p",)
    universe = frozenset(cands)
    score = {x: sum(x in s for s in src.family) for x in src.universe}
    k = max(score.values(), default=0)
    voters = [Voter(Approval(s, universe)) for s in src.family]
    padding = [frozenset({"p"}) | {x for x in src.universe if k - score[x] >= t}
               for t in range(1, k + 1)]
    voters += [Voter(Approval(a, universe)) for a in padding]
    spec = ControlSpec(Rule.APPROVAL, Action.DV)
    instance = ControlInstance(spec, Election(cands, tuple(voters)), "p")
    m = len(src.family)
    provenance = {f"voter:{i}": f"set:{i}" for i in range(m)}
    provenance.update({f"voter:{m + t}": f"padding:{t + 1}" for t in range(k)})
    provenance.update({f"candidate:{x}": f"element:{x}" for x in src.universe})
    params = {"k": k, "padding": [list(_in_order(a, cands)) for a in padding]}
    return ReductionArtifact(instance, provenance, params)


def ccdv_solution_to_msc(src: MscInstance, art: ReductionArtifact, sol: DeleteSet) -> tuple[int, ...]:
    """Indices of the sets whose voters were deleted; padding voters contribute nothing."""
    _require_feasible(art, sol)
    return tuple(_indices(art, (f"voter:{i}" for i in sol.items), "set:"))


# ---------------------------------------------------------------------------
# Minimum k-union -> plurality CCDC


def mku_to_plurality_ccdc(src: MkuInstance) -> ReductionArtifact:
    """Candidates ``U + B + {p}`` with ``n + 1`` buffers ``B``.

    Votes: per set ``S_i > p > ...``; ``k - 1 + N`` votes ``B > ... > p``;
    ``N`` votes ``p > ...``, where ``N`` is the largest number of sets sharing
    one element.
    """
    if src.k <= 1:
        raise PreconditionError("the MkU gadget needs k > 1; solve k = 1 with the exact oracle")
    n = len(src.universe)
    buffers = tuple(f"buf{i}" for i in range(1, n + 2))
    _check_reserved(src.universe, buffers + ("p",))
    U = src.universe
    cands = U + buffers + ("p",)
    N = max(sum(u in s for s in src.family) for u in U)
    rankings = []
    for s in src.family:
        rankings.append(_in_order(s, U) + ("p",) + _in_order(set(U) - s, U) + buffers)
    rankings += [buffers + U + ("p",)] * (src.k - 1 + N)
    rankings += [("p",) + U + buffers] * N
    spec = ControlSpec(Rule.PLURALITY, Action.DC)
    instance = ControlInstance(spec, Election.from_rankings(cands, rankings), "p")
    m = len(src.family)
    provenance = {f"voter:{i}": f"set:{i}" for i in range(m)}
    provenance.update({f"voter:{m + j}": "type2" for j in range(src.k - 1 + N)})
    provenance.update({f"voter:{m + src.k - 1 + N + j}": "type3" for j in range(N)})
    provenance.update({f"candidate:{u}": f"element:{u}" for u in U})
    provenance.update({f"candidate:{b}": "buffer" for b in buffers})
    return ReductionArtifact(instance, provenance, {"N": N, "k": src.k, "buffers": list(buffers)})


def contained_sets(src: MkuInstance, art: ReductionArtifact, sol: DeleteSet) -> tuple[int, ...]:
    """Indices of the sets lying entirely inside the deleted elements."""
    deleted = {art.provenance[f"candidate:{c}"][len("element:"):] for c in sol.items
               if art.provenance.get(f"candidate:{c}", "").startswith("element:")}
    return tuple(i for i, s in enumerate(src.family) if s <= deleted)


def ccdc_solution_to_mku(src: MkuInstance, art: ReductionArtifact, sol: DeleteSet) -> tuple[int, ...]:
    """The ``k`` lowest-index sets contained in the deletion set."""
    _require_feasible(art, sol)
    inside = contained_sets(src, art, sol)
    k = art.parameters["k"]
    if len(inside) < k:
        raise DomainError(f"only {len(inside)} sets lie inside the deletion set, need {k}")
    return inside[:k]


# ---------------------------------------------------------------------------
# Hitting set -> plurality DCUDC


def hitting_set_to_plurality_dcudc(src: HittingSetInstance) -> ReductionArtifact:
    """Candidates ``B + {c, w}``; the goal is to stop ``c`` from winning uniquely.

    Voter groups (m = |B|, n = |family|):
      1. ``2(m-k) + 2n(k+1) + 4`` votes ``c > w > ...``
      2. ``2n(k+1) + 5`` votes ``w > c > ...``
      3. per set, ``2(k+1)`` votes ``S_i > c > ...``
      4. per element, 2 votes ``b_j > w > ...``
    """
    B, k = src.ground, src.k
    m, n = len(B), len(src.family)
    if k > m:
        raise PreconditionError(f"the gadget needs k <= |B| (k={k}, |B|={m}); decide directly instead")
    _check_reserved(B, ["c", "w"])
    cands = B + ("c", "w")
    groups = [2 * (m - k) + 2 * n * (k + 1) + 4, 2 * n * (k + 1) + 5, 2 * (k + 1), 2]
    rankings, provenance = [], {}

    def add(ranking, count, role):
        for _ in range(count):
            provenance[f"voter:{len(rankings)}"] = role
            rankings.append(ranking)

    add(("c", "w") + B, groups[0], "group1")
    add(("w", "c") + B, groups[1], "group2")
    for i, s in enumerate(src.family):
        add(_in_order(s, B) + ("c",) + _in_order(set(B) - s, B) + ("w",), groups[2], f"set:{i}")
    for b in B:
        add((b, "w") + tuple(x for x in B if x != b) + ("c",), groups[3], f"element:{b}")
    provenance.update({f"candidate:{b}": f"element:{b}" for b in B})
    spec = ControlSpec(Rule.PLURALITY, Action.DC, Goal.DESTRUCTIVE)
    instance = ControlInstance(spec, Election.from_rankings(cands, rankings), "c")
    params = {"m": m, "n": n, "k": k, "group_sizes": groups}
    return ReductionArtifact(instance, provenance, params)


def dcudc_solution_to_hitting_set(src: HittingSetInstance, art: ReductionArtifact,
                                  sol: DeleteSet) -> tuple[str, ...]:
    """The elements left undeleted."""
    _require_feasible(art, sol)
    kept = [art.provenance[key][len("element:"):] for key in art.provenance
            if key.startswith("candidate:") and key[len("candidate:"):] not in sol.items]
    return _in_order(kept, src.ground)


# ---------------------------------------------------------------------------
# X3C -> Condorcet CCUAV


def x3c_to_condorcet_ccuav(src: X3cInstance) -> ReductionArtifact:
    """Candidates ``B + {c, p}``.

    Registered: ``k - 1`` votes ``B > p > c`` and 2 votes ``p > c > B``.
    Pool: per triple, ``S_i > c > p > B - S_i``.
    """
    if src.k < 3:
        raise PreconditionError("the X3C gadget needs k >= 3; decide small k with the exact oracle")
    B = src.ground
    _check_reserved(B, ["c", "p"])
    cands = B + ("c", "p")
    rankings = [B + ("p", "c")] * (src.k - 1) + [("p", "c") + B] * 2
    pool = tuple(Voter(Ranking(_in_order(s, B) + ("c", "p") + _in_order(set(B) - s, B)))
                 for s in src.family)
    spec = ControlSpec(Rule.CONDORCET, Action.AV)
    instance = ControlInstance(spec, Election.from_rankings(cands, rankings), "p", pool)
    provenance = {f"pool:{i}": f"set:{i}" for i in range(len(src.family))}
    return ReductionArtifact(instance, provenance, {"k": src.k})


def ccuav_solution_to_x3c(src: X3cInstance, art: ReductionArtifact, sol: AddSet) -> tuple[int, ...]:
    """Indices of the triples whose voters were added."""
    _require_feasible(art, sol)
    return tuple(_indices(art, (f"pool:{i}" for i in sol.items), "set:"))


# ---------------------------------------------------------------------------
# Hitting set -> Condorcet CCUDV


def hitting_set_to_condorcet_ccudv(src: HittingSetInstance) -> ReductionArtifact:
    """Candidates ``p``, one per set ``S1..Sn``, ``d1..d_{k+1}`` and ``e``.

    Voters: ``x_1: S > D-d_1 > p > d_1 > e``; ``x_i: D-d_i > p > d_i > e > S``
    for ``2 <= i <= k+1``; per element ``b_j``:
    ``y_j: S - S'_j > e > p > D > S'_j`` with ``S'_j`` the sets containing ``b_j``.
    """
    B, k = src.ground, src.k
    if k > len(B):
        raise PreconditionError(f"the gadget needs k <= |B| (k={k}, |B|={len(B)}); decide directly instead")
    S = tuple(f"S{i}" for i in range(1, len(src.family) + 1))
    D = tuple(f"d{i}" for i in range(1, k + 2))
    cands = ("p",) + S + D + ("e",)
    rankings, provenance = [], {}
    for i, d in enumerate(D):
        rest = tuple(x for x in D if x != d)
        if i == 0:
            rankings.append(S + rest + ("p", d, "e"))
        else:
            rankings.append(rest + ("p", d, "e") + S)
        provenance[f"voter:{i}"] = f"x:{i + 1}"
    for b in B:
        hit = {S[i] for i, s in enumerate(src.family) if b in s}
        provenance[f"voter:{len(rankings)}"] = f"element:{b}"
        rankings.append(tuple(x for x in S if x not in hit) + ("e", "p") + D
                        + tuple(x for x in S if x in hit))
    provenance.update({f"candidate:{name}": f"set:{i}" for i, name in enumerate(S)})
    spec = ControlSpec(Rule.CONDORCET, Action.DV)
    instance = ControlInstance(spec, Election.from_rankings(cands, rankings), "p")
    return ReductionArtifact(instance, provenance, {"k": k, "m": len(B), "n": len(src.family)})


def ccudv_solution_to_hitting_set(src: HittingSetInstance, art: ReductionArtifact,
                                  sol: DeleteSet) -> tuple[str, ...]:
    """Elements whose voters were kept."""
    _require_feasible(art, sol)
    n_voters = len(art.instance.election.voters)
    kept = [art.provenance[f"voter:{i}"][len("element:"):] for i in range(n_voters)
            if i not in sol.items and art.provenance[f"voter:{i}"].startswith("element:")]
    return _in_order(kept, src.ground)


@dataclass(frozen=True)
class Reduction:
    source_kind: str
    target_problem: str
    forward: Callable[[Any], ReductionArtifact]
    backward: Callable[[Any, ReductionArtifact, ControlSolution], tuple]
    strict: bool  # approximation-preserving; otherwise a yes/no reduction


REDUCTIONS: dict[str, Reduction] = {
    "msc-ccav": Reduction("msc", "approval-ccav", msc_to_approval_ccav, ccav_solution_to_msc, True),
    "msc-ccdv": Reduction("msc", "approval-ccdv", msc_to_approval_ccdv, ccdv_solution_to_msc, True),
    "mku-ccdc": Reduction("mku", "plurality-ccdc", mku_to_plurality_ccdc, ccdc_solution_to_mku, True),
    "hs-plurality-dcudc": Reduction("hitting-set", "plurality-dcudc", hitting_set_to_plurality_dcudc,
                                    dcudc_solution_to_hitting_set, False),
    "x3c-condorcet-ccuav": Reduction("x3c", "condorcet-ccuav", x3c_to_condorcet_ccuav,
                                     ccuav_solution_to_x3c, False),
    "hs-condorcet-ccudv": Reduction("hitting-set", "condorcet-ccudv", hitting_set_to_condorcet_ccudv,
                                    ccudv_solution_to_hitting_set, False),
}


def find_reduction(source_kind: str, target_problem: str) -> str:
    for rid, red in REDUCTIONS.items():
        if red.source_kind == source_kind and red.target_problem == target_problem.lower():
            return rid
    raise DomainError(f"no reduction from {source_kind} to {target_problem}")
