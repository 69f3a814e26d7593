"""JSON documents for instances, solutions and provenance sidecars.

Every document is an object ``{"schema_version": 1, "kind": ..., ...}``.
Instances carry their payload under ``"body"``.  Keys are written in a fixed
order; unknown keys are rejected on input.

Election-control body::

    {"rule": "approval", "action": "AV", "goal": "constructive",
     "budget": null, "tie_rule": null,
     "candidates": ["p", "a"],
     "A": [...],                        # AC only: spoiler candidates
     "voters": [{"approve": ["a"]}, {"ballot": ["a", "p"], "weight": 2}],
     "W": [...],                        # AV only: unregistered voters
     "p": "p"}

Voters are referred to by their position in ``voters`` (or ``W`` for added
voters); candidates by id.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .control import (Action, AddSet, ControlInstance, ControlSolution, ControlSpec, DeleteSet,
                      Measure, Partition)
from .election import Approval, Election, Ranking, Voter
from .errors import DomainError
from .reductions import (HittingSetInstance, MkuInstance, MscInstance, ReductionArtifact,
                         X3cInstance)

SCHEMA_VERSION = 1

SOURCE_KINDS = {"msc": MscInstance, "mku": MkuInstance, "hitting-set": HittingSetInstance,
                "x3c": X3cInstance}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _header(kind: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind}


def _check_keys(obj: Any, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise DomainError(f"{where}: expected a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        raise DomainError(f"{where}: unknown fields {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DomainError(f"{where}: missing fields {sorted(missing)}")


def _open(doc: Any, kinds: set[str] | None = None) -> str:
    if not isinstance(doc, dict):
        raise DomainError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DomainError(f"unsupported schema_version {doc.get('schema_version')!r}")
    kind = doc.get("kind")
    if kinds is not None and kind not in kinds:
        raise DomainError(f"expected a document of kind {sorted(kinds)}, got {kind!r}")
    return kind


# ---------------------------------------------------------------------------
# voters and instances


def voter_to_json(v: Voter) -> dict:
    if isinstance(v.ballot, Ranking):
        out = {"ballot": list(v.ballot.order)}
    else:
        out = {"approve": sorted(v.ballot.approved)}
    if v.weight != 1:
        out["weight"] = v.weight
    return out


def voter_from_json(obj: Any, universe: frozenset[str], where: str) -> Voter:
    _check_keys(obj, {"ballot", "approve", "weight"}, set(), where)
    if ("ballot" in obj) == ("approve" in obj):
        raise DomainError(f"{where}: give exactly one of 'ballot' or 'approve'")
    weight = obj.get("weight", 1)
    if "ballot" in obj:
        return Voter(Ranking(tuple(obj["ballot"])), weight)
    return Voter(Approval(frozenset(obj["approve"]), universe), weight)


def control_instance_to_json(inst: ControlInstance) -> dict:
    spec = inst.spec
    body: dict[str, Any] = {
        "rule": spec.rule.value,
        "action": spec.action.value,
        "goal": spec.goal.value,
        "budget": spec.budget,
        "tie_rule": spec.tie_rule.value if spec.tie_rule else None,
        "candidates": list(inst.registered),
    }
    if spec.action is Action.AC:
        body["A"] = list(inst.pool)
    body["voters"] = [voter_to_json(v) for v in inst.election.voters]
    if spec.action is Action.AV:
        body["W"] = [voter_to_json(v) for v in inst.pool]
    body["p"] = inst.p
    return {**_header("election-control"), "body": body}


def control_instance_from_json(body: Any) -> ControlInstance:
    _check_keys(body, {"rule", "action", "goal", "budget", "tie_rule", "candidates", "A", "voters",
                       "W", "p"}, {"rule", "action", "candidates", "voters", "p"}, "body")
    spec = ControlSpec(body["rule"], body["action"], body.get("goal", "constructive"),
                       body.get("budget"), body.get("tie_rule"))
    if "A" in body and spec.action is not Action.AC:
        raise DomainError("'A' is only meaningful for AC instances")
    if "W" in body and spec.action is not Action.AV:
        raise DomainError("'W' is only meaningful for AV instances")
    spoilers = tuple(body.get("A", ()))
    candidates = tuple(body["candidates"]) + spoilers
    universe = frozenset(candidates)
    voters = tuple(voter_from_json(v, universe, f"voters[{i}]") for i, v in enumerate(body["voters"]))
    election = Election(candidates, voters)
    if spec.action is Action.AC:
        pool = spoilers
    else:
        pool = tuple(voter_from_json(v, universe, f"W[{i}]") for i, v in enumerate(body.get("W", ())))
    return ControlInstance(spec, election, body["p"], pool)


def _family_to_json(family, reference) -> list[list[str]]:
    return [[x for x in reference if x in s] for s in family]


def source_to_json(src) -> dict:
    if isinstance(src, MscInstance):
        kind, body = "msc", {"universe": list(src.universe),
                             "family": _family_to_json(src.family, src.universe)}
    elif isinstance(src, MkuInstance):
        kind, body = "mku", {"universe": list(src.universe),
                             "family": _family_to_json(src.family, src.universe), "k": src.k}
    else:
        kind = "hitting-set" if isinstance(src, HittingSetInstance) else "x3c"
        body = {"ground": list(src.ground), "family": _family_to_json(src.family, src.ground),
                "k": src.k}
    return {**_header(kind), "body": body}


def source_from_json(kind: str, body: Any):
    if kind == "msc":
        _check_keys(body, {"universe", "family"}, {"universe", "family"}, "body")
        return MscInstance(tuple(body["universe"]), tuple(frozenset(s) for s in body["family"]))
    if kind == "mku":
        _check_keys(body, {"universe", "family", "k"}, {"universe", "family", "k"}, "body")
        return MkuInstance(tuple(body["universe"]), tuple(frozenset(s) for s in body["family"]),
                           body["k"])
    _check_keys(body, {"ground", "family", "k"}, {"ground", "family", "k"}, "body")
    return SOURCE_KINDS[kind](tuple(body["ground"]), tuple(frozenset(s) for s in body["family"]),
                              body["k"])


def instance_to_json(obj) -> dict:
    if isinstance(obj, ControlInstance):
        return control_instance_to_json(obj)
    return source_to_json(obj)


def instance_from_json(doc: Any):
    """Parse an instance document into a ControlInstance or a source instance."""
    kind = _open(doc, {"election-control", *SOURCE_KINDS})
    _check_keys(doc, {"schema_version", "kind", "body"}, {"body"}, "document")
    try:
        if kind == "election-control":
            return control_instance_from_json(doc["body"])
        return source_from_json(kind, doc["body"])
    except DomainError:
        raise
    except (TypeError, KeyError, ValueError) as exc:
        raise DomainError(f"malformed {kind} body: {exc}") from None


# ---------------------------------------------------------------------------
# solutions


def _measure_json(m: Measure):
    return None if m == math.inf else int(m)


def _sorted(items) -> list:
    return sorted(items, key=lambda x: (isinstance(x, str), x))


def solution_to_json(sol: ControlSolution, action: Action, measure: Measure | None = None) -> dict:
    doc = {**_header("control-solution"), "action": Action(action).value}
    if isinstance(sol, AddSet):
        doc["added"] = _sorted(sol.items)
    elif isinstance(sol, DeleteSet):
        doc["deleted"] = _sorted(sol.items)
    else:
        doc["partition"] = [_sorted(sol.first), _sorted(sol.second)]
    if measure is not None:
        doc["measure"] = _measure_json(measure)
    return doc


def solution_from_json(doc: Any, instance: ControlInstance | None = None) -> ControlSolution:
    _open(doc, {"control-solution"})
    _check_keys(doc, {"schema_version", "kind", "action", "added", "deleted", "partition", "measure"},
                {"action"}, "solution")
    try:
        action = Action(doc["action"])
    except ValueError:
        raise DomainError(f"unknown action {doc['action']!r}") from None
    if instance is not None and instance.spec.action is not action:
        raise DomainError(f"solution is for {action.value}, instance is {instance.spec.action.value}")
    payload = [k for k in ("added", "deleted", "partition") if k in doc]
    if len(payload) != 1:
        raise DomainError("a solution needs exactly one of 'added', 'deleted', 'partition'")
    expected = {Action.AC: "added", Action.AV: "added", Action.DC: "deleted",
                Action.DV: "deleted"}.get(action, "partition")
    if payload[0] != expected:
        raise DomainError(f"{action.value} solutions use '{expected}', got '{payload[0]}'")
    if expected == "added":
        return AddSet(frozenset(doc["added"]))
    if expected == "deleted":
        return DeleteSet(frozenset(doc["deleted"]))
    parts = doc["partition"]
    if not isinstance(parts, list) or len(parts) != 2:
        raise DomainError("'partition' must hold exactly two parts")
    return Partition(frozenset(parts[0]), frozenset(parts[1]))


def source_solution_to_json(kind: str, src, mapped: tuple) -> dict:
    """A source-problem solution (set indices, or elements for hitting set)."""
    doc = _header(f"{kind}-solution")
    if kind == "hitting-set":
        doc["hitting_set"] = list(mapped)
        doc["size"] = len(mapped)
    else:
        doc["subfamily"] = list(mapped)
        if kind == "mku":
            doc["value"] = len(frozenset().union(*(src.family[i] for i in mapped)))
        else:
            doc["value"] = len(mapped)
    return doc


# ---------------------------------------------------------------------------
# provenance sidecars


def provenance_to_json(reduction_id: str, art: ReductionArtifact) -> dict:
    return {**_header("provenance"), "reduction": reduction_id,
            "provenance": dict(art.provenance), "parameters": dict(art.parameters)}


def artifact_from_json(instance: ControlInstance, doc: Any, reduction_id: str) -> ReductionArtifact:
    _open(doc, {"provenance"})
    _check_keys(doc, {"schema_version", "kind", "reduction", "provenance", "parameters"},
                {"reduction", "provenance"}, "provenance")
    if doc["reduction"] != reduction_id:
        raise DomainError(f"sidecar belongs to {doc['reduction']!r}, not {reduction_id!r}")
    return ReductionArtifact(instance, dict(doc["provenance"]), dict(doc.get("parameters", {})))
