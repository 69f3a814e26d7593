"""Command-line front end.

Exit codes: 0 = solution / yes / pass, 2 = no solution / no, 1 = error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import documents as docs
from .approx import approval_ccav_approx, approval_ccdv_approx, voiced_ccdc_approx
from .control import Action, ControlInstance, Goal, Rule, is_feasible, measure, parse_problem
from .election import Approval, Ranking, two_stage_winners
from .errors import DomainError, InfeasibleError, NoSolutionError, ResourceError
from .generators import (random_control_instance, random_hitting_set, random_mku, random_msc,
                         random_x3c)
from .oracles import (DEFAULT_NODE_BUDGET, exists_x3c, opt_control, opt_hitting_set, opt_mku, opt_msc,
                      verify_decision, verify_strictness)
from .reductions import REDUCTIONS, find_reduction

EXIT_OK, EXIT_ERROR, EXIT_NO = 0, 1, 2


class CliError(Exception):
    pass


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def _load_instance(path: str):
    return docs.instance_from_json(_load_json(path))


def _load_control(path: str) -> ControlInstance:
    inst = _load_instance(path)
    if not isinstance(inst, ControlInstance):
        raise CliError(f"{path} is not an election-control instance")
    return inst


def _emit(doc: dict, out: str | None = None) -> None:
    text = docs.dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _check_problem(inst: ControlInstance, problem: str) -> None:
    spec = parse_problem(problem)
    kind = Approval if spec.rule is Rule.APPROVAL else Ranking
    voters = list(inst.election.voters) + (list(inst.pool) if inst.spec.action is Action.AV else [])
    for v in voters:
        if not isinstance(v.ballot, kind):
            raise DomainError(f"ballot-kind mismatch: {problem} needs {kind.__name__.lower()} ballots, "
                              f"the instance has {type(v.ballot).__name__.lower()} ballots")
    have = inst.spec
    if (have.rule, have.action, have.goal, have.tie_rule) != (spec.rule, spec.action, spec.goal,
                                                              spec.tie_rule):
        raise CliError(f"spec mismatch: instance is {have.name}, --problem says {problem}")
    if problem.lower().split("-")[1][2:3] == "u" and have.limited:
        raise CliError(f"spec mismatch: {problem} is unlimited but the instance has a budget")


def _pick_algorithm(inst: ControlInstance, name: str | None):
    spec = inst.spec
    if name in (None, "cip-greedy") and spec.rule is Rule.APPROVAL and spec.goal is Goal.CONSTRUCTIVE:
        if spec.action is Action.AV:
            return approval_ccav_approx
        if spec.action is Action.DV:
            return approval_ccdv_approx
    if name in (None, "voiced-ccdc") and spec.action is Action.DC and spec.goal is Goal.CONSTRUCTIVE:
        return lambda instance: voiced_ccdc_approx(spec.rule, instance)
    raise CliError(f"no approximation algorithm {name or ''} for {spec.name}; "
                   f"use the 'oracle' command for an exact answer")


def cmd_solve(args) -> int:
    inst = _load_control(args.instance)
    if args.problem:
        _check_problem(inst, args.problem)
    algorithm = _pick_algorithm(inst, args.algo)
    try:
        result = algorithm(inst)
    except NoSolutionError as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_NO
    _emit(docs.solution_to_json(result.solution, inst.spec.action, result.measure), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    budget = args.node_budget
    if isinstance(inst, ControlInstance):
        res = opt_control(inst, args.size_limit, budget)
        doc = {**docs._header("opt-result"), "problem": inst.spec.name,
               "measure": docs._measure_json(res.measure), "nodes_explored": res.nodes_explored,
               "solution": (docs.solution_to_json(res.solution, inst.spec.action, res.measure)
                            if res.solution is not None else None)}
        _emit(doc)
        return EXIT_OK if res.solution is not None else EXIT_NO
    kind = _source_kind(inst)
    if kind == "msc":
        _emit(docs.source_solution_to_json(kind, inst, opt_msc(inst, budget)))
        return EXIT_OK
    if kind == "mku":
        _emit(docs.source_solution_to_json(kind, inst, opt_mku(inst, budget)[0]))
        return EXIT_OK
    if kind == "hitting-set":
        best = opt_hitting_set(inst, budget)
        yes = best is not None and len(best) <= inst.k
        doc = {**docs._header("hitting-set-decision"), "answer": "yes" if yes else "no",
               "optimum": list(best) if best is not None else None}
        _emit(doc)
        return EXIT_OK if yes else EXIT_NO
    yes = exists_x3c(inst, budget)
    _emit({**docs._header("x3c-decision"), "answer": "yes" if yes else "no"})
    return EXIT_OK if yes else EXIT_NO


def _source_kind(src) -> str:
    for kind, cls in docs.SOURCE_KINDS.items():
        if isinstance(src, cls):
            return kind
    raise CliError("not a source instance")


def _reduction_for(args, src) -> str:
    rid = find_reduction(args.source_kind, args.to)
    if _source_kind(src) != args.source_kind:
        raise CliError(f"--from {args.source_kind} but the source document is {_source_kind(src)}")
    return rid


def cmd_reduce(args) -> int:
    src = _load_instance(args.source)
    rid = _reduction_for(args, src)
    art = REDUCTIONS[rid].forward(src)
    _emit(docs.control_instance_to_json(art.instance), args.out)
    prov = args.provenance or (f"{args.out}.prov.json" if args.out else None)
    if prov:
        _emit(docs.provenance_to_json(rid, art), prov)
    return EXIT_OK


def cmd_mapback(args) -> int:
    src = _load_instance(args.source)
    rid = _reduction_for(args, src)
    inst = _load_control(args.instance)
    art = docs.artifact_from_json(inst, _load_json(args.provenance), rid)
    sol = docs.solution_from_json(_load_json(args.solution), inst)
    if not is_feasible(inst, sol):
        raise CliError("the target solution is not feasible for the reduced instance")
    mapped = REDUCTIONS[rid].backward(src, art, sol)
    _emit(docs.source_solution_to_json(args.source_kind, src, mapped))
    return EXIT_OK


_VERIFY_DEFAULTS = {  # (max universe/ground, max sets)
    "msc-ccav": (5, 5), "msc-ccdv": (5, 5), "mku-ccdc": (4, 4),
    "hs-plurality-dcudc": (4, 4), "hs-condorcet-ccudv": (4, 4), "x3c-condorcet-ccuav": (None, 5),
}


def _random_source(rid: str, rng: random.Random, max_universe: int, max_sets: int, k: int):
    if rid.startswith("msc"):
        return random_msc(rng, rng.randint(1, max_universe), rng.randint(1, max_sets))
    if rid == "mku-ccdc":
        m = rng.randint(2, max(2, max_sets))
        return random_mku(rng, rng.randint(1, max_universe), m, rng.randint(2, m))
    if rid.startswith("hs"):
        ground = rng.randint(1, max_universe)
        return random_hitting_set(rng, ground, rng.randint(1, max_sets), rng.randint(1, ground))
    return random_x3c(rng, k, rng.randint(1, max_sets))


def cmd_verify(args) -> int:
    rid = args.reduction
    red = REDUCTIONS[rid]
    default_u, default_s = _VERIFY_DEFAULTS[rid]
    max_u = args.max_universe or default_u
    max_s = args.max_sets or default_s
    rng = random.Random(args.seed)
    passed = 0
    for trial in range(args.trials):
        src = _random_source(rid, rng, max_u, max_s, args.k)
        if red.strict:
            rep = verify_strictness(rid, src, instance_id=f"trial-{trial}", node_budget=args.node_budget)
            ok = rep.ok and rep.opt_equal
            detail = (f"OPT source={rep.opt_source} target={rep.opt_target}, "
                      f"{rep.solutions_checked} solutions, {len(rep.violations)} violations")
        else:
            chk = verify_decision(rid, src, args.node_budget)
            ok = chk.ok
            detail = (f"source={'yes' if chk.source_yes else 'no'} "
                      f"target={'yes' if chk.target_yes else 'no'}")
        passed += ok
        print(f"trial {trial}: {'pass' if ok else 'FAIL'} ({detail})")
    summary = {"reduction": rid, "trials": args.trials, "passed": passed,
               "failed": args.trials - passed, "seed": args.seed}
    print(json.dumps(summary))
    return EXIT_OK if passed == args.trials else EXIT_NO


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    kind = args.kind
    if kind == "msc":
        inst = random_msc(rng, args.universe, args.sets)
    elif kind == "mku":
        inst = random_mku(rng, args.universe, args.sets, args.k)
    elif kind == "hitting-set":
        inst = random_hitting_set(rng, args.universe, args.sets, args.k)
    elif kind == "x3c":
        inst = random_x3c(rng, args.k, args.sets)
    else:
        if not args.problem:
            raise CliError("gen --kind election-control needs --problem")
        spec = parse_problem(args.problem, args.budget)
        weights = tuple(int(w) for w in args.weights.split(","))
        inst = random_control_instance(rng, spec, args.candidates, args.voters, args.pool, weights)
    _emit(docs.instance_to_json(inst), args.out)
    return EXIT_OK


def cmd_eval_partition(args) -> int:
    inst = _load_control(args.instance)
    if not inst.spec.action.is_partition:
        raise CliError(f"{inst.spec.name} is not a partition problem")
    sol = docs.solution_from_json(_load_json(args.partition), inst)
    spec = inst.spec
    won = two_stage_winners(spec.rule, inst.election, spec.action, spec.tie_rule, (sol.first, sol.second))
    feasible = is_feasible(inst, sol)
    doc = {**docs._header("partition-evaluation"), "problem": spec.name,
           "winners": sorted(won), "feasible": feasible,
           "measure": docs._measure_json(measure(inst, sol))}
    _emit(doc)
    return EXIT_OK if feasible else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="controlapprox",
                                     description="Approximation algorithms, reductions and exact "
                                                 "oracles for electoral control.")
    parser.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET,
                        help="cap on nodes explored by exact searches (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run an approximation algorithm on a control instance")
    p.add_argument("instance")
    p.add_argument("--problem", help="expected problem, e.g. approval-ccav or plurality-ccdc")
    p.add_argument("--algo", choices=["cip-greedy", "voiced-ccdc"])
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="solve a control or source instance exactly by brute force")
    p.add_argument("instance")
    p.add_argument("--size-limit", type=int)
    p.set_defaults(func=cmd_oracle)

    for name, func in (("reduce", cmd_reduce), ("mapback", cmd_mapback)):
        p = sub.add_parser(name, help="build a reduced instance" if name == "reduce"
                           else "map a target solution back to the source problem")
        p.add_argument("--from", dest="source_kind", required=True, choices=sorted(docs.SOURCE_KINDS))
        p.add_argument("--to", required=True, help="target problem, e.g. approval-ccav")
        if name == "reduce":
            p.add_argument("source")
            p.add_argument("-o", "--out")
            p.add_argument("--provenance", help="where to write the provenance sidecar "
                                                "(default: OUT.prov.json when -o is given)")
        else:
            p.add_argument("--source", required=True)
            p.add_argument("--instance", required=True, help="the reduced instance")
            p.add_argument("--provenance", required=True)
            p.add_argument("solution")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="check a reduction on seeded random source instances")
    p.add_argument("--reduction", required=True, choices=sorted(REDUCTIONS))
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-universe", type=int, help="max universe / ground-set size")
    p.add_argument("--max-sets", type=int)
    p.add_argument("--k", type=int, default=3, help="k for X3C instances (default 3)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a seeded random instance")
    p.add_argument("--kind", required=True, choices=["election-control", *docs.SOURCE_KINDS])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--universe", type=int, default=4, help="universe / ground-set size")
    p.add_argument("--sets", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--problem", help="control problem for --kind election-control")
    p.add_argument("--budget", type=int)
    p.add_argument("--candidates", type=int, default=3)
    p.add_argument("--voters", type=int, default=4)
    p.add_argument("--pool", type=int, default=0)
    p.add_argument("--weights", default="1", help="comma-separated weights to draw from")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval-partition", help="evaluate a two-stage election for a given partition")
    p.add_argument("instance")
    p.add_argument("partition", help="control-solution document holding a 'partition'")
    p.set_defaults(func=cmd_eval_partition)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 0) < 0:
        parser.error("--trials must be nonnegative")
    try:
        return args.func(args)
    except (CliError, DomainError, InfeasibleError, ResourceError, NoSolutionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
