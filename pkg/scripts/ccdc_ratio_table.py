#!/usr/bin/env python3
"""Empirical ratio of the delete-all-rivals CCDC algorithm against the exact optimum, by m."""

from __future__ import annotations

import argparse
import random
import statistics
from dataclasses import dataclass

from controlapprox.approx import voiced_ccdc_approx
from controlapprox.control import ControlSpec, performance_ratio
from controlapprox.election import Action, Rule
from controlapprox.generators import random_control_instance
from controlapprox.oracles import opt_control


@dataclass
class RatioConfig:
    max_candidates: int = 6
    voters: int = 7
    trials: int = 200
    weights: tuple[int, ...] = (1, 3)
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-candidates", type=int, default=RatioConfig.max_candidates)
    ap.add_argument("--voters", type=int, default=RatioConfig.voters)
    ap.add_argument("--trials", type=int, default=RatioConfig.trials)
    ap.add_argument("--seed", type=int, default=RatioConfig.seed)
    args = ap.parse_args()
    cfg = RatioConfig(args.max_candidates, args.voters, args.trials, seed=args.seed)

    print(f"{'rule':<10} {'m':>2} {'mean R':>7} {'max R':>6} {'R=m':>5}")
    for rule in (Rule.PLURALITY, Rule.APPROVAL, Rule.CONDORCET):
        spec = ControlSpec(rule, Action.DC)
        for m in range(2, cfg.max_candidates + 1):
            rng = random.Random(f"{cfg.seed}:{rule.value}:{m}")
            ratios = []
            for _ in range(cfg.trials):
                inst = random_control_instance(rng, spec, m, rng.randint(1, cfg.voters), 0, cfg.weights)
                got = voiced_ccdc_approx(rule, inst).measure
                ratios.append(performance_ratio(got, opt_control(inst).measure))
            hits = sum(r == m for r in ratios)
            print(f"{rule.value:<10} {m:>2} {float(statistics.mean(ratios)):>7.3f} "
                  f"{float(max(ratios)):>6.2f} {hits:>5}")


if __name__ == "__main__":
    main()
