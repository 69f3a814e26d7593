#!/usr/bin/env python3
"""Greedy vs exact CIP cost, and how close greedy gets to the 1 + ln(sum b) bound."""

from __future__ import annotations

import argparse
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from controlapprox.cip import exact_solve, greedy_solve
from controlapprox.errors import InfeasibleError
from controlapprox.generators import random_cip


@dataclass
class CipConfig:
    trials: int = 2000
    max_rows: int = 6
    max_cols: int = 6
    max_entry: int = 3
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(CipConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = CipConfig(**vars(ap.parse_args()))

    rng = random.Random(cfg.seed)
    hist = Counter()
    infeasible = 0
    slack = []
    for _ in range(cfg.trials):
        cip = random_cip(rng, cfg.max_rows, cfg.max_cols, cfg.max_entry)
        try:
            opt = exact_solve(cip).cost
        except InfeasibleError:
            infeasible += 1
            continue
        got = greedy_solve(cip).cost
        if opt:
            hist[Fraction(got, opt)] += 1
            slack.append(got / ((1 + math.log(sum(cip.b))) * opt))
        else:
            hist[Fraction(1)] += 1
    print(f"{cfg.trials} CIPs, {infeasible} infeasible")
    for r in sorted(hist):
        print(f"  greedy/exact = {str(r):>5} ({float(r):.3f}): {hist[r]}")
    if slack:
        print(f"largest fraction of the log bound used: {max(slack):.3f}")


if __name__ == "__main__":
    main()
