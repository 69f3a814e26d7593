"""Approximation algorithms, hardness gadgets and exact oracles for electoral control."""

from .approx import (ApproxResult, approval_ccav_approx, approval_ccdv_approx, build_ccav_cip,
                     build_ccdv_cip, voiced_ccdc_approx)
from .cip import Cip, CipSolution, exact_solve, greedy_solve
from .control import (INFEASIBLE, AddSet, ControlInstance, ControlSpec, DeleteSet, Goal, Partition,
                      is_feasible, measure, parse_problem, performance_ratio)
from .election import (Action, Approval, Election, Ranking, Rule, TieRule, Voter, condorcet_winner,
                       two_stage_winners, winners)
from .errors import (BallotKindError, DomainError, InfeasibleError, NoSolutionError,
                     PreconditionError, ResourceError)

__version__ = "0.1.0"
