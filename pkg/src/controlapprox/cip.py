"""Covering integer programs: minimize ``c.x`` s.t. ``A x >= b``, ``0 <= x <= d``, x integral.

``greedy_solve`` is the truncated greedy for multiset multicover: each step
takes one more unit of the column covering the most residual demand per unit
cost.  Its cost is within ``H(sum(b)) <= 1 + ln(sum(b))`` of optimal.
``exact_solve`` is a depth-first branch and bound used as the reference.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import DomainError, InfeasibleError, ResourceError


@dataclass(frozen=True)
class Cip:
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        A = tuple(tuple(row) for row in self.A)
        object.__setattr__(self, "A", A)
        for name in ("b", "c", "d"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        n = len(self.c)
        if len(self.d) != n or len(self.b) != len(A) or any(len(row) != n for row in A):
            raise DomainError("inconsistent CIP dimensions")
        for row in A:
            _nonneg(row, "A")
        _nonneg(self.b, "b")
        _nonneg(self.d, "d")
        if any(not isinstance(x, int) or x < 1 for x in self.c):
            raise DomainError("costs must be positive integers")

    @property
    def n_rows(self) -> int:
        return len(self.b)

    @property
    def n_cols(self) -> int:
        return len(self.c)

    def coverage(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * xj for a, xj in zip(row, x)) for row in self.A)

    def is_feasible(self, x: Sequence[int]) -> bool:
        if len(x) != self.n_cols or any(xj < 0 or xj > dj for xj, dj in zip(x, self.d)):
            return False
        return all(cov >= bi for cov, bi in zip(self.coverage(x), self.b))

    def cost(self, x: Sequence[int]) -> int:
        return sum(cj * xj for cj, xj in zip(self.c, x))


def _nonneg(values, name):
    if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in values):
        raise DomainError(f"{name} must hold nonnegative integers")


@dataclass(frozen=True)
class CipSolution:
    x: tuple[int, ...]
    cost: int


def _check_feasible(cip: Cip) -> None:
    if not cip.is_feasible(cip.d):
        raise InfeasibleError("demands exceed total coverage even with every variable at its bound")


def greedy_solve(cip: Cip) -> CipSolution:
    _check_feasible(cip)
    x = [0] * cip.n_cols
    residual = list(cip.b)
    while any(residual):
        best, best_cov = -1, 0
        for j in range(cip.n_cols):
            if x[j] >= cip.d[j]:
                continue
            cov = sum(min(row[j], r) for row, r in zip(cip.A, residual))
            # cov/c[j] > best_cov/c[best], compared by cross-multiplication
            if cov > 0 and (best < 0 or cov * cip.c[best] > best_cov * cip.c[j]):
                best, best_cov = j, cov
        # cannot happen after the feasibility check, kept as a guard
        if best < 0:
            raise InfeasibleError("no column covers the residual demand")
        x[best] += 1
        residual = [max(0, r - row[best]) for row, r in zip(cip.A, residual)]
    return CipSolution(tuple(x), cip.cost(x))


def exact_solve(cip: Cip, node_limit: int = 1_000_000) -> CipSolution:
    """Minimum-cost solution; among optima, the lexicographically smallest ``x``."""
    _check_feasible(cip)
    n, m = cip.n_cols, cip.n_rows
    cols = [tuple(cip.A[i][j] for i in range(m)) for j in range(n)]
    # suffix_cap[j][i]: coverage of row i available from columns j.. at their bounds
    suffix_cap = [[0] * m for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        suffix_cap[j] = [suffix_cap[j + 1][i] + cols[j][i] * cip.d[j] for i in range(m)]

    best_cost = cip.cost(cip.d) + 1
    best_x: list[int] | None = None
    x = [0] * n
    nodes = 0

    def search(j: int, residual: list[int], cost: int) -> None:
        nonlocal best_cost, best_x, nodes
        nodes += 1
        if nodes > node_limit:
            raise ResourceError(f"exact CIP search exceeded {node_limit} nodes")
        if cost >= best_cost:
            return
        if not any(residual):
            best_cost, best_x = cost, x[:j] + [0] * (n - j)
            return
        if j == n or any(r > cap for r, cap in zip(residual, suffix_cap[j])):
            return
        col = cols[j]
        for v in range(cip.d[j] + 1):
            x[j] = v
            search(j + 1, [max(0, r - a * v) for r, a in zip(residual, col)], cost + cip.c[j] * v)
        x[j] = 0

    search(0, list(cip.b), 0)
    assert best_x is not None  # feasibility was checked up front
    return CipSolution(tuple(best_x), best_cost)
