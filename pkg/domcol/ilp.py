"""
Covering integer programs: minimize 1.x subject to Ax >= b, x >= 0 integer,
A a 0/1 matrix. Solved exactly by depth-first branch and bound, which is
plenty for the handful of variables the extension step produces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .errors import InfeasibleError, UsageError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoveringILP:
    a: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise UsageError(f"{len(self.a)} rows but {len(self.b)} demands")
        widths = {len(row) for row in self.a}
        if len(widths) > 1:
            raise UsageError("rows of A differ in length")
        if any(x not in (0, 1) for row in self.a for x in row):
            raise UsageError("A must be a 0/1 matrix")

    @classmethod
    def from_lists(
        cls, a: Sequence[Sequence[int]], b: Sequence[int]
    ) -> CoveringILP:
        return cls(tuple(tuple(row) for row in a), tuple(b))

    @property
    def num_vars(self) -> int:
        return len(self.a[0]) if self.a else 0


@dataclass(frozen=True)
class ILPSolution:
    value: int
    x: tuple[int, ...]


def solve_covering_ilp_solution(
    ilp: CoveringILP, bound: int | None = None
) -> ILPSolution | None:
    """
    Optimal solution, or None when no solution has value <= bound.
    Raises InfeasibleError if some positive demand has an all-zero row.
    """
    k = ilp.num_vars
    rows = [
        ([j for j in range(k) if row[j]], demand)
        for row, demand in zip(ilp.a, ilp.b)
        if demand > 0
    ]
    for cols, demand in rows:
        if not cols:
            raise InfeasibleError(f"demand {demand} on an all-zero row")
    if not rows:
        return ILPSolution(0, (0,) * k)

    # rows that mention variable j, and the last variable each row sees
    touching = [
        [i for i, (cols, _) in enumerate(rows) if j in cols] for j in range(k)
    ]
    last = [max(cols) for cols, _ in rows]
    cap = max(d for _, d in rows)

    best_value = cap * k + 1 if bound is None else bound + 1
    best_x: list[int] | None = None
    deficit = [d for _, d in rows]
    x = [0] * k

    def lower_bound(j: int) -> int | None:
        lb = 0
        for i, d in enumerate(deficit):
            if d > 0:
                if last[i] < j:
                    return None
                lb = max(lb, d)
        return lb

    def branch(j: int, used: int) -> None:
        nonlocal best_value, best_x
        lb = lower_bound(j)
        if lb is None or used + lb >= best_value:
            return
        if lb == 0:
            best_value, best_x = used, x.copy()
            return
        if j == k:
            return
        # rows already met by earlier variables leave only x_j = 0
        top = max(0, max((deficit[i] for i in touching[j]), default=0))
        for value in range(top, -1, -1):
            x[j] = value
            for i in touching[j]:
                deficit[i] -= value
            branch(j + 1, used + value)
            for i in touching[j]:
                deficit[i] += value
        x[j] = 0

    branch(0, 0)
    if best_x is None:
        return None
    log.debug("covering ILP optimum %d at %s", best_value, best_x)
    return ILPSolution(best_value, tuple(best_x))


def solve_covering_ilp(ilp: CoveringILP) -> int:
    """
    Exact optimum of the covering program.
    Raises InfeasibleError if a positive demand cannot be met.
    """
    solution = solve_covering_ilp_solution(ilp)
    assert solution is not None  # a feasible program always has an optimum
    return solution.value
