"""
Brute-force ground truth for tiny graphs.

Colorings are enumerated up to color renaming as restricted-growth
strings: vertex i takes a color at most one above the largest color used
by vertices 0..i-1. A vertex joining a class it has an edge into is
rejected on the spot, so only proper partial colorings are extended.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping

from .config import Guards
from .const import Problem
from .errors import UsageError
from .graph import Coloring, DominatorWitness, Graph, iter_bits, validate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleAnswer:
    optimum: int
    coloring: Coloring
    witness: DominatorWitness


def proper_colorings(g: Graph, max_colors: int) -> Iterator[list[int]]:
    """
    Yields class bitmasks of every proper coloring with at most
    max_colors classes, each partition of V exactly once.
    """
    classes: list[int] = []

    def extend(v: int) -> Iterator[list[int]]:
        if v == g.n:
            yield classes
            return
        nbrs = g.adjacency[v]
        for i in range(len(classes)):
            if not classes[i] & nbrs:
                classes[i] |= 1 << v
                yield from extend(v + 1)
                classes[i] &= ~(1 << v)
        if len(classes) < max_colors:
            classes.append(1 << v)
            yield from extend(v + 1)
            classes.pop()

    yield from extend(0)


def _domcol_ok(g: Graph, classes: list[int]) -> bool:
    return all(
        any(g.dominates(v, cls) for cls in classes) for v in range(g.n)
    )


def _cdcol_ok(g: Graph, classes: list[int]) -> bool:
    return all(g.common_closed_mask(cls) for cls in classes)


_ACCEPT: dict[Problem, Callable[[Graph, list[int]], bool]] = {
    Problem.DOMCOL: _domcol_ok,
    Problem.CDCOL: _cdcol_ok,
}


def _to_coloring(n: int, classes: list[int]) -> Coloring:
    colors = [0] * n
    for c, cls in enumerate(classes):
        for v in iter_bits(cls):
            colors[v] = c
    return Coloring(tuple(colors))


def search_within(
    g: Graph, problem: Problem, ell: int
) -> tuple[Coloring, DominatorWitness] | None:
    accept = _ACCEPT[problem]
    for classes in proper_colorings(g, ell):
        if accept(g, classes):
            coloring = _to_coloring(g.n, classes)
            witness = validate(g, coloring, problem)
            assert witness is not None
            return coloring, witness
    return None


def _optimum(g: Graph, problem: Problem, guards: Guards) -> OracleAnswer:
    guards.check("oracle_max_n", g.n, "oracle graph")
    for ell in range(g.n + 1):
        found = search_within(g, problem, ell)
        if found is not None:
            log.debug("%s optimum %d for n=%d", problem.value, ell, g.n)
            return OracleAnswer(ell, *found)
    raise AssertionError("n colors always suffice")


def domcol_optimum(g: Graph, guards: Guards | None = None) -> OracleAnswer:
    return _optimum(g, Problem.DOMCOL, guards or Guards())


def cdcol_optimum(g: Graph, guards: Guards | None = None) -> OracleAnswer:
    return _optimum(g, Problem.CDCOL, guards or Guards())


def optimum(
    g: Graph, problem: Problem, guards: Guards | None = None
) -> OracleAnswer:
    return _optimum(g, problem, guards or Guards())


def domcol_within(
    g: Graph, ell: int, guards: Guards | None = None
) -> Coloring | None:
    """A dominator coloring with at most ell colors, or None."""
    (guards or Guards()).check("bounded_oracle_max_n", g.n, "oracle graph")
    found = search_within(g, Problem.DOMCOL, ell)
    return None if found is None else found[0]


def cdcol_within(
    g: Graph, ell: int, guards: Guards | None = None
) -> Coloring | None:
    """A CD coloring with at most ell colors, or None."""
    (guards or Guards()).check("bounded_oracle_max_n", g.n, "oracle graph")
    found = search_within(g, Problem.CDCOL, ell)
    return None if found is None else found[0]


def chromatic_number(g: Graph, guards: Guards | None = None) -> int:
    (guards or Guards()).check("oracle_max_n", g.n, "oracle graph")
    for ell in range(g.n + 1):
        if next(proper_colorings(g, ell), None) is not None:
            return ell
    raise AssertionError("n colors always suffice")


def list_coloring_oracle(
    g: Graph,
    lists: Mapping[int, Iterable[int]],
    guards: Guards | None = None,
) -> Coloring | None:
    """
    Any proper coloring with every vertex colored from its list, or None.
    Raises UsageError if a vertex has no list.
    """
    (guards or Guards()).check("oracle_max_n", g.n, "oracle graph")
    missing = [v for v in range(g.n) if v not in lists]
    if missing:
        raise UsageError(f"no list for vertices {missing}")
    options = [sorted(set(lists[v])) for v in range(g.n)]
    colors = [0] * g.n

    def assign(v: int) -> bool:
        if v == g.n:
            return True
        for c in options[v]:
            if all(
                colors[u] != c for u in range(v) if g.has_edge(u, v)
            ):
                colors[v] = c
                if assign(v + 1):
                    return True
        return False

    return Coloring(tuple(colors)) if assign(0) else None


def hitting_set_oracle(
    universe: int,
    family: Iterable[Iterable[int]],
    kappa: int,
    guards: Guards | None = None,
) -> bool:
    """
    True iff some set of at most kappa elements of range(universe)
    meets every member of the family.
    """
    (guards or Guards()).check(
        "hitting_set_max_universe", universe, "hitting set universe"
    )
    sets = [frozenset(f) for f in family]
    for f in sets:
        if any(not 0 <= x < universe for x in f):
            raise UsageError(f"family member {sorted(f)} leaves the universe")
    if kappa < 0:
        return False
    for size in range(min(kappa, universe) + 1):
        for pick in combinations(range(universe), size):
            chosen = set(pick)
            if all(f & chosen for f in sets):
                return True
    return False
