"""
Graph constructions relating the coloring problems to others.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from .errors import UsageError
from .graph import Graph, VertexSet

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HittingSetInstance:
    """Family of subsets of range(universe) and a budget kappa."""

    universe: int
    family: tuple[frozenset[int], ...]
    kappa: int

    def __post_init__(self) -> None:
        if self.universe < 0:
            raise UsageError("universe size must be nonnegative")
        for member in self.family:
            if any(not 0 <= x < self.universe for x in member):
                raise UsageError(
                    f"family member {sorted(member)} leaves the universe"
                )

    @classmethod
    def build(
        cls, universe: int, family: Iterable[Iterable[int]], kappa: int
    ) -> HittingSetInstance:
        return cls(universe, tuple(frozenset(f) for f in family), kappa)


def add_universal_vertex(g: Graph) -> Graph:
    """G plus a new vertex n adjacent to every vertex of G."""
    edges = g.edges() + [(v, g.n) for v in range(g.n)]
    names = None if g.names is None else (*g.names, "universal")
    return Graph.from_edges(g.n + 1, edges, names)


def hitting_set_to_domcol(
    hs: HittingSetInstance,
) -> tuple[Graph, int, VertexSet]:
    """
    DomCol instance (G, n + 2) that is a yes instance iff the family has a
    hitting set of size at most kappa, with a cluster vertex deletion set.

    Vertex layout: Q1 (one vertex per element), Q2 (n - kappa vertices),
    m1, m2, then one vertex per distinct family member.
    Raises UsageError if kappa > n.
    """
    n = hs.universe
    if hs.kappa > n:
        raise UsageError(f"kappa={hs.kappa} exceeds universe size {n}")
    if hs.kappa < 0:
        raise UsageError("kappa must be nonnegative")

    family: list[frozenset[int]] = []
    for member in hs.family:
        if member not in family:
            family.append(member)

    q1 = list(range(n))
    q2 = list(range(n, 2 * n - hs.kappa))
    m1 = len(q1) + len(q2)
    m2 = m1 + 1
    first_f = m2 + 1
    size = first_f + len(family)

    edges: list[tuple[int, int]] = []
    for block in (q1, q2):
        edges.extend(
            (u, v) for i, u in enumerate(block) for v in block[i + 1 :]
        )
    edges.append((m1, m2))
    for special in (m1, m2):
        edges.extend((special, v) for v in q1 + q2)
    for i, member in enumerate(family):
        edges.extend((first_f + i, q1[x]) for x in sorted(member))

    g = Graph.from_edges(size, edges)
    cvd_set = frozenset([m1, m2, *range(first_f, size)])
    log.debug(
        "hitting set n=%d |F|=%d kappa=%d -> %d vertices",
        n,
        len(family),
        hs.kappa,
        size,
    )
    return g, n + 2, cvd_set
