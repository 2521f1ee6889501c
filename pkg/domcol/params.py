"""
Structural parameters: minimum clique modulator, CVD set and twin cover.

All three are hitting-set problems over small obstructions (a non-edge,
an induced P3, an edge between non-twins) and are found by bounded
branching. Every branch leaf is a solution and every solution contains
a leaf, so the minimum-size leaves are exactly the minimum solutions;
the lexicographically smallest of them is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable

from .const import ParamKind
from .graph import Graph, VertexSet, iter_bits, members

log = logging.getLogger(__name__)

# an obstruction finder maps the set of deleted vertices to a tuple of
# vertices (one of which must be deleted) or None when none is left
ObstructionFinder = Callable[[int], "tuple[int, ...] | None"]


@dataclass(frozen=True)
class ParamResult:
    kind: ParamKind
    set: VertexSet

    @property
    def k(self) -> int:
        return len(self.set)

    def to_dict(self) -> dict[str, Any]:
        """Size and members, with 1-based vertex ids."""
        return {"k": self.k, "set": sorted(v + 1 for v in self.set)}


def _min_hitting_leaf(find: ObstructionFinder, budget: int) -> int | None:
    best_size: int | None = None
    best: list[int] = []

    def branch(deleted: int, size: int) -> None:
        nonlocal best_size
        if best_size is not None and size > best_size:
            return
        obstruction = find(deleted)
        if obstruction is None:
            if best_size is None or size < best_size:
                best_size = size
                best.clear()
            best.append(deleted)
            return
        if size == budget:
            return
        for v in obstruction:
            branch(deleted | 1 << v, size + 1)

    branch(0, 0)
    if best_size is None:
        return None
    # lexicographic order on sorted vertex tuples
    return min(best, key=lambda m: sorted(iter_bits(m)))


def _non_edge_finder(g: Graph) -> ObstructionFinder:
    def find(deleted: int) -> tuple[int, ...] | None:
        rest = g.full_mask & ~deleted
        for u in iter_bits(rest):
            missing = rest & ~g.closed_mask(u)
            if missing:
                v = (missing & -missing).bit_length() - 1
                return (u, v)
        return None

    return find


def _induced_p3_finder(g: Graph) -> ObstructionFinder:
    def find(deleted: int) -> tuple[int, ...] | None:
        rest = g.full_mask & ~deleted
        for b in iter_bits(rest):
            nbrs = list(iter_bits(g.adjacency[b] & rest))
            for i, a in enumerate(nbrs):
                for c in nbrs[i + 1 :]:
                    if not g.has_edge(a, c):
                        return (a, b, c)
        return None

    return find


def _non_twin_edge_finder(g: Graph) -> ObstructionFinder:
    # twin cover edges are judged on N[.] in G itself, not in G - M
    bad = [
        (u, v) for u, v in g.edges() if g.closed_mask(u) != g.closed_mask(v)
    ]

    def find(deleted: int) -> tuple[int, ...] | None:
        for u, v in bad:
            if not (deleted >> u & 1 or deleted >> v & 1):
                return (u, v)
        return None

    return find


_FINDERS = {
    ParamKind.CLIQUE_MODULATOR: _non_edge_finder,
    ParamKind.CVD_SET: _induced_p3_finder,
    ParamKind.TWIN_COVER: _non_twin_edge_finder,
}


def find_param(
    g: Graph, kind: ParamKind, budget: int | None = None
) -> ParamResult | None:
    """
    Returns a minimum set of the given kind with size <= budget,
    or None if there is none. budget defaults to n.
    """
    limit = g.n if budget is None else budget
    if limit < 0:
        return None
    mask = _min_hitting_leaf(_FINDERS[kind](g), limit)
    if mask is None:
        log.debug("no %s within budget %d", kind.value, limit)
        return None
    result = ParamResult(kind, members(mask))
    log.debug("%s: k=%d %s", kind.value, result.k, sorted(result.set))
    return result


def find_clique_modulator(
    g: Graph, budget: int | None = None
) -> ParamResult | None:
    return find_param(g, ParamKind.CLIQUE_MODULATOR, budget)


def find_cvd_set(g: Graph, budget: int | None = None) -> ParamResult | None:
    return find_param(g, ParamKind.CVD_SET, budget)


def find_twin_cover(g: Graph, budget: int | None = None) -> ParamResult | None:
    return find_param(g, ParamKind.TWIN_COVER, budget)


def find_vertex_cover(g: Graph, budget: int | None = None) -> VertexSet | None:
    """Minimum vertex cover, used by the vertex-cover shortcuts."""
    edges = g.edges()

    def find(deleted: int) -> tuple[int, ...] | None:
        for u, v in edges:
            if not (deleted >> u & 1 or deleted >> v & 1):
                return (u, v)
        return None

    mask = _min_hitting_leaf(find, g.n if budget is None else budget)
    return None if mask is None else members(mask)


def all_params(g: Graph) -> dict[ParamKind, ParamResult]:
    out = {}
    for kind in ParamKind:
        result = find_param(g, kind)
        assert result is not None  # budget n always succeeds
        out[kind] = result
    return out