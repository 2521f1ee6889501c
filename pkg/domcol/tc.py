"""
Twin-cover solvers.

Both problems enumerate a family of partial colorings that color the
modulator M (and a few cluster vertices), then ask whether one of them
extends to the whole graph within the color budget. DomCol extensions are
list colorings of the cluster graph G - M, CD extensions are disjoint
extensions counted by a covering integer program.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, TypeVar

import networkx as nx

from .errors import InfeasibleError, UsageError
from .graph import (
    Coloring,
    Graph,
    VertexSet,
    cluster_cliques,
    component_masks,
    is_cluster_graph,
    is_twin_cover,
    isolated_vertices,
    iter_bits,
    mask_of,
)
from .ilp import CoveringILP, solve_covering_ilp_solution

log = logging.getLogger(__name__)

K = TypeVar("K", bound=Hashable)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _class_masks(chi: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for v, c in chi.items():
        out[c] = out.get(c, 0) | 1 << v
    return out


@dataclass(frozen=True)
class Provenance:
    # class masks of M; color i is partition[i]
    partition: tuple[int, ...]
    # bit i set: color i is also used outside M
    split: int
    # delta' values of the free modulator vertices (DomCol) or the
    # dominator picked for each color of the split (CD)
    choice: tuple[int, ...] = ()


@dataclass(frozen=True)
class PartialDominatorColoring:
    """
    chi colors the vertex set S; delta maps every vertex of G to a color
    whose (nonempty) class under chi lies in its closed neighbourhood.
    """

    chi: Mapping[int, int]
    delta: tuple[int, ...]
    provenance: Provenance | None = None

    @property
    def colored(self) -> VertexSet:
        return frozenset(self.chi)

    @property
    def used(self) -> frozenset[int]:
        return frozenset(self.chi.values())

    def validate(self, g: Graph, modulator: int) -> None:
        """Raises UsageError if this is not a partial dominator coloring."""
        _check_partial(g, self.chi, modulator)
        if len(self.delta) != g.n:
            raise UsageError(
                f"delta covers {len(self.delta)} of {g.n} vertices"
            )
        classes = _class_masks(self.chi)
        for v, c in enumerate(self.delta):
            cls = classes.get(c, 0)
            if not cls or not g.dominates(v, cls):
                raise UsageError(f"vertex {v} does not dominate class {c}")


@dataclass(frozen=True)
class PartialCDColoring:
    """chi colors the vertex set S; every used class has a dominator in G."""

    chi: Mapping[int, int]
    provenance: Provenance | None = None

    @property
    def colored(self) -> VertexSet:
        return frozenset(self.chi)

    @property
    def used(self) -> frozenset[int]:
        return frozenset(self.chi.values())

    def validate(self, g: Graph, modulator: int) -> None:
        """Raises UsageError if this is not a partial CD coloring."""
        _check_partial(g, self.chi, modulator)
        for c, cls in _class_masks(self.chi).items():
            if not g.common_closed_mask(cls):
                raise UsageError(f"class {c} has no dominator")


def _check_partial(g: Graph, chi: Mapping[int, int], modulator: int) -> None:
    for v in chi:
        g.check_vertex(v)
    colored = mask_of(chi)
    if modulator & ~colored:
        raise UsageError("partial coloring leaves modulator vertices uncolored")
    for v, c in chi.items():
        if any(chi.get(u) == c for u in iter_bits(g.adjacency[v])):
            raise UsageError(f"partial coloring is not proper at vertex {v}")


def _twin_cover_parts(
    g: Graph, m: Iterable[int]
) -> tuple[list[int], int, list[int]]:
    mod = sorted(set(m))
    for v in mod:
        g.check_vertex(v)
    if not is_twin_cover(g, mod):
        raise UsageError("M is not a twin cover")
    modulator = mask_of(mod)
    return mod, modulator, cluster_cliques(g, modulator)


def saturating_matching(
    options: Mapping[K, Iterable[int]]
) -> dict[K, int] | None:
    """
    Assigns each key a distinct value from its options, or None when no
    such assignment exists. Hopcroft-Karp on the key/value bipartite graph.
    """
    if not options:
        return {}
    h = nx.Graph()
    left = [("key", key) for key in options]
    h.add_nodes_from(left)
    for key, values in options.items():
        h.add_edges_from((("key", key), ("value", x)) for x in values)
    matching = nx.bipartite.hopcroft_karp_matching(h, top_nodes=left)
    if any(node not in matching for node in left):
        return None
    return {key: matching[("key", key)][1] for key in options}


def modulator_partitions(
    g: Graph, mod: list[int], dominated: bool = False
) -> Iterator[tuple[int, ...]]:
    """
    Every partition of mod into independent parts, as class masks in
    order of their lowest vertex. With dominated=True each part must also
    lie in some closed neighbourhood.
    """
    parts: list[int] = []

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(mod):
            yield tuple(parts)
            return
        v = mod[i]
        for j in range(len(parts)):
            if g.adjacency[v] & parts[j]:
                continue
            joined = parts[j] | 1 << v
            if dominated and not g.common_closed_mask(joined):
                continue
            parts[j] = joined
            yield from extend(i + 1)
            parts[j] &= ~(1 << v)
        parts.append(1 << v)
        yield from extend(i + 1)
        parts.pop()

    yield from extend(0)


def lift_coloring(n: int, kept: tuple[int, ...], inner: Coloring) -> Coloring:
    """
    Coloring of the original graph from one of the graph induced by kept;
    every removed vertex gets a color of its own.
    """
    colors: list[int | None] = [None] * n
    for i, v in enumerate(kept):
        colors[v] = inner.assignment[i]
    fresh = max(inner.assignment, default=-1) + 1
    for v in range(n):
        if colors[v] is None:
            colors[v] = fresh
            fresh += 1
    return Coloring(tuple(c for c in colors if c is not None))


def list_coloring_cluster(
    h: Graph, lists: Mapping[int, Iterable[int]]
) -> Coloring | None:
    """
    Proper coloring of a cluster graph from the given lists, or None.
    Raises UsageError if h is not a cluster graph or a list is missing.
    """
    if not is_cluster_graph(h):
        raise UsageError("list coloring needs a cluster graph")
    missing = [v for v in range(h.n) if v not in lists]
    if missing:
        raise UsageError(f"no list for vertices {missing}")
    colors = [0] * h.n
    for clique in component_masks(h):
        match = saturating_matching({v: lists[v] for v in iter_bits(clique)})
        if match is None:
            return None
        for v, c in match.items():
            colors[v] = c
    return Coloring(tuple(colors))


# DomCol


def extend_domcol_coloring(
    g: Graph, m: Iterable[int], pdc: PartialDominatorColoring, ell: int
) -> Coloring | None:
    """
    A dominator coloring with at most ell colors extending pdc, or None.
    Raises UsageError if G - M is not a cluster graph or pdc is invalid.
    """
    modulator = mask_of(m)
    cliques = cluster_cliques(g, modulator)
    pdc.validate(g, modulator)
    used = sorted(pdc.used)
    if len(used) > ell:
        return None
    top = max(used, default=-1)
    fresh = list(range(top + 1, top + 1 + ell - len(used)))

    classes = _class_masks(pdc.chi)
    holders: dict[int, int] = {}
    for v, c in enumerate(pdc.delta):
        holders[c] = holders.get(c, 0) | 1 << v
    reach = {c: g.common_closed_mask(holders.get(c, 0)) for c in used}

    lists: dict[int, list[int]] = {}
    for clique in cliques:
        for v in iter_bits(clique):
            if v in pdc.chi:
                lists[v] = [pdc.chi[v]]
                continue
            lists[v] = [
                c
                for c in used
                if reach[c] >> v & 1 and not classes[c] & g.adjacency[v]
            ] + fresh

    cluster = g.full_mask & ~modulator
    h, order = g.induced(iter_bits(cluster))
    inner = list_coloring_cluster(
        h, {i: lists[v] for i, v in enumerate(order)}
    )
    if inner is None:
        return None
    colors = [pdc.chi.get(v, 0) for v in range(g.n)]
    for i, v in enumerate(order):
        colors[v] = inner.assignment[i]
    return Coloring(tuple(colors))


def extend_domcol(
    g: Graph, m: Iterable[int], pdc: PartialDominatorColoring, ell: int
) -> bool:
    return extend_domcol_coloring(g, m, pdc, ell) is not None


def _delta_choices(
    g: Graph,
    free: list[int],
    partition: tuple[int, ...],
    shared: list[int],
    first_fresh: int,
) -> Iterator[tuple[int, ...]]:
    # shared colors a vertex dominates, or fresh labels in restricted growth
    options = [
        [c for c in shared if g.dominates(v, partition[c])] for v in free
    ]
    picked: list[int] = []

    def extend(i: int, fresh: int) -> Iterator[tuple[int, ...]]:
        if i == len(free):
            yield tuple(picked)
            return
        for c in options[i]:
            picked.append(c)
            yield from extend(i + 1, fresh)
            picked.pop()
        for f in range(fresh + 1):
            picked.append(first_fresh + f)
            yield from extend(i + 1, max(fresh, f + 1))
            picked.pop()

    yield from extend(0, 0)


def _domcol_members(
    g: Graph,
    mod: list[int],
    cliques: list[int],
    partition: tuple[int, ...],
    split: int,
) -> Iterator[PartialDominatorColoring]:
    kappa = len(partition)
    chi = {v: c for c, part in enumerate(partition) for v in iter_bits(part)}
    delta = [-1] * g.n
    modulator_only = {
        c: partition[c] for c in range(kappa) if not split >> c & 1
    }

    # cliques dominating no modulator-only class get a unique color
    anchored = dict(modulator_only)
    next_color = kappa
    for clique in cliques:
        nq = g.closed_mask(_lowest(clique))
        color = next(
            (c for c, cls in modulator_only.items() if not cls & ~nq), None
        )
        if color is None:
            u = _lowest(clique)
            chi[u] = color = next_color
            anchored[color] = 1 << u
            next_color += 1
        for v in iter_bits(clique):
            delta[v] = color

    free = []
    for v in mod:
        color = next(
            (c for c in sorted(anchored) if g.dominates(v, anchored[c])), None
        )
        if color is None:
            free.append(v)
        else:
            delta[v] = color

    shared = [c for c in range(kappa) if split >> c & 1]
    cluster = g.full_mask & ~mask_of(mod)
    uncolored = cluster & ~mask_of(chi)
    for choice in _delta_choices(g, free, partition, shared, next_color):
        fresh_holders: dict[int, int] = {}
        for v, c in zip(free, choice):
            if c >= next_color:
                fresh_holders[c] = fresh_holders.get(c, 0) | 1 << v
        # every fresh color needs one cluster vertex its holders dominate
        match = saturating_matching(
            {
                c: list(iter_bits(uncolored & g.common_closed_mask(holders)))
                for c, holders in fresh_holders.items()
            }
        )
        if match is None:
            continue
        member_delta = list(delta)
        for v, c in zip(free, choice):
            member_delta[v] = c
        member_chi = dict(chi)
        member_chi.update({v: c for c, v in match.items()})
        yield PartialDominatorColoring(
            member_chi,
            tuple(member_delta),
            Provenance(partition, split, choice),
        )


def gamma_domcol(
    g: Graph, m: Iterable[int]
) -> Iterator[PartialDominatorColoring]:
    """
    Partial dominator colorings such that G has a dominator coloring with
    at most l colors iff one of them extends within l colors.
    Raises UsageError if M is not a twin cover.
    """
    mod, _, cliques = _twin_cover_parts(g, m)
    count = 0
    for partition in modulator_partitions(g, mod):
        for split in range(1 << len(partition)):
            for pdc in _domcol_members(g, mod, cliques, partition, split):
                count += 1
                yield pdc
    log.debug("DomCol family has %d members for k=%d", count, len(mod))


def domcol_tc_coloring(g: Graph, m: Iterable[int], ell: int) -> Coloring | None:
    """
    A dominator coloring with at most ell colors, or None.
    Raises UsageError if M is not a twin cover.
    """
    mod, _, _ = _twin_cover_parts(g, m)
    lonely = isolated_vertices(g)
    reduced, kept = g.remove_vertices(lonely)
    ell -= len(lonely)
    if ell < 0:
        return None
    index = {v: i for i, v in enumerate(kept)}
    inner_m = [index[v] for v in mod if v in index]
    if lonely:
        log.debug("dropped %d isolated vertices", len(lonely))

    for pdc in gamma_domcol(reduced, inner_m):
        inner = extend_domcol_coloring(reduced, inner_m, pdc, ell)
        if inner is not None:
            log.debug("extension found from %s", pdc.provenance)
            return lift_coloring(g.n, kept, inner)
    return None


def domcol_tc(g: Graph, m: Iterable[int], ell: int) -> bool:
    """True iff G has a dominator coloring with at most ell colors."""
    return domcol_tc_coloring(g, m, ell) is not None


# CD coloring


class ReducedInstance(NamedTuple):
    graph: Graph
    ell: int
    modulator: tuple[int, ...]
    # original id of each vertex of graph
    kept: tuple[int, ...]


def remove_isolated_cliques(
    g: Graph, ell: int, m: Iterable[int] = ()
) -> ReducedInstance:
    """
    Drops every component of G that is a clique avoiding M; each of its
    vertices needs a color of its own, so ell shrinks by its size.
    """
    mod = sorted(set(m))
    for v in mod:
        g.check_vertex(v)
    modulator = mask_of(mod)
    removed = 0
    for comp in component_masks(g):
        if comp & modulator:
            continue
        if all(not comp & ~g.closed_mask(v) for v in iter_bits(comp)):
            removed |= comp
    if not removed:
        return ReducedInstance(g, ell, tuple(mod), tuple(range(g.n)))
    reduced, kept = g.remove_vertices(iter_bits(removed))
    index = {v: i for i, v in enumerate(kept)}
    log.debug("removed %d vertices in isolated cliques", removed.bit_count())
    return ReducedInstance(
        reduced,
        ell - removed.bit_count(),
        tuple(index[v] for v in mod),
        kept,
    )


@dataclass(frozen=True)
class DominatorColumn:
    # vertex dominating every class built from this column
    vertex: int
    # uncolored candidates such a class may take
    reach: int


def build_covering_ilp(
    cliques: Iterable[int], uncolored: int, columns: list[DominatorColumn]
) -> CoveringILP:
    """
    One row per clique and nonempty set of its uncolored vertex groups,
    a group collecting vertices reached by the same columns. The demand
    is the number of vertices in those groups.
    """
    rows: list[tuple[int, ...]] = []
    demand: list[int] = []
    for clique in cliques:
        groups: dict[frozenset[int], int] = {}
        for v in iter_bits(clique & uncolored):
            sig = frozenset(
                j for j, col in enumerate(columns) if col.reach >> v & 1
            )
            groups[sig] = groups.get(sig, 0) | 1 << v
        items = list(groups.items())
        for sub in range(1, 1 << len(items)):
            picked = [items[i] for i in iter_bits(sub)]
            cols = frozenset().union(*(sig for sig, _ in picked))
            rows.append(tuple(int(j in cols) for j in range(len(columns))))
            demand.append(sum(mask.bit_count() for _, mask in picked))
    return CoveringILP(tuple(rows), tuple(demand))


def disjoint_extension(
    g: Graph,
    cliques: list[int],
    chi: Mapping[int, int],
    columns: list[DominatorColumn],
    ell: int,
) -> Coloring | None:
    """
    Colors every uncolored cluster vertex with new colors, each new class
    inside the reach of one column, using at most ell colors overall.
    """
    used = set(chi.values())
    budget = ell - len(used)
    if budget < 0:
        return None
    uncolored = mask_of(v for clique in cliques for v in iter_bits(clique))
    uncolored &= ~mask_of(chi)
    ilp = build_covering_ilp(cliques, uncolored, columns)
    try:
        solution = solve_covering_ilp_solution(ilp, bound=budget)
    except InfeasibleError:
        return None
    if solution is None:
        return None

    fresh: list[tuple[int, int]] = []
    color = max(used, default=-1) + 1
    for col, count in zip(columns, solution.x):
        for _ in range(count):
            fresh.append((color, col.reach))
            color += 1

    colors = dict(chi)
    for clique in cliques:
        left = clique & uncolored
        match = saturating_matching(
            {
                v: [c for c, reach in fresh if reach >> v & 1]
                for v in iter_bits(left)
            }
        )
        # every row of the program is a Hall condition of this matching
        assert match is not None
        colors.update(match)
    return Coloring(tuple(colors[v] for v in range(g.n)))


def twin_cover_columns(
    g: Graph, mod: Iterable[int], cluster: int
) -> list[DominatorColumn]:
    return [DominatorColumn(u, g.closed_mask(u) & cluster) for u in mod]


def extend_cdcol_disjoint_coloring(
    g: Graph, m: Iterable[int], pcd: PartialCDColoring, ell: int
) -> Coloring | None:
    """
    A CD coloring with at most ell colors that extends pcd and whose new
    classes avoid its colors, or None.
    Raises UsageError if G - M is not a cluster graph or pcd is invalid.
    """
    mod = sorted(set(m))
    modulator = mask_of(mod)
    cliques = cluster_cliques(g, modulator)
    pcd.validate(g, modulator)
    cluster = g.full_mask & ~modulator
    columns = twin_cover_columns(g, mod, cluster)
    return disjoint_extension(g, cliques, pcd.chi, columns, ell)


def extend_cdcol_disjoint(
    g: Graph, m: Iterable[int], pcd: PartialCDColoring, ell: int
) -> bool:
    return extend_cdcol_disjoint_coloring(g, m, pcd, ell) is not None


def gamma_cdcol(g: Graph, m: Iterable[int]) -> Iterator[PartialCDColoring]:
    """
    Partial CD colorings of M plus, for every color shared with the
    cluster, one vertex in each clique next to its dominator and away
    from its class. Expects no isolated cliques.
    Raises UsageError if M is not a twin cover.
    """
    mod, _, cliques = _twin_cover_parts(g, m)
    seen: set[tuple[tuple[int, int], ...]] = set()
    for partition in modulator_partitions(g, mod, dominated=True):
        base = {
            v: c for c, part in enumerate(partition) for v in iter_bits(part)
        }
        for split in range(1 << len(partition)):
            shared = [c for c in range(len(partition)) if split >> c & 1]
            options = [
                [u for u in mod if g.dominates(u, partition[c])] for c in shared
            ]
            for choice in product(*options):
                chi = dict(base)
                for c, d in zip(shared, choice):
                    for clique in cliques:
                        nq = g.closed_mask(_lowest(clique))
                        if not nq >> d & 1 or nq & partition[c]:
                            continue
                        left = clique & ~mask_of(chi)
                        if left:
                            chi[_lowest(left)] = c
                key = tuple(sorted(chi.items()))
                if key in seen:
                    continue
                seen.add(key)
                yield PartialCDColoring(
                    chi, Provenance(partition, split, tuple(choice))
                )
    log.debug("CD family has %d members for k=%d", len(seen), len(mod))


def cdcol_tc_coloring(g: Graph, m: Iterable[int], ell: int) -> Coloring | None:
    """
    A CD coloring with at most ell colors, or None.
    Raises UsageError if M is not a twin cover.
    """
    _twin_cover_parts(g, m)
    reduced = remove_isolated_cliques(g, ell, m)
    if reduced.ell < 0:
        return None
    for pcd in gamma_cdcol(reduced.graph, reduced.modulator):
        inner = extend_cdcol_disjoint_coloring(
            reduced.graph, reduced.modulator, pcd, reduced.ell
        )
        if inner is not None:
            log.debug("disjoint extension found from %s", pcd.provenance)
            return lift_coloring(g.n, reduced.kept, inner)
    return None


def cdcol_tc(g: Graph, m: Iterable[int], ell: int) -> bool:
    """True iff G has a CD coloring with at most ell colors."""
    return cdcol_tc_coloring(g, m, ell) is not None
