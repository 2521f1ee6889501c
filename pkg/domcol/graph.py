"""
Graph core: an immutable simple undirected graph, colorings and the
validators for dominator and class domination colorings.

Vertices are dense ids 0..n-1. Adjacency is stored as one Python int
bitmask per vertex (open neighbourhood), so vertex sets inside the
solvers are plain ints; public functions take and return frozensets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .const import Problem
from .errors import UsageError

log = logging.getLogger(__name__)

VertexSet = frozenset[int]


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> VertexSet:
    return frozenset(iter_bits(mask))


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[int, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise UsageError(f"vertex count must be >= 0, got {self.n}")
        if len(self.adjacency) != self.n:
            raise UsageError(
                f"expected {self.n} adjacency rows, got {len(self.adjacency)}"
            )
        if self.names is not None and len(self.names) != self.n:
            raise UsageError("names must label every vertex")

        full = (1 << self.n) - 1
        for v, nbrs in enumerate(self.adjacency):
            if nbrs & ~full:
                raise UsageError(f"vertex {v} has a neighbour out of range")
            if nbrs >> v & 1:
                raise UsageError(f"self-loop on vertex {v}")
            for u in iter_bits(nbrs):
                if not self.adjacency[u] >> v & 1:
                    raise UsageError(f"edge ({v}, {u}) is not symmetric")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        names: Sequence[str] | None = None,
    ) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise UsageError(f"self-loop on vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), None if names is None else tuple(names))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.n)
            for v in iter_bits(self.adjacency[u])
            if u < v
        ]

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise UsageError(f"vertex {v} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def closed_mask(self, v: int) -> int:
        return self.adjacency[v] | 1 << v

    def common_closed_mask(self, vertices: int) -> int:
        """Intersection of N[v] over the given mask; all of V for 0."""
        common = self.full_mask
        for v in iter_bits(vertices):
            common &= self.closed_mask(v)
        return common

    def is_independent_mask(self, mask: int) -> bool:
        return all(not self.adjacency[v] & mask for v in iter_bits(mask))

    def dominates(self, v: int, mask: int) -> bool:
        return not mask & ~self.closed_mask(v)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """
        Returns the induced subgraph relabelled in increasing id order,
        together with the original id of each new vertex.
        """
        order = tuple(sorted(set(vertices)))
        for v in order:
            self.check_vertex(v)
        index = {v: i for i, v in enumerate(order)}
        keep = mask_of(order)
        adj = [
            mask_of(index[u] for u in iter_bits(self.adjacency[v] & keep))
            for v in order
        ]
        names = (
            None if self.names is None else tuple(self.names[v] for v in order)
        )
        return Graph(len(order), tuple(adj), names), order

    def remove_vertices(
        self, vertices: Iterable[int]
    ) -> tuple[Graph, tuple[int, ...]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(
            self.n,
            tuple(full & ~self.closed_mask(v) for v in range(self.n)),
            self.names,
        )

    @classmethod
    def from_networkx(cls, h: nx.Graph) -> Graph:
        """Relabels the nodes of h to 0..n-1 in node order."""
        index = {v: i for i, v in enumerate(h.nodes)}
        return cls.from_edges(
            len(index), ((index[u], index[v]) for u, v in h.edges())
        )

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]

    @property
    def num_colors(self) -> int:
        return len(set(self.assignment))

    def classes(self) -> dict[int, int]:
        """Color id to class bitmask, ordered by color id."""
        out: dict[int, int] = {}
        for v, c in enumerate(self.assignment):
            out[c] = out.get(c, 0) | 1 << v
        return dict(sorted(out.items()))

    def normalized(self) -> Coloring:
        """Relabels colors 0, 1, ... in order of first appearance."""
        relabel: dict[int, int] = {}
        for c in self.assignment:
            relabel.setdefault(c, len(relabel))
        return Coloring(tuple(relabel[c] for c in self.assignment))

    def swapped(self, u: int, v: int) -> Coloring:
        colors = list(self.assignment)
        colors[u], colors[v] = colors[v], colors[u]
        return Coloring(tuple(colors))


@dataclass(frozen=True)
class DominatorWitness:
    problem: Problem
    # DomCol: vertex -> color it dominates
    delta: tuple[int, ...] | None = None
    # CD: color -> a vertex dominating that class
    dominator: dict[int, int] = field(default_factory=dict)


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    g.check_vertex(v)
    return members(g.closed_mask(v))


def _check_subset(g: Graph, s: Iterable[int]) -> int:
    mask = 0
    for v in s:
        g.check_vertex(v)
        mask |= 1 << v
    return mask


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    return g.is_independent_mask(_check_subset(g, s))


def connected_components(g: Graph) -> list[VertexSet]:
    """Components ordered by their smallest vertex."""
    comps = [frozenset(c) for c in nx.connected_components(g.to_networkx())]
    return sorted(comps, key=min)


def component_masks(g: Graph) -> list[int]:
    return [mask_of(c) for c in connected_components(g)]


def isolated_vertices(g: Graph) -> VertexSet:
    return frozenset(v for v in range(g.n) if not g.adjacency[v])


def is_cluster_graph(g: Graph) -> bool:
    """True iff every component induces a complete graph."""
    for comp in component_masks(g):
        for v in iter_bits(comp):
            if comp & ~g.closed_mask(v):
                return False
    return True


def find_induced_p3(g: Graph) -> tuple[int, int, int] | None:
    """
    Returns (a, b, c) with a-b-c an induced path, smallest b first,
    or None for cluster graphs.
    """
    for b in range(g.n):
        nbrs = sorted(iter_bits(g.adjacency[b]))
        for i, a in enumerate(nbrs):
            for c in nbrs[i + 1 :]:
                if not g.has_edge(a, c):
                    return a, b, c
    return None


def true_twin_classes(g: Graph) -> list[int]:
    """Masks of vertices sharing the same closed neighbourhood."""
    groups: dict[int, int] = {}
    for v in range(g.n):
        key = g.closed_mask(v)
        groups[key] = groups.get(key, 0) | 1 << v
    return sorted(groups.values(), key=lambda m: m & -m)


def cluster_cliques(g: Graph, modulator: int) -> list[int]:
    """
    Components of G - M as masks in the ids of g.
    Raises UsageError if G - M is not a cluster graph.
    """
    rest = g.full_mask & ~modulator
    sub, order = g.induced(iter_bits(rest))
    if not is_cluster_graph(sub):
        raise UsageError(
            "removing the modulator does not leave a cluster graph"
        )
    return [
        mask_of(order[i] for i in iter_bits(c)) for c in component_masks(sub)
    ]


def is_twin_cover(g: Graph, m: Iterable[int]) -> bool:
    modulator = _check_subset(g, m)
    try:
        cliques = cluster_cliques(g, modulator)
    except UsageError:
        return False
    for clique in cliques:
        first = clique & -clique
        nbhd = g.closed_mask(first.bit_length() - 1)
        if any(g.closed_mask(v) != nbhd for v in iter_bits(clique)):
            return False
    return True


def is_clique_modulator(g: Graph, m: Iterable[int]) -> bool:
    rest = g.full_mask & ~_check_subset(g, m)
    return all(not rest & ~g.closed_mask(v) for v in iter_bits(rest))


def is_cvd_set(g: Graph, m: Iterable[int]) -> bool:
    try:
        cluster_cliques(g, _check_subset(g, m))
    except UsageError:
        return False
    return True


def _check_coloring(g: Graph, c: Coloring) -> None:
    if len(c.assignment) != g.n:
        raise UsageError(
            f"coloring covers {len(c.assignment)} vertices, graph has {g.n}"
        )


def is_proper(g: Graph, c: Coloring) -> bool:
    return all(c.assignment[u] != c.assignment[v] for u, v in g.edges())


def validate_domcol(g: Graph, c: Coloring) -> DominatorWitness | None:
    """
    Returns a witness if c is a proper coloring in which every vertex
    dominates a nonempty color class, None otherwise.
    Ties pick the smallest color id.
    """
    _check_coloring(g, c)
    if not is_proper(g, c):
        return None

    classes = c.classes()
    delta = []
    for v in range(g.n):
        dominated = [col for col, cls in classes.items() if g.dominates(v, cls)]
        if not dominated:
            return None
        delta.append(dominated[0])
    return DominatorWitness(Problem.DOMCOL, delta=tuple(delta))


def validate_cdcol(g: Graph, c: Coloring) -> DominatorWitness | None:
    """
    Returns a witness if c is proper and every used class lies inside
    some closed neighbourhood, None otherwise.
    Ties pick the smallest dominating vertex id.
    """
    _check_coloring(g, c)
    if not is_proper(g, c):
        return None

    dominator = {}
    for col, cls in c.classes().items():
        common = g.common_closed_mask(cls)
        if not common:
            return None
        dominator[col] = (common & -common).bit_length() - 1
    return DominatorWitness(Problem.CDCOL, dominator=dominator)


def validate(
    g: Graph, c: Coloring, problem: Problem
) -> DominatorWitness | None:
    if problem is Problem.DOMCOL:
        return validate_domcol(g, c)
    return validate_cdcol(g, c)


# Named graphs


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    """Center 0 joined to leaves 1..leaves."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    offset = 0
    for h in graphs:
        adj.extend(a << offset for a in h.adjacency)
        offset += h.n
    return Graph(offset, tuple(adj))


# DIMACS-style text


def parse_dimacs(text: str) -> Graph:
    """
    Parses `p edge <n> <m>` / `e <u> <v>` text with 1-based ids.
    Raises UsageError on malformed input.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []
    declared_m = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if n is not None:
                    raise UsageError(f"line {lineno}: duplicate header")
                if len(parts) != 4:
                    raise UsageError(f"line {lineno}: expected 'p edge n m'")
                n, declared_m = int(parts[2]), int(parts[3])
            elif parts[0] == "e":
                if n is None:
                    raise UsageError(f"line {lineno}: edge before header")
                if len(parts) != 3:
                    raise UsageError(f"line {lineno}: expected 'e u v'")
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                if not (0 <= u < n and 0 <= v < n):
                    raise UsageError(f"line {lineno}: vertex out of range")
                if u == v:
                    raise UsageError(f"line {lineno}: self-loop")
                edges.append((u, v))
            else:
                raise UsageError(f"line {lineno}: unknown record {parts[0]!r}")
        except ValueError:
            raise UsageError(f"line {lineno}: expected integers")

    if n is None:
        raise UsageError("missing 'p edge n m' header")

    g = Graph.from_edges(n, edges)
    if g.m != declared_m:
        log.debug("header declares %d edges, read %d", declared_m, g.m)
    return g


def format_dimacs(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
