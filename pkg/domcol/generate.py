"""
Random instances with a known structural parameter.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Callable

import networkx as nx

from .const import DEFAULT_SEED, GenKind
from .errors import UsageError
from .graph import (
    Graph,
    VertexSet,
    is_clique_modulator,
    is_cvd_set,
    is_twin_cover,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstanceGenSpec:
    kind: GenKind
    # number of cliques left after removing the modulator
    q: int = 2
    min_clique: int = 1
    max_clique: int = 3
    # modulator size
    k: int = 2
    # vertex count and edge probability of gnp graphs
    n: int = 6
    p: float = 0.5
    seed: int = DEFAULT_SEED

    def validate(self) -> None:
        """Raises UsageError for sizes no generator accepts."""
        if min(self.q, self.k, self.n) < 0:
            raise UsageError("sizes must be nonnegative")
        if not 1 <= self.min_clique <= self.max_clique:
            raise UsageError(
                f"bad clique size range {self.min_clique}..{self.max_clique}"
            )
        if not 0.0 <= self.p <= 1.0:
            raise UsageError(f"edge probability {self.p} outside [0, 1]")


@dataclass(frozen=True)
class GeneratedInstance:
    graph: Graph
    # the promised modulator; empty for gnp graphs
    modulator: VertexSet
    spec: InstanceGenSpec


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def clique(self, size: int) -> list[int]:
        vertices = list(range(self.n, self.n + size))
        self.n += size
        self.edges.extend(
            (u, v) for i, u in enumerate(vertices) for v in vertices[i + 1 :]
        )
        return vertices

    def vertices(self, count: int) -> list[int]:
        vertices = list(range(self.n, self.n + count))
        self.n += count
        return vertices

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def _random_edges(
    rng: random.Random, b: _Builder, vertices: list[int], p: float
) -> None:
    h = nx.gnp_random_graph(len(vertices), p, seed=rng)
    b.edges.extend((vertices[u], vertices[v]) for u, v in h.edges())


def _attachments(
    rng: random.Random, mod: list[int], targets: int, p: float
) -> list[tuple[int, int]]:
    """
    Pairs (u, t) of a modulator vertex and a target index, each present
    with probability p.
    """
    k = len(mod)
    h = nx.bipartite.random_graph(k, targets, p, seed=rng)
    pairs = (sorted(e) for e in h.edges())
    return sorted((mod[u], t - k) for u, t in pairs)


def _cliques(
    rng: random.Random, b: _Builder, spec: InstanceGenSpec
) -> list[list[int]]:
    return [
        b.clique(rng.randint(spec.min_clique, spec.max_clique))
        for _ in range(spec.q)
    ]


def _cluster_plus_modulator(
    rng: random.Random, spec: InstanceGenSpec
) -> tuple[Graph, list[int]]:
    # one clique, so the modulator is a clique modulator
    b = _Builder()
    clique = b.clique(rng.randint(spec.min_clique, spec.max_clique))
    mod = b.vertices(spec.k)
    _random_edges(rng, b, mod, spec.p)
    b.edges.extend(
        (u, clique[t]) for u, t in _attachments(rng, mod, len(clique), spec.p)
    )
    return b.graph(), mod


def _twin_cover(
    rng: random.Random, spec: InstanceGenSpec
) -> tuple[Graph, list[int]]:
    b = _Builder()
    cliques = _cliques(rng, b, spec)
    mod = b.vertices(spec.k)
    _random_edges(rng, b, mod, spec.p)
    # whole cliques only, which keeps every clique a twin class
    for u, t in _attachments(rng, mod, len(cliques), spec.p):
        b.edges.extend((u, v) for v in cliques[t])
    return b.graph(), mod


def _cvd(rng: random.Random, spec: InstanceGenSpec) -> tuple[Graph, list[int]]:
    b = _Builder()
    cliques = _cliques(rng, b, spec)
    mod = b.vertices(spec.k)
    _random_edges(rng, b, mod, spec.p)
    flat = [v for clique in cliques for v in clique]
    b.edges.extend(
        (u, flat[t]) for u, t in _attachments(rng, mod, len(flat), spec.p)
    )
    return b.graph(), mod


def _gnp(rng: random.Random, spec: InstanceGenSpec) -> tuple[Graph, list[int]]:
    h = nx.gnp_random_graph(spec.n, spec.p, seed=rng)
    return Graph.from_networkx(h), []


_GENERATORS: dict[
    GenKind, Callable[[random.Random, InstanceGenSpec], tuple[Graph, list[int]]]
] = {
    GenKind.CLUSTER_PLUS_MODULATOR: _cluster_plus_modulator,
    GenKind.TWIN_COVER: _twin_cover,
    GenKind.CVD: _cvd,
    GenKind.GNP: _gnp,
}

_PROMISES: dict[GenKind, Callable[[Graph, list[int]], bool]] = {
    GenKind.CLUSTER_PLUS_MODULATOR: is_clique_modulator,
    GenKind.TWIN_COVER: is_twin_cover,
    GenKind.CVD: is_cvd_set,
    GenKind.GNP: lambda g, m: True,
}


def generate(spec: InstanceGenSpec, trial: int = 0) -> GeneratedInstance:
    """
    The trial-th instance of the spec; the same (spec, trial) always gives
    the same graph.
    """
    spec.validate()
    rng = random.Random(f"{spec.kind.value}:{spec.seed}:{trial}")
    g, mod = _GENERATORS[spec.kind](rng, spec)
    # structural promise of the generator
    assert _PROMISES[spec.kind](g, mod), spec
    log.debug(
        "generated %s trial %d: n=%d m=%d k=%d",
        spec.kind.value,
        trial,
        g.n,
        g.m,
        len(mod),
    )
    return GeneratedInstance(g, frozenset(mod), spec)
