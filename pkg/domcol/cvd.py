"""
CD coloring parameterized by a cluster vertex deletion set M.

Inside a clique Q of G - M only the vertices seeing the same part of M
are twins. Each clique is therefore split into neighbourhood classes, and
one representative per class joins M as a possible dominator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from .errors import UsageError
from .graph import (
    Coloring,
    Graph,
    VertexSet,
    cluster_cliques,
    is_cvd_set,
    iter_bits,
    mask_of,
)
from .tc import (
    DominatorColumn,
    PartialCDColoring,
    Provenance,
    disjoint_extension,
    lift_coloring,
    modulator_partitions,
    remove_isolated_cliques,
    twin_cover_columns,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NeighborhoodClasses:
    cliques: tuple[int, ...]
    # per clique: (N[v] & M, class mask) in order of the lowest vertex
    classes: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def representatives(self) -> VertexSet:
        return frozenset(
            (cls & -cls).bit_length() - 1
            for per_clique in self.classes
            for _, cls in per_clique
        )


def neighborhood_classes(g: Graph, m: Iterable[int]) -> NeighborhoodClasses:
    """
    Raises UsageError if G - M is not a cluster graph.
    """
    modulator = mask_of(m)
    cliques = cluster_cliques(g, modulator)
    classes = []
    for clique in cliques:
        groups: dict[int, int] = {}
        for v in iter_bits(clique):
            seen = g.adjacency[v] & modulator
            groups[seen] = groups.get(seen, 0) | 1 << v
        classes.append(
            tuple(sorted(groups.items(), key=lambda item: item[1] & -item[1]))
        )
    return NeighborhoodClasses(tuple(cliques), tuple(classes))


def _clique_placements(
    g: Graph,
    classes: tuple[tuple[int, int], ...],
    partition: tuple[int, ...],
    shared: list[int],
    choice: tuple[int, ...],
) -> list[dict[int, int]]:
    """
    Ways to put shared colors on vertices of one clique, keeping only
    those whose leftover class sizes are minimal.
    """
    eligible = []
    for c, d in zip(shared, choice):
        reach = g.closed_mask(d)
        eligible.append(
            [
                j
                for j, (seen, cls) in enumerate(classes)
                if reach >> ((cls & -cls).bit_length() - 1) & 1
                and not seen & partition[c]
            ]
        )

    sizes = [cls.bit_count() for _, cls in classes]
    found: dict[tuple[int, ...], dict[int, int]] = {}
    for pick in product(*([None, *opts] for opts in eligible)):
        left = list(sizes)
        placed: dict[int, int] = {}
        for c, j in zip(shared, pick):
            if j is None:
                continue
            if not left[j]:
                break
            vertex = sorted(iter_bits(classes[j][1]))[sizes[j] - left[j]]
            placed[vertex] = c
            left[j] -= 1
        else:
            found.setdefault(tuple(left), placed)

    minimal = [
        key
        for key in found
        if not any(
            other != key and all(a <= b for a, b in zip(other, key))
            for other in found
        )
    ]
    return [found[key] for key in minimal]


def gamma_cdcol_cvd(
    g: Graph, m: Iterable[int], nc: NeighborhoodClasses
) -> Iterator[PartialCDColoring]:
    """
    Partial CD colorings of M extended into the cliques, with dominators
    of shared colors drawn from M and the class representatives.
    """
    mod = sorted(set(m))
    pool = mod + sorted(nc.representatives)
    seen: set[tuple[tuple[int, int], ...]] = set()
    for partition in modulator_partitions(g, mod, dominated=True):
        base = {
            v: c for c, part in enumerate(partition) for v in iter_bits(part)
        }
        for split in range(1 << len(partition)):
            shared = [c for c in range(len(partition)) if split >> c & 1]
            options = [
                [d for d in pool if g.dominates(d, partition[c])]
                for c in shared
            ]
            for choice in product(*options):
                per_clique = [
                    _clique_placements(g, classes, partition, shared, choice)
                    for classes in nc.classes
                ]
                for picks in product(*per_clique):
                    chi = dict(base)
                    for placed in picks:
                        chi.update(placed)
                    key = tuple(sorted(chi.items()))
                    if key in seen:
                        continue
                    seen.add(key)
                    yield PartialCDColoring(
                        chi, Provenance(partition, split, tuple(choice))
                    )
    log.debug("CVD family has %d members for k=%d", len(seen), len(mod))


def cvd_columns(
    g: Graph, m: Iterable[int], nc: NeighborhoodClasses
) -> list[DominatorColumn]:
    """
    One column per modulator vertex plus one local column per clique,
    shared by all representatives taken from that clique.
    """
    modulator = mask_of(m)
    cluster = g.full_mask & ~modulator
    columns = twin_cover_columns(g, sorted(set(m)), cluster)
    for clique in nc.cliques:
        lowest = (clique & -clique).bit_length() - 1
        columns.append(DominatorColumn(lowest, clique))
    return columns


def cdcol_cvd_coloring(g: Graph, m: Iterable[int], ell: int) -> Coloring | None:
    """
    A CD coloring with at most ell colors, or None.
    Raises UsageError if M is not a cluster vertex deletion set.
    """
    mod = sorted(set(m))
    for v in mod:
        g.check_vertex(v)
    if not is_cvd_set(g, mod):
        raise UsageError("M is not a cluster vertex deletion set")
    reduced = remove_isolated_cliques(g, ell, mod)
    if reduced.ell < 0:
        return None
    h, inner_m = reduced.graph, reduced.modulator
    nc = neighborhood_classes(h, inner_m)
    log.debug(
        "%d cliques, %d neighbourhood classes",
        len(nc.cliques),
        len(nc.representatives),
    )
    columns = cvd_columns(h, inner_m, nc)
    for pcd in gamma_cdcol_cvd(h, inner_m, nc):
        inner = disjoint_extension(
            h, list(nc.cliques), pcd.chi, columns, reduced.ell
        )
        if inner is not None:
            log.debug("disjoint extension found from %s", pcd.provenance)
            return lift_coloring(g.n, reduced.kept, inner)
    return None


def cdcol_cvd(g: Graph, m: Iterable[int], ell: int) -> bool:
    """True iff G has a CD coloring with at most ell colors."""
    return cdcol_cvd_coloring(g, m, ell) is not None
