"""
Randomized algebraic solvers parameterized by a clique modulator M.

Rows of the matrix are V(G) padded with artificial vertices, columns are
the l real colors plus one artificial color per modulator vertex. Cell
(v, c) holds z_(v,c) times the entry polynomial P(v, c), a sum of
monomials over the sieved variables. A monomial is stored as a bitmask:
for DomCol bit i is x_(m_i) and bit k + i is y_(m_i); for CD coloring
only the x bits exist.

The instance is a yes instance iff det A has a monomial divisible by the
product of all sieved variables. Inclusion-exclusion over the sieved
variables isolates those monomials, and a random evaluation point turns
the polynomial identity test into a field computation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from .config import Guards
from .const import DEFAULT_REPEATS, DEFAULT_SEED
from .errors import UsageError
from .exact import domcol_exact
from .field import Cell, FieldContext, det_mod_p
from .graph import Graph, is_clique_modulator, iter_bits, mask_of

log = logging.getLogger(__name__)

# constant polynomial 1
ONE: tuple[int, ...] = (0,)


@dataclass(frozen=True)
class SupportGraph:
    """
    Balanced bipartite support graph with its entry polynomials.

    rows[i] is a vertex of G or None for a pad; cell (i, j) is an edge iff
    it has an entry.
    """

    size: int
    entries: Mapping[Cell, tuple[int, ...]]
    num_vars: int
    rows: tuple[int | None, ...] = ()

    def matrix(self, ctx: FieldContext, zeroed: int = 0) -> list[list[int]]:
        p = ctx.prime
        a = [[0] * self.size for _ in range(self.size)]
        for (r, c), monomials in self.entries.items():
            total = 0
            for mask in monomials:
                if not mask & zeroed:
                    total += ctx.monomial(mask)
            a[r][c] = ctx.z[(r, c)] * total % p
        return a


def _modulator_parts(
    g: Graph, m: frozenset[int]
) -> tuple[list[int], list[int]]:
    for v in m:
        g.check_vertex(v)
    if not is_clique_modulator(g, m):
        raise UsageError("G - M is not a clique")
    mod = sorted(m)
    clique = [v for v in range(g.n) if v not in m]
    return mod, clique


def _to_graph_mask(mod: list[int], sub: int) -> int:
    return mask_of(mod[i] for i in iter_bits(sub))


def _layout(
    g: Graph, mod: list[int], clique: list[int], ell: int
) -> tuple[int, list[int | None]] | None:
    size = ell + len(mod)
    if len(clique) > ell:
        log.debug("|Q|=%d > ell=%d, no instance", len(clique), ell)
        return None
    rows: list[int | None] = list(range(g.n))
    rows.extend([None] * (size - g.n))
    return size, rows


def build_support_domcol(
    g: Graph, m: frozenset[int], ell: int
) -> SupportGraph | None:
    """
    Support graph and entry collections for DomCol; None when |Q| > ell
    (no instance).
    Raises UsageError if G - M is not a clique.
    """
    mod, clique = _modulator_parts(g, m)
    k = len(mod)
    layout = _layout(g, mod, clique, ell)
    if layout is None:
        return None
    size, rows = layout
    index = {v: i for i, v in enumerate(mod)}

    # (S1, S1 in G ids) for every independent S1 within M
    independent = []
    for sub in range(1 << k):
        s1 = _to_graph_mask(mod, sub)
        if g.is_independent_mask(s1):
            independent.append((sub, s1))

    def dominators_in_m(target: int) -> int:
        out = 0
        for i, u in enumerate(mod):
            if g.dominates(u, target):
                out |= 1 << i
        return out

    entries: dict[Cell, tuple[int, ...]] = {}
    for r, v in enumerate(rows):
        if v is None:
            for c in range(size):
                entries[(r, c)] = ONE
            continue

        if v in index:
            own = 1 << index[v]
            monomials = tuple(
                sub | dominators_in_m(s1) << k
                for sub, s1 in independent
                if sub & own
            )
            entries[(r, ell + index[v])] = ONE
        else:
            monomials = tuple(
                sub | dominators_in_m(s1 | 1 << v) << k
                for sub, s1 in independent
                if not g.adjacency[v] & s1
            )
        for c in range(ell):
            entries[(r, c)] = monomials

    return SupportGraph(size, entries, 2 * k, tuple(rows))


def build_support_cdcol(
    g: Graph, m: frozenset[int], ell: int
) -> SupportGraph | None:
    """
    Support graph and entry collections for CD coloring; None when
    |Q| > ell.
    Raises UsageError if G - M is not a clique.
    """
    mod, clique = _modulator_parts(g, m)
    k = len(mod)
    layout = _layout(g, mod, clique, ell)
    if layout is None:
        return None
    size, rows = layout
    index = {v: i for i, v in enumerate(mod)}

    independent = []
    for sub in range(1 << k):
        s = _to_graph_mask(mod, sub)
        if g.is_independent_mask(s):
            independent.append((sub, s))

    entries: dict[Cell, tuple[int, ...]] = {}
    for r, v in enumerate(rows):
        if v is None:
            for c in range(size):
                entries[(r, c)] = ONE
            continue

        if v in index:
            own = 1 << index[v]
            monomials = tuple(
                sub
                for sub, s in independent
                if sub & own and g.common_closed_mask(s)
            )
            entries[(r, ell + index[v])] = ONE
        else:
            monomials = tuple(
                sub
                for sub, s in independent
                if not g.adjacency[v] & s and g.common_closed_mask(s | 1 << v)
            )
        for c in range(ell):
            entries[(r, c)] = monomials

    return SupportGraph(size, entries, k, tuple(rows))


def eval_matrix_det(
    sg: SupportGraph, ctx: FieldContext, zeroed: int = 0
) -> int:
    """det A mod p with the variables in `zeroed` set to 0."""
    return det_mod_p(sg.matrix(ctx, zeroed), ctx.prime)


def sieve_decide(
    sg: SupportGraph,
    ctx: FieldContext,
    sieved: int,
    guards: Guards | None = None,
) -> bool:
    """
    Evaluates sum over T within `sieved` of (-1)^|T| det A|T=0 and
    reports whether it is nonzero.
    Raises GuardExceededError if too many variables are sieved.
    """
    (guards or Guards()).check(
        "sieve_max_vars", sieved.bit_count(), "sieved variable set"
    )
    p = ctx.prime
    total = 0
    sub = sieved
    terms = 0
    while True:
        det = eval_matrix_det(sg, ctx, sub)
        total += -det if sub.bit_count() % 2 else det
        terms += 1
        if not sub:
            break
        sub = (sub - 1) & sieved
    log.debug("sieve over %d terms, repetition %d", terms, ctx.repetition)
    return total % p != 0


def _repeat_sieve(
    sg: SupportGraph, seed: int, repeats: int, guards: Guards | None
) -> bool:
    sieved = (1 << sg.num_vars) - 1
    ctx = FieldContext.sample(sg.entries, sg.num_vars, seed)
    for rep in range(repeats):
        if rep:
            ctx = ctx.fresh(rep)
        if sieve_decide(sg, ctx, sieved, guards):
            return True
    return False


def domcol_clq(
    g: Graph,
    m: frozenset[int],
    ell: int,
    seed: int = DEFAULT_SEED,
    repeats: int = DEFAULT_REPEATS,
    guards: Guards | None = None,
) -> bool:
    """
    One-sided randomized DomCol decision: True answers are always right.
    Raises UsageError if G - M is not a clique.
    """
    mod, clique = _modulator_parts(g, m)
    if ell >= g.n:
        return True
    if len(clique) <= len(mod):
        # n <= 2k here
        log.debug("|Q|=%d <= k=%d, exact fallback", len(clique), len(mod))
        return domcol_exact(g, ell, seed, guards)
    sg = build_support_domcol(g, m, ell)
    if sg is None:
        return False
    return _repeat_sieve(sg, seed, repeats, guards)


def cdcol_clq(
    g: Graph,
    m: frozenset[int],
    ell: int,
    seed: int = DEFAULT_SEED,
    repeats: int = DEFAULT_REPEATS,
    guards: Guards | None = None,
) -> bool:
    """
    One-sided randomized CD coloring decision.
    Raises UsageError if G - M is not a clique.
    """
    _modulator_parts(g, m)
    if ell >= g.n:
        return True
    sg = build_support_cdcol(g, m, ell)
    if sg is None:
        return False
    return _repeat_sieve(sg, seed, repeats, guards)
