"""
Exact exponential solvers.

DomCol is decided by counting ordered l-tuples of pairwise disjoint sets
I u D drawn from the partization family over U = V u V' (|U| = 2n) whose
union is U. The family is not closed under dropping I, so the count is
taken with the size-ranked inclusion-exclusion formula

    c_l = sum over W of (-1)^|U - W| [z^|U|] (sum_{S <= W, S in F} z^|S|)^l

which counts disjoint covers only. CD coloring uses the classic cover
count over V, its family being closed under subsets.

Counts are reduced modulo two random primes below 2^31 so that every
product of two residues fits into int64.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import sympy

from .config import Guards
from .const import COUNT_PRIME_HIGH, COUNT_PRIME_LOW, DEFAULT_SEED
from .errors import UsageError
from .graph import (
    Coloring,
    Graph,
    connected_components,
    isolated_vertices,
    iter_bits,
)
from .params import find_vertex_cover

log = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]

# masks are processed in column chunks of this size when raising powers
CHUNK = 1 << 15


@dataclass(frozen=True)
class PartizationSystem:
    """
    Universe V u V' encoded on 2n bits: bit i is v_i, bit n + i is v'_i.
    """

    graph: Graph

    @property
    def universe_size(self) -> int:
        return 2 * self.graph.n

    def split(self, mask: int) -> tuple[int, int]:
        n = self.graph.n
        return mask & ((1 << n) - 1), mask >> n

    def dominators(self, independent: int) -> int:
        """Vertices v with N[v] containing the given set."""
        return self.graph.common_closed_mask(independent)

    def contains(self, mask: int) -> bool:
        """
        True iff mask = I u D with I independent, every vertex of D
        dominating I, and I nonempty whenever D is.
        """
        if mask >> self.universe_size:
            return False
        independent, copies = self.split(mask)
        if not self.graph.is_independent_mask(independent):
            return False
        if copies and not independent:
            return False
        return not copies & ~self.dominators(independent)

    def contains_sets(self, independent: set[int], copies: set[int]) -> bool:
        n = self.graph.n
        mask = 0
        for v in independent:
            mask |= 1 << v
        for v in copies:
            mask |= 1 << (n + v)
        return self.contains(mask)

    def ranked_indicator(self) -> IntArray:
        """
        Array f[r, mask] = 1 iff mask is a family member of size r.
        """
        n = self.graph.n
        size = 1 << (2 * n)
        f = np.zeros((2 * n + 1, size), dtype=np.int64)
        f[0, 0] = 1
        for independent in range(1, 1 << n):
            if not self.graph.is_independent_mask(independent):
                continue
            base = independent.bit_count()
            dom = self.dominators(independent)
            sub = dom
            while True:
                f[base + sub.bit_count(), independent | sub << n] = 1
                if not sub:
                    break
                sub = (sub - 1) & dom
        return f


@dataclass(frozen=True)
class CoverCount:
    # a(W): family members contained in W, for every mask W
    counts: IntArray
    # (prime, c_l mod prime) pairs
    residues: tuple[tuple[int, int], ...]

    @property
    def nonzero(self) -> bool:
        return any(r != 0 for _, r in self.residues)


def build_partization_system(
    g: Graph, guards: Guards | None = None
) -> PartizationSystem:
    (guards or Guards()).check("exact_domcol_max_n", g.n, "exact DomCol graph")
    return PartizationSystem(g)


def counting_primes(seed: int = DEFAULT_SEED) -> tuple[int, int]:
    """Two distinct primes in [2^30, 2^31), reproducible from the seed."""
    rng = random.Random(seed)
    span = COUNT_PRIME_HIGH - COUNT_PRIME_LOW - (1 << 20)
    first = int(sympy.nextprime(COUNT_PRIME_LOW + rng.randrange(span)))
    second = int(sympy.nextprime(COUNT_PRIME_LOW + rng.randrange(span)))
    if second == first:
        second = int(sympy.nextprime(first))
    assert first < COUNT_PRIME_HIGH and second < COUNT_PRIME_HIGH
    return first, second


def zeta_transform(f: IntArray, bits: int) -> IntArray:
    """
    Subset-sum transform along the last axis: out[..., W] is the sum of
    f[..., S] over S contained in W. Exact while sums fit in int64.
    """
    out = f.copy()
    lead = out.shape[:-1]
    for i in range(bits):
        view = out.reshape(*lead, -1, 2, 1 << i)
        view[..., 1, :] += view[..., 0, :]
    return out


def popcount_parity(bits: int) -> npt.NDArray[np.bool_]:
    """Odd-popcount flags for masks 0 .. 2^bits - 1."""
    idx = np.arange(1 << bits, dtype=np.int64)
    parity = np.zeros(1 << bits, dtype=np.int64)
    for b in range(bits):
        parity ^= (idx >> b) & 1
    return parity.astype(bool)


def _poly_mul(a: IntArray, b: IntArray, p: int) -> IntArray:
    """Truncated product of column-wise polynomials, coefficients mod p."""
    degree = a.shape[0]
    out = np.zeros_like(a)
    for i in range(degree):
        out[i:] += (a[i] * b[: degree - i]) % p
        out[i:] %= p
    return out


def _poly_pow(base: IntArray, exponent: int, p: int) -> IntArray:
    result = np.zeros_like(base)
    result[0] = 1
    while exponent:
        if exponent & 1:
            result = _poly_mul(result, base, p)
        exponent >>= 1
        if exponent:
            base = _poly_mul(base, base, p)
    return result


def _signed_total(values: IntArray, odd: npt.NDArray[np.bool_], p: int) -> int:
    # values < 2^31, so each partial sum stays far below 2^63 at 2^20 terms
    plus = int(values[~odd].sum()) % p
    minus = int(values[odd].sum()) % p
    return (plus - minus) % p


def count_partizations(
    system: PartizationSystem, ell: int, primes: tuple[int, ...]
) -> CoverCount:
    bits = system.universe_size
    ranked = zeta_transform(system.ranked_indicator(), bits)
    odd = popcount_parity(bits)
    if bits % 2:
        odd = ~odd

    residues = []
    for p in primes:
        total = 0
        for start in range(0, ranked.shape[1], CHUNK):
            block = ranked[:, start : start + CHUNK] % p
            coef = _poly_pow(block, ell, p)[bits]
            total += _signed_total(coef, odd[start : start + CHUNK], p)
        residues.append((p, total % p))

    log.debug("partization residues %s", residues)
    return CoverCount(ranked.sum(axis=0), tuple(residues))


def _modpow(base: IntArray, exponent: int, p: int) -> IntArray:
    result = np.ones_like(base)
    base = base % p
    while exponent:
        if exponent & 1:
            result = (result * base) % p
        exponent >>= 1
        if exponent:
            base = (base * base) % p
    return result


def cd_family_indicator(g: Graph) -> IntArray:
    """f[S] = 1 iff S is independent and inside some closed neighbourhood."""
    f = np.zeros(1 << g.n, dtype=np.int64)
    for s in range(1 << g.n):
        if g.is_independent_mask(s) and g.common_closed_mask(s):
            f[s] = 1
    return f


def count_cd_covers(g: Graph, ell: int, primes: tuple[int, ...]) -> CoverCount:
    counts = zeta_transform(cd_family_indicator(g), g.n)
    odd = popcount_parity(g.n)
    if g.n % 2:
        odd = ~odd

    residues = []
    for p in primes:
        powered = _modpow(counts, ell, p)
        residues.append((p, _signed_total(powered, odd, p)))

    log.debug("cd cover residues %s", residues)
    return CoverCount(counts, tuple(residues))


def _trivial(g: Graph, ell: int) -> bool | None:
    # n colors always suffice for both problems
    if ell >= g.n:
        return True
    if ell <= 0:
        return False
    return None


def _preprocess(g: Graph, ell: int, cd: bool) -> tuple[Graph, int, bool | None]:
    shortcut = _trivial(g, ell)
    if shortcut is not None:
        return g, ell, shortcut
    g, ell = drop_isolated(g, ell)
    shortcut = _trivial(g, ell)
    if shortcut is None:
        shortcut = vertex_cover_shortcut(g, ell, cd)
    return g, ell, shortcut


def domcol_exact(
    g: Graph, ell: int, seed: int = DEFAULT_SEED, guards: Guards | None = None
) -> bool:
    """
    True iff G has a dominator coloring with at most ell colors.
    Raises GuardExceededError above the exact_domcol_max_n guard.
    """
    build_partization_system(g, guards)
    g, ell, shortcut = _preprocess(g, ell, cd=False)
    if shortcut is not None:
        return shortcut
    system = PartizationSystem(g)
    return count_partizations(system, ell, counting_primes(seed)).nonzero


def cdcol_exact(
    g: Graph, ell: int, seed: int = DEFAULT_SEED, guards: Guards | None = None
) -> bool:
    """
    True iff G has a CD coloring with at most ell colors.
    Raises GuardExceededError above the exact_cdcol_max_n guard.
    """
    (guards or Guards()).check("exact_cdcol_max_n", g.n, "exact CD graph")
    g, ell, shortcut = _preprocess(g, ell, cd=True)
    if shortcut is not None:
        return shortcut
    return count_cd_covers(g, ell, counting_primes(seed)).nonzero


def vertex_cover_shortcut(g: Graph, ell: int, cd: bool) -> bool | None:
    """
    True when a connected graph has a vertex cover of size k with
    ell > k (DomCol) or ell > 2k (CD coloring); None when undecided.
    """
    if g.n == 0 or len(connected_components(g)) != 1:
        return None
    cover = find_vertex_cover(g)
    assert cover is not None
    k = len(cover)
    if ell > (2 * k if cd else k):
        log.debug("vertex cover k=%d settles ell=%d", k, ell)
        return True
    return None


def cdcol_vertex_cover_coloring(g: Graph) -> Coloring:
    """
    CD coloring with at most 2k colors for a connected graph with a
    minimum vertex cover v_1..v_k: v_i gets color i, every other vertex
    gets k + i for its smallest cover neighbour v_i.
    """
    if len(connected_components(g)) != 1:
        raise UsageError("graph must be connected")
    cover = sorted(find_vertex_cover(g) or ())
    if not cover:
        return Coloring((0,) * g.n)
    index = {v: i for i, v in enumerate(cover)}
    cover_mask = sum(1 << v for v in cover)
    colors = []
    for v in range(g.n):
        if v in index:
            colors.append(index[v])
        else:
            first = next(iter_bits(g.adjacency[v] & cover_mask))
            colors.append(len(cover) + index[first])
    return Coloring(tuple(colors))


def drop_isolated(g: Graph, ell: int) -> tuple[Graph, int]:
    """Every isolated vertex needs its own color; remove them from (G, ell)."""
    lonely = isolated_vertices(g)
    if not lonely:
        return g, ell
    reduced, _ = g.remove_vertices(lonely)
    log.debug("dropped %d isolated vertices", len(lonely))
    return reduced, ell - len(lonely)
