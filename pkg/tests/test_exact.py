"""
Tests for the exact exponential solvers.
"""

import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from domcol.config import Guards
from domcol.const import COUNT_PRIME_HIGH, COUNT_PRIME_LOW
from domcol.errors import GuardExceededError, UsageError
from domcol.exact import (
    PartizationSystem,
    cdcol_exact,
    cdcol_vertex_cover_coloring,
    counting_primes,
    domcol_exact,
    drop_isolated,
    popcount_parity,
    vertex_cover_shortcut,
    zeta_transform,
)
from domcol.graph import (
    Graph,
    complete,
    disjoint_union,
    empty,
    iter_bits,
    validate_cdcol,
)
from domcol.oracle import cdcol_optimum, domcol_optimum
from tests.strategies import graphs, random_graph


class TestPartizationSystem:
    def test_membership(self, p3: Graph) -> None:
        """Test members I u D of the family."""
        system = PartizationSystem(p3)
        assert system.universe_size == 6
        assert system.contains_sets({0, 2}, {1})
        assert system.contains_sets({1}, {0, 1, 2})
        assert system.contains_sets(set(), set())

    def test_non_members(self, p3: Graph) -> None:
        """Test that D needs a nonempty independent I it dominates."""
        system = PartizationSystem(p3)
        assert not system.contains_sets(set(), {1})
        assert not system.contains_sets({0, 1}, set())
        assert not system.contains_sets({0, 2}, {0})

    def test_ranked_indicator(self, p3: Graph) -> None:
        """Test that the indicator agrees with membership."""
        system = PartizationSystem(p3)
        f = system.ranked_indicator()
        for mask in range(1 << system.universe_size):
            member = bool(f[mask.bit_count(), mask])
            assert member == system.contains(mask)
        assert f.sum() == sum(
            system.contains(m) for m in range(1 << system.universe_size)
        )

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=5), st.data())
    def test_family_closure(self, g: Graph, data: st.DataObject) -> None:
        """Test closure under shrinking D, and I while I stays nonempty."""
        system = PartizationSystem(g)
        n = g.n
        independent = 0
        for v in data.draw(st.sets(st.integers(0, max(n - 1, 0)))):
            if v < n and g.is_independent_mask(independent | 1 << v):
                independent |= 1 << v
        copies = 0
        if independent:
            reach = system.dominators(independent)
            copies = reach & data.draw(st.integers(0, (1 << n) - 1))
        mask = independent | copies << n
        assert system.contains(mask)
        for v in iter_bits(copies):
            assert system.contains(mask & ~(1 << (n + v)))
        if independent & (independent - 1):
            for v in iter_bits(independent):
                assert system.contains(mask & ~(1 << v))


class TestTransforms:
    def test_zeta(self) -> None:
        """Test subset sums over two bits."""
        f = np.array([1, 1, 1, 1], dtype=np.int64)
        assert zeta_transform(f, 2).tolist() == [1, 2, 2, 4]

    def test_zeta_ranked(self) -> None:
        """Test that leading axes are transformed independently."""
        f = np.array([[1, 0], [0, 1]], dtype=np.int64)
        assert zeta_transform(f, 1).tolist() == [[1, 1], [0, 1]]

    def test_parity(self) -> None:
        """Test odd popcount flags."""
        assert popcount_parity(2).tolist() == [False, True, True, False]

    def test_counting_primes(self) -> None:
        """Test that the primes are reproducible, distinct and in range."""
        first, second = counting_primes(7)
        assert (first, second) == counting_primes(7)
        assert first != second
        for p in (first, second):
            assert sympy.isprime(p)
            assert COUNT_PRIME_LOW <= p < COUNT_PRIME_HIGH


class TestShortcuts:
    def test_drop_isolated(self) -> None:
        """Test that isolated vertices take one color each."""
        g = disjoint_union(complete(2), empty(2))
        reduced, ell = drop_isolated(g, 4)
        assert reduced == complete(2)
        assert ell == 2

    def test_vertex_cover_shortcut(self, claw: Graph) -> None:
        """Test the vertex cover bounds of a star."""
        assert vertex_cover_shortcut(claw, 2, cd=False) is True
        assert vertex_cover_shortcut(claw, 2, cd=True) is None
        assert vertex_cover_shortcut(claw, 3, cd=True) is True

    def test_shortcut_needs_connected(self, two_cliques: Graph) -> None:
        """Test that disconnected graphs are left undecided."""
        assert vertex_cover_shortcut(two_cliques, 4, cd=False) is None

    def test_vertex_cover_coloring(self, p4: Graph) -> None:
        """Test the 2k coloring built from a vertex cover."""
        coloring = cdcol_vertex_cover_coloring(p4)
        assert coloring.assignment == (0, 2, 1, 3)
        assert validate_cdcol(p4, coloring) is not None

    def test_vertex_cover_coloring_disconnected(
        self, two_cliques: Graph
    ) -> None:
        """Test that the construction needs a connected graph."""
        with pytest.raises(UsageError, match="connected"):
            cdcol_vertex_cover_coloring(two_cliques)


class TestExact:
    def test_p4(self, p4: Graph) -> None:
        """Test the thresholds of P_4."""
        assert domcol_exact(p4, 3)
        assert not domcol_exact(p4, 2)
        assert cdcol_exact(p4, 2)
        assert not cdcol_exact(p4, 1)

    def test_cluster(self, two_cliques: Graph) -> None:
        """Test a cluster graph, where CD coloring needs n colors."""
        assert domcol_exact(two_cliques, 4)
        assert not domcol_exact(two_cliques, 3)
        assert cdcol_exact(two_cliques, 5)
        assert not cdcol_exact(two_cliques, 4)

    def test_trivial(self, p3: Graph) -> None:
        """Test ell >= n and ell <= 0."""
        assert domcol_exact(p3, 3)
        assert not domcol_exact(p3, 0)
        assert domcol_exact(empty(0), 0)

    def test_guard(self) -> None:
        """Test that graphs above the guard are refused."""
        with pytest.raises(GuardExceededError, match="exact_domcol_max_n"):
            domcol_exact(empty(4), 1, guards=Guards(exact_domcol_max_n=3))
        with pytest.raises(GuardExceededError, match="exact_cdcol_max_n"):
            cdcol_exact(empty(4), 1, guards=Guards(exact_cdcol_max_n=3))

    def test_matches_oracle(self, rng: random.Random) -> None:
        """Test both decisions against the oracle on random graphs."""
        for _ in range(12):
            g = random_graph(rng, rng.randint(1, 5), rng.choice([0.3, 0.6]))
            domcol_opt = domcol_optimum(g).optimum
            cdcol_opt = cdcol_optimum(g).optimum
            for ell in range(g.n + 1):
                assert domcol_exact(g, ell) == (ell >= domcol_opt), g
                assert cdcol_exact(g, ell) == (ell >= cdcol_opt), g


@pytest.mark.slow
class TestExactSweep:
    def test_matches_oracle(self) -> None:
        """Test both decisions on 300 random graphs with n <= 7."""
        rng = random.Random(300)
        for _ in range(300):
            g = random_graph(rng, rng.randint(1, 7), rng.choice([0.3, 0.5]))
            domcol_opt = domcol_optimum(g).optimum
            cdcol_opt = cdcol_optimum(g).optimum
            for ell in (domcol_opt - 1, domcol_opt):
                assert domcol_exact(g, ell) == (ell >= domcol_opt), g
            for ell in (cdcol_opt - 1, cdcol_opt):
                assert cdcol_exact(g, ell) == (ell >= cdcol_opt), g
