"""
Tests for the brute-force oracles.
"""

import pytest

from domcol.config import Guards
from domcol.const import Problem
from domcol.errors import GuardExceededError, UsageError
from domcol.graph import (
    Graph,
    complete,
    cycle,
    disjoint_union,
    empty,
    validate,
)
from domcol.oracle import (
    cdcol_optimum,
    cdcol_within,
    chromatic_number,
    domcol_optimum,
    domcol_within,
    hitting_set_oracle,
    list_coloring_oracle,
    optimum,
    proper_colorings,
)


class TestOptimum:
    @pytest.mark.parametrize(
        "g, domcol, cdcol",
        [
            (complete(4), 4, 4),
            (empty(3), 3, 3),
            (cycle(4), 2, 2),
            (disjoint_union(complete(2), complete(3)), 4, 5),
        ],
    )
    def test_known_values(self, g: Graph, domcol: int, cdcol: int) -> None:
        """Test optima of named graphs."""
        assert domcol_optimum(g).optimum == domcol
        assert cdcol_optimum(g).optimum == cdcol

    def test_paths(self, p3: Graph, p4: Graph) -> None:
        """Test that P_4 separates the two problems."""
        assert domcol_optimum(p3).optimum == 2
        assert cdcol_optimum(p3).optimum == 2
        assert domcol_optimum(p4).optimum == 3
        assert cdcol_optimum(p4).optimum == 2

    def test_claw(self, claw: Graph) -> None:
        """Test the optimum of K_{1,3}."""
        for problem in Problem:
            assert optimum(claw, problem).optimum == 2

    def test_empty_graph(self) -> None:
        """Test that the graph without vertices needs no colors."""
        assert domcol_optimum(empty(0)).optimum == 0

    @pytest.mark.parametrize("problem", list(Problem))
    def test_witness_is_valid(self, p4: Graph, problem: Problem) -> None:
        """Test that the returned coloring and witness agree."""
        answer = optimum(p4, problem)
        assert answer.coloring.num_colors == answer.optimum
        assert validate(p4, answer.coloring, problem) == answer.witness

    def test_guard(self, p3: Graph) -> None:
        """Test that graphs above the guard are refused."""
        with pytest.raises(GuardExceededError, match="oracle_max_n=2"):
            domcol_optimum(p3, Guards(oracle_max_n=2))


class TestWithin:
    def test_bounded(self, p4: Graph) -> None:
        """Test the bounded searches at and below the optimum."""
        assert domcol_within(p4, 2) is None
        found = domcol_within(p4, 3)
        assert found is not None and found.num_colors <= 3
        assert cdcol_within(p4, 1) is None
        assert cdcol_within(p4, 2) is not None

    def test_zero_colors(self, p3: Graph) -> None:
        """Test that no colors never suffice for a nonempty graph."""
        assert domcol_within(p3, 0) is None


class TestEnumeration:
    def test_proper_colorings(self, p3: Graph) -> None:
        """Test that each partition is produced once."""
        two = [list(c) for c in proper_colorings(p3, 2)]
        assert two == [[0b101, 0b010]]
        assert len(list(proper_colorings(p3, 3))) == 2

    def test_chromatic_number(self, c4: Graph) -> None:
        """Test chromatic numbers of cycles."""
        assert chromatic_number(c4) == 2
        assert chromatic_number(cycle(5)) == 3
        assert chromatic_number(empty(0)) == 0


class TestListColoring:
    def test_feasible(self, triangle: Graph) -> None:
        """Test a list assignment with one solution."""
        found = list_coloring_oracle(triangle, {0: [1], 1: [1, 2], 2: [2, 3]})
        assert found is not None
        assert found.assignment == (1, 2, 3)

    def test_infeasible(self) -> None:
        """Test that adjacent vertices with one shared color fail."""
        assert list_coloring_oracle(complete(2), {0: [1], 1: [1]}) is None

    def test_missing_list(self, p3: Graph) -> None:
        """Test that every vertex needs a list."""
        with pytest.raises(UsageError, match="no list"):
            list_coloring_oracle(p3, {0: [1]})


class TestHittingSet:
    def test_hit(self) -> None:
        """Test a family hit by one shared element."""
        assert hitting_set_oracle(3, [{0, 1}, {1, 2}], 1)

    def test_miss(self) -> None:
        """Test a family that needs two elements."""
        assert not hitting_set_oracle(3, [{0}, {2}], 1)
        assert hitting_set_oracle(3, [{0}, {2}], 2)

    def test_empty_family(self) -> None:
        """Test that the empty family is hit by the empty set."""
        assert hitting_set_oracle(2, [], 0)

    def test_outside_universe(self) -> None:
        """Test elements outside the universe."""
        with pytest.raises(UsageError, match="leaves the universe"):
            hitting_set_oracle(2, [{3}], 1)
