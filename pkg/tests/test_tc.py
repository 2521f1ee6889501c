"""
Tests for the twin-cover solvers and the shared extension machinery.
"""

from itertools import islice

import pytest
import sympy

from domcol.const import GenKind, Problem
from domcol.errors import UsageError
from domcol.generate import InstanceGenSpec, generate
from domcol.graph import (
    Coloring,
    Graph,
    cluster_cliques,
    complete,
    empty,
    iter_bits,
    mask_of,
    path,
    true_twin_classes,
    validate,
    validate_cdcol,
    validate_domcol,
)
from domcol.ilp import CoveringILP, solve_covering_ilp
from domcol.oracle import (
    cdcol_optimum,
    domcol_optimum,
    optimum,
    proper_colorings,
)
from domcol.tc import (
    DominatorColumn,
    PartialCDColoring,
    PartialDominatorColoring,
    build_covering_ilp,
    cdcol_tc,
    cdcol_tc_coloring,
    domcol_tc,
    domcol_tc_coloring,
    extend_cdcol_disjoint,
    extend_domcol,
    gamma_cdcol,
    gamma_domcol,
    lift_coloring,
    list_coloring_cluster,
    modulator_partitions,
    remove_isolated_cliques,
    saturating_matching,
    twin_cover_columns,
)
from tests.strategies import instances

SMALL_TWIN_COVER = InstanceGenSpec(
    GenKind.TWIN_COVER, q=2, min_clique=1, max_clique=2, k=2, seed=11
)


class TestHelpers:
    def test_saturating_matching(self) -> None:
        """Test distinct values for every key."""
        assert saturating_matching({"a": [1, 2], "b": [1]}) == {"a": 2, "b": 1}
        assert saturating_matching({"a": [1], "b": [1]}) is None
        assert saturating_matching({}) == {}

    def test_modulator_partitions(self, p3: Graph) -> None:
        """Test partitions into independent parts."""
        assert list(modulator_partitions(p3, [0, 1, 2])) == [
            (0b101, 0b010),
            (0b001, 0b010, 0b100),
        ]

    def test_dominated_partitions(self) -> None:
        """Test that dominated parts need a common neighbour."""
        g = empty(2)
        assert list(modulator_partitions(g, [0, 1])) == [(0b11,), (1, 2)]
        assert list(modulator_partitions(g, [0, 1], dominated=True)) == [
            (1, 2)
        ]

    def test_lift_coloring(self) -> None:
        """Test that removed vertices get colors of their own."""
        lifted = lift_coloring(4, (1, 3), Coloring((0, 1)))
        assert lifted.assignment == (2, 0, 3, 1)

    def test_list_coloring_cluster(self, two_cliques: Graph) -> None:
        """Test list coloring clique by clique."""
        lists = {0: [1, 2], 1: [1], 2: [1, 2, 3], 3: [2], 4: [2, 3]}
        found = list_coloring_cluster(two_cliques, lists)
        assert found is not None
        assert found.assignment == (2, 1, 1, 2, 3)
        lists[4] = [2]
        assert list_coloring_cluster(two_cliques, lists) is None

    def test_list_coloring_errors(self, p3: Graph) -> None:
        """Test list coloring input checks."""
        with pytest.raises(UsageError, match="cluster graph"):
            list_coloring_cluster(p3, {0: [1], 1: [2], 2: [1]})
        with pytest.raises(UsageError, match="no list"):
            list_coloring_cluster(complete(2), {0: [1]})


class TestPartialColorings:
    def test_dominator_validate(self, claw: Graph) -> None:
        """Test a valid partial dominator coloring of a star."""
        PartialDominatorColoring({0: 0}, (0, 0, 0, 0)).validate(claw, 0b1)

    @pytest.mark.parametrize(
        "chi, delta, message",
        [
            ({}, (0, 0, 0, 0), "uncolored"),
            ({0: 0}, (0, 0), "delta covers"),
            ({0: 0, 1: 0}, (0, 0, 0, 0), "not proper"),
            ({0: 0, 1: 1}, (0, 0, 1, 0), "does not dominate"),
        ],
    )
    def test_dominator_invalid(
        self,
        claw: Graph,
        chi: dict[int, int],
        delta: tuple[int, ...],
        message: str,
    ) -> None:
        """Test rejected partial dominator colorings."""
        with pytest.raises(UsageError, match=message):
            PartialDominatorColoring(chi, delta).validate(claw, 0b1)

    def test_cd_validate(self) -> None:
        """Test that every partial class needs a dominator."""
        g = empty(2)
        PartialCDColoring({0: 0, 1: 1}).validate(g, 0b11)
        with pytest.raises(UsageError, match="no dominator"):
            PartialCDColoring({0: 0, 1: 0}).validate(g, 0b11)

    def test_used_and_colored(self) -> None:
        """Test the convenience views."""
        pcd = PartialCDColoring({0: 3, 2: 3, 1: 4})
        assert pcd.colored == {0, 1, 2}
        assert pcd.used == {3, 4}


class TestDomColTwinCover:
    def test_claw(self, claw: Graph) -> None:
        """Test a star with its center as twin cover."""
        assert domcol_tc(claw, [0], 2)
        assert not domcol_tc(claw, [0], 1)

    def test_c4(self, c4: Graph) -> None:
        """Test C_4 with two opposite vertices as twin cover."""
        assert domcol_tc(c4, [0, 2], 2)
        assert not domcol_tc(c4, [0, 2], 1)

    def test_not_a_twin_cover(self, c4: Graph) -> None:
        """Test that two adjacent vertices of C_4 are rejected."""
        with pytest.raises(UsageError, match="not a twin cover"):
            domcol_tc(c4, [0, 1], 2)

    def test_cluster(self, two_cliques: Graph) -> None:
        """Test a cluster graph with an empty twin cover."""
        assert domcol_tc(two_cliques, [], 4)
        assert not domcol_tc(two_cliques, [], 3)

    def test_isolated_vertices(self) -> None:
        """Test that isolated vertices are colored on their own."""
        g = Graph.from_edges(4, [(0, 1)])
        coloring = domcol_tc_coloring(g, [0], 4)
        assert coloring is not None
        assert validate_domcol(g, coloring) is not None
        assert not domcol_tc(g, [0], 3)

    def test_gamma_claw(self, claw: Graph) -> None:
        """Test the members for a star: one per split of the center."""
        members = list(gamma_domcol(claw, [0]))
        assert len(members) == 2
        for pdc in members:
            pdc.validate(claw, 0b1)

    def test_gamma_cluster(self, two_cliques: Graph) -> None:
        """Test that each clique gets a unique color without a modulator."""
        (pdc,) = gamma_domcol(two_cliques, [])
        assert pdc.chi == {0: 0, 2: 1}
        assert pdc.delta == (0, 0, 1, 1, 1)

    def test_extend(self, claw: Graph) -> None:
        """Test extending the member that keeps the center's color alone."""
        pdc = next(
            p
            for p in gamma_domcol(claw, [0])
            if p.provenance is not None and p.provenance.split == 0
        )
        assert extend_domcol(claw, [0], pdc, 2)
        assert not extend_domcol(claw, [0], pdc, 1)

    def test_matches_oracle(self) -> None:
        """Test the decision against the oracle on generated graphs."""
        for trial in range(5):
            inst = generate(SMALL_TWIN_COVER, trial)
            g, m = inst.graph, inst.modulator
            opt = domcol_optimum(g).optimum
            for ell in (opt - 1, opt, opt + 1):
                coloring = domcol_tc_coloring(g, m, ell)
                assert (coloring is not None) == (ell >= opt)
                if coloring is not None:
                    assert coloring.num_colors <= ell
                    assert validate_domcol(g, coloring) is not None

    def test_twin_swap(self) -> None:
        """Test that swapping true twins keeps a coloring valid."""
        for trial in range(5):
            inst = generate(SMALL_TWIN_COVER, trial)
            g = inst.graph
            coloring = domcol_tc_coloring(g, inst.modulator, g.n)
            assert coloring is not None
            for twins in true_twin_classes(g):
                members = list(iter_bits(twins))
                for u, v in zip(members, members[1:]):
                    swapped = coloring.swapped(u, v)
                    assert validate_domcol(g, swapped) is not None


class TestCDTwinCover:
    def test_c4(self, c4: Graph) -> None:
        """Test C_4 with two opposite vertices as twin cover."""
        assert cdcol_tc(c4, [0, 2], 2)
        assert not cdcol_tc(c4, [0, 2], 1)

    def test_claw(self, claw: Graph) -> None:
        """Test a star with its center as twin cover."""
        coloring = cdcol_tc_coloring(claw, [0], 2)
        assert coloring is not None
        assert validate_cdcol(claw, coloring) is not None
        assert not cdcol_tc(claw, [0], 1)

    def test_cluster(self, two_cliques: Graph) -> None:
        """Test that a cluster graph needs one color per vertex."""
        assert cdcol_tc(two_cliques, [], 5)
        assert not cdcol_tc(two_cliques, [], 4)

    def test_gamma_without_modulator(self, triangle: Graph) -> None:
        """Test the single empty member for an empty twin cover."""
        (pcd,) = gamma_cdcol(triangle, [])
        assert pcd.chi == {}

    def test_remove_isolated_cliques(self, two_cliques: Graph) -> None:
        """Test that cliques away from M are dropped with their colors."""
        reduced = remove_isolated_cliques(two_cliques, 6)
        assert reduced.graph == empty(0)
        assert reduced.ell == 1
        kept = remove_isolated_cliques(two_cliques, 6, [0])
        assert kept.graph == complete(2)
        assert kept.ell == 3
        assert kept.modulator == (0,)
        assert kept.kept == (0, 1)

    def test_covering_ilp(self, triangle: Graph) -> None:
        """Test the program for a triangle with one colored vertex."""
        columns = twin_cover_columns(triangle, [0], 0b110)
        assert columns == [DominatorColumn(0, 0b110)]
        ilp = build_covering_ilp([0b110], 0b110, columns)
        assert ilp == CoveringILP(((1,),), (2,))

    def test_covering_ilp_groups(self) -> None:
        """Test one row per nonempty set of reach groups."""
        columns = [DominatorColumn(0, 0b0010), DominatorColumn(3, 0b0100)]
        ilp = build_covering_ilp([0b0110], 0b0110, columns)
        assert ilp.a == ((1, 0), (0, 1), (1, 1))
        assert ilp.b == (1, 1, 2)

    def test_disjoint_extension(self, triangle: Graph) -> None:
        """Test the budget of a disjoint extension."""
        pcd = PartialCDColoring({0: 0})
        assert extend_cdcol_disjoint(triangle, [0], pcd, 3)
        assert not extend_cdcol_disjoint(triangle, [0], pcd, 2)

    def test_matches_oracle(self) -> None:
        """Test the decision against the oracle on generated graphs."""
        for trial in range(5):
            inst = generate(SMALL_TWIN_COVER, trial)
            g, m = inst.graph, inst.modulator
            opt = cdcol_optimum(g).optimum
            for ell in (opt - 1, opt, opt + 1):
                coloring = cdcol_tc_coloring(g, m, ell)
                assert (coloring is not None) == (ell >= opt)
                if coloring is not None:
                    assert coloring.num_colors <= ell
                    assert validate_cdcol(g, coloring) is not None

    def test_cluster_classes_dominated_by_modulator(self) -> None:
        """Test that classes avoiding M have a dominator in M."""
        for trial in range(5):
            inst = generate(SMALL_TWIN_COVER, trial)
            g, m = inst.graph, inst.modulator
            reduced = remove_isolated_cliques(g, g.n, m)
            if reduced.graph != g:
                continue
            coloring = cdcol_tc_coloring(g, m, cdcol_optimum(g).optimum)
            assert coloring is not None
            modulator = mask_of(m)
            for cls in coloring.classes().values():
                if not cls & modulator:
                    assert g.common_closed_mask(cls) & modulator

    def test_path_cover(self) -> None:
        """Test P_3 with its center as twin cover."""
        assert cdcol_tc(path(3), [1], 2)
        assert not cdcol_tc(path(3), [1], 1)


@pytest.fixture
def uneven_cliques() -> Graph:
    """
    Fixture providing M = {0, 1, 2} with the cliques {3} next to 0 and 1,
    {4, 5, 6} next to 0 and {7} next to 2.
    """
    edges = [(3, 0), (3, 1), (7, 2), (4, 5), (4, 6), (5, 6)]
    edges += [(0, v) for v in (4, 5, 6)]
    return Graph.from_edges(8, edges)


def minimum_disjoint_extension(g: Graph, pcd: PartialCDColoring) -> int:
    """Fewest colors of a CD coloring that extends pcd with new classes."""
    free = g.full_mask & ~mask_of(pcd.chi)
    h, order = g.induced(iter_bits(free))
    best = None
    for classes in proper_colorings(h, h.n):
        mapped = [mask_of(order[i] for i in iter_bits(c)) for c in classes]
        if all(g.common_closed_mask(c) for c in mapped):
            if best is None or len(classes) < best:
                best = len(classes)
    assert best is not None
    return len(pcd.used) + best


class TestCDTwinCoverCoverage:
    def test_rows_met_by_earlier_columns(self, uneven_cliques: Graph) -> None:
        """Test a yes instance whose program meets some rows early."""
        m = [0, 1, 2]
        assert cdcol_optimum(uneven_cliques).optimum == 6
        coloring = cdcol_tc_coloring(uneven_cliques, m, 6)
        assert coloring is not None
        assert coloring.num_colors <= 6
        assert validate_cdcol(uneven_cliques, coloring) is not None
        assert not cdcol_tc(uneven_cliques, m, 5)

    def test_disjoint_extension_minimum(self) -> None:
        """Test the program optimum against every disjoint extension."""
        checked = 0
        for inst in instances(GenKind.TWIN_COVER, 200, 7, 3, seed=26):
            if checked >= 50:
                break
            g, m = inst.graph, inst.modulator
            reduced = remove_isolated_cliques(g, g.n, m)
            h, mod = reduced.graph, list(reduced.modulator)
            modulator = mask_of(mod)
            cluster = h.full_mask & ~modulator
            cliques = cluster_cliques(h, modulator)
            columns = twin_cover_columns(h, mod, cluster)
            for pcd in islice(gamma_cdcol(h, mod), 3):
                uncolored = cluster & ~mask_of(pcd.chi)
                ilp = build_covering_ilp(cliques, uncolored, columns)
                expected = len(pcd.used) + solve_covering_ilp(ilp)
                assert minimum_disjoint_extension(h, pcd) == expected
                checked += 1
        assert checked >= 50

    def test_gamma_size_bounds(self) -> None:
        """Test the counted family sizes against their bounds."""
        for inst in instances(GenKind.TWIN_COVER, 20, 8, 3, seed=19):
            g, m = inst.graph, inst.modulator
            k = len(m)
            bell = int(sympy.bell(k))
            domcol_members = sum(1 for _ in gamma_domcol(g, m))
            assert domcol_members <= bell * 2**k * (2 * k) ** k
            reduced = remove_isolated_cliques(g, g.n, m)
            cd_members = sum(
                1 for _ in gamma_cdcol(reduced.graph, reduced.modulator)
            )
            assert cd_members <= bell * 2**k * k**k

    def test_extend_domcol_monotone(self) -> None:
        """Test that a member extending within l colors extends within l+1."""
        for inst in instances(GenKind.TWIN_COVER, 10, 7, 2, seed=8):
            g, m = inst.graph, inst.modulator
            for pdc in gamma_domcol(g, m):
                answers = [
                    extend_domcol(g, m, pdc, ell) for ell in range(g.n + 2)
                ]
                assert answers == sorted(answers)


@pytest.mark.slow
class TestTwinCoverSweep:
    @pytest.mark.parametrize("problem", list(Problem))
    def test_matches_oracle(self, problem: Problem) -> None:
        """Test both decisions against the oracle on 200 instances."""
        build = (
            domcol_tc_coloring
            if problem is Problem.DOMCOL
            else cdcol_tc_coloring
        )
        for inst in instances(GenKind.TWIN_COVER, 200, 8, 3, seed=200):
            g, m = inst.graph, inst.modulator
            opt = optimum(g, problem).optimum
            for ell in (opt - 1, opt, opt + 1):
                coloring = build(g, m, ell)
                assert (coloring is not None) == (ell >= opt), (g, m, ell)
                if coloring is not None:
                    assert coloring.num_colors <= ell
                    assert validate(g, coloring, problem) is not None
