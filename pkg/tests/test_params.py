import pytest
from hypothesis import given, settings

from domcol.const import ParamKind
from domcol.graph import (
    Graph,
    complete,
    is_clique_modulator,
    is_cvd_set,
    is_twin_cover,
)
from domcol.params import (
    all_params,
    find_clique_modulator,
    find_cvd_set,
    find_param,
    find_twin_cover,
    find_vertex_cover,
)
from tests.strategies import graphs

PROMISES = {
    ParamKind.CLIQUE_MODULATOR: is_clique_modulator,
    ParamKind.TWIN_COVER: is_twin_cover,
    ParamKind.CVD_SET: is_cvd_set,
}


class TestParams:
    def test_claw(self, claw: Graph) -> None:
        """Test the three parameters of K_{1,3}."""
        modulator = find_clique_modulator(claw)
        assert modulator is not None
        assert modulator.set == {1, 2}
        assert modulator.k == 2

        cvd = find_cvd_set(claw)
        assert cvd is not None and cvd.set == {0}
        cover = find_twin_cover(claw)
        assert cover is not None and cover.set == {0}

    def test_complete(self) -> None:
        """Test that a clique needs no deletions."""
        for kind in ParamKind:
            result = find_param(complete(4), kind)
            assert result is not None
            assert result.set == frozenset()

    def test_cluster(self, two_cliques: Graph) -> None:
        """Test a cluster graph: the smaller clique is the modulator."""
        found = all_params(two_cliques)
        assert found[ParamKind.CLIQUE_MODULATOR].set == {0, 1}
        assert found[ParamKind.TWIN_COVER].set == frozenset()
        assert found[ParamKind.CVD_SET].set == frozenset()

    def test_to_dict(self, two_cliques: Graph) -> None:
        """Test that a result reports its size with 1-based members."""
        found = all_params(two_cliques)
        out = found[ParamKind.CLIQUE_MODULATOR].to_dict()
        assert out == {"k": 2, "set": [1, 2]}
        assert found[ParamKind.TWIN_COVER].to_dict() == {"k": 0, "set": []}

    def test_lexicographic_tie_break(self, p4: Graph) -> None:
        """Test that ties between minimum twin covers pick the smallest."""
        cover = find_twin_cover(p4)
        assert cover is not None
        assert cover.set == {0, 2}

    def test_budget(self, claw: Graph) -> None:
        """Test that a budget below the minimum gives None."""
        assert find_clique_modulator(claw, 1) is None
        assert find_clique_modulator(claw, 2) is not None
        assert find_param(claw, ParamKind.CVD_SET, -1) is None

    def test_vertex_cover(self, c4: Graph) -> None:
        """Test minimum vertex cover of C_4."""
        assert find_vertex_cover(c4) == {0, 2}
        assert find_vertex_cover(c4, 1) is None

    @pytest.mark.parametrize("kind", list(ParamKind))
    @settings(max_examples=25, deadline=None)
    @given(g=graphs(max_n=6))
    def test_result_satisfies_promise(self, kind: ParamKind, g: Graph) -> None:
        """Test that every found set has its structural property."""
        result = find_param(g, kind)
        assert result is not None
        assert PROMISES[kind](g, result.set)
        if result.k:
            smaller = find_param(g, kind, result.k - 1)
            assert smaller is None
