import pytest

from domcol.const import GenKind
from domcol.errors import UsageError
from domcol.generate import InstanceGenSpec, generate
from domcol.graph import is_clique_modulator, is_cvd_set, is_twin_cover


class TestGenerate:
    def test_reproducible(self) -> None:
        """Test that a generator and trial always give the same graph."""
        spec = InstanceGenSpec(GenKind.CVD, seed=9)
        assert generate(spec, 2) == generate(spec, 2)
        graphs = {generate(spec, t).graph for t in range(8)}
        assert len(graphs) > 1

    def test_cluster_plus_modulator(self) -> None:
        """Test that the modulator leaves a single clique."""
        spec = InstanceGenSpec(
            GenKind.CLUSTER_PLUS_MODULATOR, min_clique=3, max_clique=3, k=2
        )
        inst = generate(spec)
        assert inst.graph.n == 5
        assert inst.modulator == {3, 4}
        assert is_clique_modulator(inst.graph, inst.modulator)

    @pytest.mark.parametrize("trial", range(4))
    def test_twin_cover(self, trial: int) -> None:
        """Test the twin cover promise."""
        spec = InstanceGenSpec(GenKind.TWIN_COVER, q=3, k=2, seed=1)
        inst = generate(spec, trial)
        assert len(inst.modulator) == 2
        assert is_twin_cover(inst.graph, inst.modulator)

    @pytest.mark.parametrize("trial", range(4))
    def test_cvd(self, trial: int) -> None:
        """Test the deletion set promise."""
        spec = InstanceGenSpec(GenKind.CVD, q=3, k=2, seed=1)
        inst = generate(spec, trial)
        assert is_cvd_set(inst.graph, inst.modulator)

    def test_gnp(self) -> None:
        """Test that random graphs have the requested size and no set."""
        inst = generate(InstanceGenSpec(GenKind.GNP, n=7, p=1.0))
        assert inst.graph.n == 7
        assert inst.graph.m == 21
        assert inst.modulator == frozenset()

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_attachment_extremes(self, p: float) -> None:
        """Test that p = 0 attaches nothing and p = 1 attaches everything."""
        spec = InstanceGenSpec(
            GenKind.TWIN_COVER, q=2, min_clique=2, max_clique=2, k=2, p=p
        )
        g = generate(spec).graph
        # cliques 0-1 and 2-3, modulator 4-5
        assert g.has_edge(4, 5) == (p == 1.0)
        for u in (4, 5):
            assert all(g.has_edge(u, v) == (p == 1.0) for v in range(4))

    @pytest.mark.parametrize(
        "spec, message",
        [
            (InstanceGenSpec(GenKind.GNP, n=-1), "nonnegative"),
            (InstanceGenSpec(GenKind.CVD, min_clique=0), "clique size"),
            (
                InstanceGenSpec(GenKind.CVD, min_clique=3, max_clique=2),
                "clique size",
            ),
            (InstanceGenSpec(GenKind.GNP, p=1.5), "edge probability"),
        ],
    )
    def test_invalid(self, spec: InstanceGenSpec, message: str) -> None:
        """Test that impossible sizes are rejected."""
        with pytest.raises(UsageError, match=message):
            generate(spec)
