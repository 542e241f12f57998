"""Unit tests for RepresentationAnalysis use case."""

from app.application.use_cases.representation_theory import RepresentationAnalysis


class TestRepresentationAnalysis:
    """Test cases for RepresentationAnalysis."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.analysis = RepresentationAnalysis()

    def test_graph_report_gamma1(self) -> None:
        """Test the nonorientable coset graph with its odd-cycle witness."""
        report = self.analysis.graph_report("gamma1")

        assert report.generator_set == "sigma_t_u"
        assert report.generators[1:] == ["t", "u"]
        assert report.vertex_count == 8
        assert len(report.full_edges) == 10
        assert not report.orientable
        assert report.witness_cycle == [1, 3, 6, 2, 7]
        assert report.coloring is None

    def test_graph_report_gamma2(self) -> None:
        """Test the orientable coset graph with its two-colouring."""
        report = self.analysis.graph_report("gamma2")

        assert report.orientable
        assert report.coloring == [0, 1, 1, 1, 1, 0, 0, 0]
        assert report.witness_cycle is None

    def test_character_table_report(self) -> None:
        """Test the printed character table."""
        report = self.analysis.character_table_report()

        assert report.orthonormal
        assert report.column_orthogonal
        assert len(report.rows) == 11
        assert report.classes[:2] == ["1", "s^4"]
        assert [row.dimension for row in report.rows][-3:] == [2, 2, 4]

    def test_decomposition(self) -> None:
        """Test that C[G/Γ2] decomposes like C[G/Γ1]."""
        first = self.analysis.decomposition("gamma1")
        second = self.analysis.decomposition("gamma2")

        assert set(first.components) == {"1", "1-", "W+", "X"}
        assert first.multiplicities == second.multiplicities
        assert first.induced[0] == "8"

    def test_default_intertwiner(self) -> None:
        """Test the four-dimensional intertwiner space and the default matrix."""
        report, matrix = self.analysis.intertwiners()

        assert report.dimension == 4
        assert report.intertwines
        assert report.invertible
        assert report.parameters == ["6", "-2", "2", "2"]
        assert (report.alpha, report.beta, report.gamma, report.delta) == ("1", "2", "0", "0")
        assert matrix.is_integral()

    def test_singular_intertwiner(self) -> None:
        """Test that d = 0 gives a singular intertwiner."""
        report, _ = self.analysis.intertwiners((6, -2, 2, 0))

        assert report.intertwines
        assert not report.invertible

    def test_intertwiner_into_same_quotient(self) -> None:
        """Test that A does not intertwine C[G/Γ1] with itself."""
        report, _ = self.analysis.intertwiners(h2="gamma1")

        assert not report.intertwines

    def test_permutation_representations(self) -> None:
        """Test permutation matrices of degree eight on both quotients."""
        first, second = self.analysis.permutation_representations()

        assert first.degree == second.degree == 8
