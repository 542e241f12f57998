"""Unit tests for Transplantation use case."""

import numpy as np
import pytest

from app.application.use_cases.representation_theory import RepresentationAnalysis
from app.application.use_cases.spectral_solver import SpectralSolver
from app.application.use_cases.transplantation import (
    Transplantation,
    check_edge_compatibility,
    eigen_residual,
    intertwining_defect,
    transplant,
    transplant_operator,
)
from app.domain.entities.discrete_function import DiscreteFunction
from app.domain.entities.discrete_operator import assemble
from app.domain.entities.surface_mesh import assemble_surface
from app.domain.entities.tile_mesh import mesh_tile
from app.domain.errors import GluingConsistencyError
from app.domain.value_objects.tile_spec import builtin_tile
from app.domain.value_objects.transplant_matrix import transplantation_matrix


class TestTransplantation:
    """Test cases for transplanting functions between M1 and M2."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        analysis = RepresentationAnalysis()
        tile_mesh = mesh_tile(builtin_tile("hexagon3"), 2)
        self.m1 = assemble_surface(analysis.schreier_graph("gamma1"), tile_mesh, name="M1")
        self.m2 = assemble_surface(analysis.schreier_graph("gamma2"), tile_mesh, name="M2")
        self.matrix = transplantation_matrix()

    def test_constant_is_transplanted_to_constant(self) -> None:
        """Test that A maps constants to constants scaled by its column sum."""
        f = DiscreteFunction.constant(self.m1)
        h = transplant(f, self.matrix.as_array(), self.m2)

        row_sum = float(self.matrix.as_array().sum(axis=0)[0])
        assert h.is_well_defined()
        assert np.allclose(h.values, row_sum)

    def test_generic_function_respects_target_gluing(self) -> None:
        """Test that any function on M1 transplants to a function on M2."""
        values = np.sin(np.arange(self.m1.node_count, dtype=float))
        f = DiscreteFunction.from_global(self.m1, values)

        h = transplant(f, self.matrix.as_array(), self.m2)

        assert max(r.residual for r in check_edge_compatibility(h)) <= 1e-12

    def test_identity_breaks_gluing(self) -> None:
        """Test that copying tiles one to one does not glue consistently."""
        values = np.arange(self.m1.node_count, dtype=float)
        f = DiscreteFunction.from_global(self.m1, values)

        with pytest.raises(GluingConsistencyError) as excinfo:
            transplant(f, np.eye(8), self.m2)
        assert excinfo.value.residual > 0

    def test_wrong_matrix_shape(self) -> None:
        """Test that the matrix must map eight tiles to eight tiles."""
        f = DiscreteFunction.constant(self.m1)

        with pytest.raises(ValueError):
            transplant(f, np.eye(4), self.m2)

    def test_transplant_operator_matches_tile_transplant(self) -> None:
        """Test the nodal matrix against tile-by-tile transplantation."""
        values = np.cos(np.arange(self.m1.node_count, dtype=float))
        f = DiscreteFunction.from_global(self.m1, values)
        h = transplant(f, self.matrix.as_array(), self.m2)

        operator = transplant_operator(self.m1, self.m2, self.matrix.as_array())
        assert operator.shape == (self.m2.node_count, self.m1.node_count)
        assert np.allclose(operator @ values, h.values)

    def test_exact_intertwining_defect(self) -> None:
        """Test that graph-mode operators intertwine exactly."""
        defect = intertwining_defect(self.m1, self.m2, self.matrix, mode="graph")

        assert defect.exact_arithmetic
        assert defect.stiffness == 0
        assert defect.mass == 0
        assert defect.vanishes

    def test_fem_intertwining_defect(self) -> None:
        """Test that FEM operators intertwine up to rounding."""
        defect = intertwining_defect(self.m1, self.m2, self.matrix, mode="fem")

        assert not defect.exact_arithmetic
        assert defect.stiffness < 1e-9
        assert defect.mass < 1e-9

    def test_eigen_residual_of_constant(self) -> None:
        """Test the Neumann kernel has no eigen-residual."""
        op = assemble(self.m2, self.m2.all_neumann(), "graph")

        assert eigen_residual(op, DiscreteFunction.constant(self.m2), 0.0) == pytest.approx(0.0)

    def test_verify(self) -> None:
        """Test transplanting the lowest Neumann eigenfunctions both ways."""
        report = Transplantation(SpectralSolver()).verify(
            self.m1, self.m2, self.matrix, count=6, mode="graph"
        )

        assert report.passed
        assert report.refinement == 2
        assert report.parameters == ["6", "-2", "2", "2"]
        assert len(report.forward) == len(report.inverse) == 6
        assert report.max_residual <= 1e-9
        assert report.roundtrip_error <= 1e-9
        assert {c.direction for c in report.forward} == {"forward"}

    def test_verify_singular_matrix(self) -> None:
        """Test that a singular matrix cannot be inverted for the way back."""
        with pytest.raises(ValueError):
            Transplantation(SpectralSolver()).verify(
                self.m1, self.m2, transplantation_matrix(6, -2, 2, 0), count=2
            )
