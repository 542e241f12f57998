"""Unit tests for SurfaceAssembly use case."""

from collections.abc import Mapping
from typing import Optional

import pytest

from app.application.ports.tile_catalog import TileCatalog
from app.application.use_cases.spectral_solver import SpectralSolver
from app.application.use_cases.surface_assembly import SurfaceAssembly
from app.domain.entities.discrete_operator import assemble, restrict_to_invariant
from app.domain.errors import LabelMismatchError
from app.domain.value_objects.tile_spec import BUILTIN_TILE_NAMES, Point, TileSpec, builtin_tile


class MockTileCatalog(TileCatalog):
    """Mock tile catalog serving the builtin tiles."""

    def get(self, name: str, overrides: Optional[Mapping[int, Point]] = None) -> TileSpec:
        """Return a builtin tile."""
        return builtin_tile(name, overrides)

    def names(self) -> list[str]:
        """Return the builtin tile names."""
        return sorted(BUILTIN_TILE_NAMES)


class TestSurfaceAssembly:
    """Test cases for SurfaceAssembly."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.logged: list[tuple] = []
        self.assembly = SurfaceAssembly(
            MockTileCatalog(), logger=lambda *args, **kwargs: self.logged.append(args)
        )

    def test_tile_with_overrides(self) -> None:
        """Test tile lookup through the catalog."""
        tile = self.assembly.tile("triangle", {1: (5.0, 0.0)})

        assert tile.points[1] == (5.0, 0.0)

    def test_surface_pair(self) -> None:
        """Test that M1 and M2 share area and tile mesh."""
        tile_mesh = self.assembly.tile_mesh(self.assembly.tile("hexagon3"), 2)
        m1, m2 = self.assembly.surface_pair(tile_mesh)

        assert (m1.name, m2.name) == ("M1", "M2")
        assert m1.area == pytest.approx(m2.area)
        assert m1.tile_mesh is m2.tile_mesh
        assert ("local", "surfaces", "assemble") in self.logged

    def test_quotient_by_central_involution(self) -> None:
        """Test the quotient of M1 by s^4 and its mirror segments."""
        tile_mesh = self.assembly.tile_mesh(self.assembly.tile("hexagon3"), 2)
        m1 = self.assembly.surface(tile_mesh, "gamma1", name="M1")

        quotient, bc = self.assembly.quotient(m1, "gamma1")

        assert quotient.copy_count == 4
        assert set(bc.neumann_names) == {"6T", "6U"}

    def test_fold_keeps_dirichlet_ground_state(self) -> None:
        """Test that the mirror-folded quotient of M1 has the Dirichlet ground state of M1."""
        tile = self.assembly.tile("ytile")
        m1 = self.assembly.surface(self.assembly.tile_mesh(tile, 3), "gamma1", name="M1")
        quotient, bc = self.assembly.quotient(m1, "gamma1")

        folded = self.assembly.fold(quotient, bc, tile.symmetries[0])
        op = restrict_to_invariant(assemble(quotient, bc, "graph"), folded.node_orbits())
        solver = SpectralSolver()
        omega = solver.lowest_eigenpairs(op, 1, 1e-10)[0].eigenvalues[0]
        ground = solver.lowest_eigenpairs(assemble(m1, m1.all_dirichlet(), "graph"), 1, 1e-10)[0]

        assert omega == pytest.approx(ground.eigenvalues[0], rel=1e-8)
        assert op.dof_count < quotient.node_count
        assert ("local", "surfaces", "fold") in self.logged

    def test_fefferman_domains(self) -> None:
        """Test the doubled domains and the half tile with its mixed conditions."""
        tile_mesh = self.assembly.tile_mesh(self.assembly.tile("ltile"), 2)
        s_domain, c_domain, half, bc = self.assembly.fefferman(tile_mesh)

        assert (s_domain.name, c_domain.name, half.name) == ("S", "C", "L")
        assert bc.neumann_names == ("E",)

    def test_label_mismatch(self) -> None:
        """Test that a tile without glue labels cannot be glued."""
        tile_mesh = self.assembly.tile_mesh(self.assembly.tile("square"), 1)

        with pytest.raises(LabelMismatchError):
            self.assembly.surface(tile_mesh, "gamma1")

    def test_triangle_reports(self) -> None:
        """Test surface reports of the triangle annuli glued with st, t, tu."""
        tile_mesh = self.assembly.tile_mesh(self.assembly.tile("triangle"), 2)
        m1, m2 = self.assembly.surface_pair(tile_mesh, generators="st_t_tu")
        first, second = self.assembly.report(m1), self.assembly.report(m2)

        assert (first.euler_characteristic, second.euler_characteristic) == (0, 0)
        assert first.predicted_euler_characteristic == 0
        assert (first.boundary_components, second.boundary_components) == (2, 2)
        assert first.orientable and second.orientable
        assert (len(first.cone_points), len(second.cone_points)) == (0, 1)
        assert first.triangle_count == 8 * 4
        assert first.area == pytest.approx(48.0)

    def test_triangle_cone_points_with_sigma(self) -> None:
        """Test that σ, t, u glue the triangle into surfaces with one and two cone points."""
        tile_mesh = self.assembly.tile_mesh(self.assembly.tile("triangle"), 2)
        m1, m2 = self.assembly.surface_pair(tile_mesh, generators="sigma_t_u")
        reports = [self.assembly.report(m) for m in (m1, m2)]

        assert sorted(len(r.cone_points) for r in reports) == [1, 2]

    def test_report_of_planar_domain(self) -> None:
        """Test that planar domains carry no orientability verdict."""
        tile_mesh = self.assembly.tile_mesh(self.assembly.tile("ltile"), 2)
        _, c_domain, _, _ = self.assembly.fefferman(tile_mesh)

        report = self.assembly.report(c_domain)
        assert report.orientable is None
        assert report.copy_count == 2
        assert report.cone_points == []
