"""Unit tests for Richardson extrapolation and ConvergenceStudy use case."""

import math

import pytest

from app.application.dtos.spectrum import SpectrumMeta, SpectrumReport
from app.application.use_cases.convergence_study import ConvergenceStudy, richardson
from app.application.use_cases.spectral_solver import SpectralSolver
from app.domain.entities.discrete_operator import assemble
from app.domain.entities.surface_mesh import single_tile
from app.domain.entities.tile_mesh import mesh_tile
from app.domain.errors import NonMonotoneSequenceError
from app.domain.value_objects.tile_spec import builtin_tile


class MockSolver:
    """Solver returning preset eigenvalues per refinement level."""

    def __init__(self, values: dict[int, list[float]]) -> None:
        """Initialize mock solver."""
        self._values = values

    def lowest_eigenpairs(self, op, count, tol=1e-8, seed=0):
        """Return the preset eigenvalues of level `op`."""
        eigenvalues = self._values[op][:count]
        meta = SpectrumMeta(
            mesh="mock",
            refinement=op,
            bc="dirichlet",
            mode="fem",
            dof_count=100,
            solver="dense",
            iterations=0,
            seed=seed,
            tolerance=tol,
        )
        report = SpectrumReport(
            eigenvalues=eigenvalues,
            residuals=[0.0] * len(eigenvalues),
            clusters=list(range(len(eigenvalues))),
            meta=meta,
        )
        return report, None


def test_richardson_exact_for_quadratic_error():
    """Test that λ + C/k² is extrapolated exactly with observed order 2."""
    levels = [4, 8, 16]
    values = [10.0 + 16.0 / k**2 for k in levels]

    value, error, order = richardson(values, levels)

    assert value == pytest.approx(10.0)
    assert error == pytest.approx(0.0, abs=1e-12)
    assert order == pytest.approx(2.0)


def test_richardson_needs_three_levels():
    """Test that two levels are not enough."""
    with pytest.raises(ValueError):
        richardson([1.0, 0.5], [4, 8])


def test_richardson_rejects_direction_change():
    """Test that a non-monotone sequence is not extrapolated."""
    with pytest.raises(NonMonotoneSequenceError):
        richardson([1.0, 0.5, 0.7], [4, 8, 16])


def test_richardson_constant_sequence():
    """Test a converged sequence without an observed order."""
    value, error, order = richardson([3.0, 3.0, 3.0], [2, 4, 8])

    assert value == 3.0
    assert error == 0.0
    assert order is None


class TestConvergenceStudy:
    """Test cases for ConvergenceStudy."""

    def test_mixed_monotone_and_oscillating_indices(self) -> None:
        """Test that an oscillating index is reported without extrapolation."""
        solver = MockSolver(
            {4: [11.0, 20.0], 8: [10.25, 19.0], 16: [10.0625, 19.5]}
        )
        report = ConvergenceStudy(solver).run(lambda k: k, [4, 8, 16], count=2)

        assert report.levels == [4, 8, 16]
        assert report.sequences[0] == [11.0, 10.25, 10.0625]
        assert report.monotone == [True, False]
        assert report.extrapolated[0] == pytest.approx(10.0)
        assert report.extrapolated[1] is None
        assert report.error_estimates[1] is None
        assert len(report.reports) == 3

    def test_level_validation(self) -> None:
        """Test that levels must be three or more and strictly ascending."""
        study = ConvergenceStudy(MockSolver({}))

        with pytest.raises(ValueError):
            study.run(lambda k: k, [4, 8], count=1)
        with pytest.raises(ValueError):
            study.run(lambda k: k, [4, 16, 8], count=1)

    def test_dirichlet_square(self) -> None:
        """Test that the extrapolated ground state of the square approaches 2π²."""

        def build(k: int):
            mesh = single_tile(mesh_tile(builtin_tile("square"), k))
            return assemble(mesh, mesh.all_dirichlet())

        report = ConvergenceStudy(SpectralSolver()).run(build, [4, 8, 16], count=1)

        assert report.monotone == [True]
        assert report.sequences[0][0] > report.sequences[0][-1]
        assert report.extrapolated[0] == pytest.approx(2 * math.pi**2, rel=1e-2)
        assert abs(report.extrapolated[0] - 2 * math.pi**2) < abs(
            report.sequences[0][-1] - 2 * math.pi**2
        )

    @pytest.mark.slow
    def test_observed_order_on_convex_tile(self) -> None:
        """Test that the ten lowest Dirichlet eigenvalues of the square converge at order 2."""

        def build(k: int):
            mesh = single_tile(mesh_tile(builtin_tile("square"), k))
            return assemble(mesh, mesh.all_dirichlet())

        report = ConvergenceStudy(SpectralSolver()).run(build, [16, 32, 64], count=10)

        assert all(report.monotone)
        assert len(report.observed_orders) == 10
        for order in report.observed_orders:
            assert order == pytest.approx(2.0, abs=0.3)
