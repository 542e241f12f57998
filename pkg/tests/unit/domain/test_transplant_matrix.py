"""Unit tests for the TransplantMatrix value object."""

import numpy as np
import pytest
import sympy

from app.domain.value_objects.transplant_matrix import (
    DEFAULT_PARAMETERS,
    TransplantMatrix,
    intertwiner_parameters,
    transplantation_matrix,
)


class TestTransplantMatrix:
    """Test cases for TransplantMatrix."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.matrix = transplantation_matrix()

    def test_default_entries(self) -> None:
        """Test α = 1, β = 2, γ = δ = 0 for the default parameters."""
        assert self.matrix.parameters() == DEFAULT_PARAMETERS
        assert (self.matrix.alpha, self.matrix.beta) == (1, 2)
        assert (self.matrix.gamma, self.matrix.delta) == (0, 0)
        assert list(self.matrix.entries.col(0)) == [1, 2, 0, 0, 1, 0, 0, 2]
        assert self.matrix.is_integral()

    def test_circulant_and_symmetric(self) -> None:
        """Test that the matrix is a symmetric circulant."""
        a = self.matrix.as_array()

        for r in range(8):
            assert np.array_equal(a[r], np.roll(a[0], r))
        assert np.array_equal(a, a.T)

    def test_inverse(self) -> None:
        """Test the exact inverse."""
        product = self.matrix.entries * self.matrix.inverse()

        assert product == sympy.eye(8)
        assert not self.matrix.singular

    def test_singular(self) -> None:
        """Test that abcd = 0 makes the matrix singular."""
        matrix = transplantation_matrix(6, -2, 2, 0)

        assert matrix.singular
        assert matrix.entries.det() == 0
        with pytest.raises(ValueError):
            matrix.inverse()

    def test_parameters_round_trip_through_entries(self) -> None:
        """Test that (a, b, c, d) is recovered from the first row."""
        for parameters in ((6, -2, 2, 2), (1, 1, 1, 1), (8, 0, 4, -2)):
            matrix = transplantation_matrix(*parameters)
            assert intertwiner_parameters(matrix.entries) == parameters

    def test_rational_parameters(self) -> None:
        """Test exact rational parameters and non-integral entries."""
        matrix = TransplantMatrix(a=1, b=1, c=1, d=1)

        assert matrix.alpha == sympy.Rational(1, 2)
        assert not matrix.is_integral()

    def test_irrational_parameter(self) -> None:
        """Test that irrational parameters are rejected."""
        with pytest.raises(ValueError):
            TransplantMatrix(a=sympy.sqrt(2), b=1, c=1, d=1)
