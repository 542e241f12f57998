"""Unit tests for characters, irreducibles and intertwiners of the Gerst group."""

import numpy as np
import pytest
import sympy

from app.domain.entities.finite_group import (
    GERST_GENERATOR_LABELS,
    build_gerst_group,
    coset_action,
    generator_set,
    gerst_subgroup,
)
from app.domain.entities.representations import (
    IRREDUCIBLE_NAMES,
    PermRep,
    character_table,
    decompose,
    idempotent_basis,
    induced_character,
    intertwiner_space,
    irreducible_matrices,
    is_intertwiner,
    relations_hold,
    representation_matrix,
    transplant_image,
)
from app.domain.errors import NotACharacterError, UnknownRepresentationError
from app.domain.value_objects.class_function import ClassFunction, gaussian
from app.domain.value_objects.transplant_matrix import transplantation_matrix


class TestClassFunction:
    """Test cases for ClassFunction."""

    def test_gaussian_coercion(self) -> None:
        """Test exact coercion of floats and complex values."""
        assert gaussian(0.5) == sympy.Rational(1, 2)
        assert gaussian(sympy.I * 3) == 3 * sympy.I
        with pytest.raises(ValueError):
            gaussian(sympy.sqrt(2))

    def test_length_mismatch(self) -> None:
        """Test that one value per class is required."""
        with pytest.raises(ValueError):
            ClassFunction(class_reps=(0, 1), class_sizes=(1, 1), values=(1,))

    def test_inner_product(self) -> None:
        """Test the Hermitian inner product on Z2."""
        trivial = ClassFunction(class_reps=(0, 1), class_sizes=(1, 1), values=(1, 1))
        sign = ClassFunction(class_reps=(0, 1), class_sizes=(1, 1), values=(1, -1))

        assert trivial.group_order == 2
        assert trivial.inner(trivial) == 1
        assert trivial.inner(sign) == 0
        assert (trivial + sign).value_at_class(0) == 2
        assert trivial.scaled(3).values == (3, 3)

    def test_reindexed(self) -> None:
        """Test listing a class function in another class order."""
        f = ClassFunction(class_reps=(0, 5), class_sizes=(1, 3), values=(2, 7))
        g = f.reindexed((5, 0))

        assert g.values == (7, 2)
        assert g.class_sizes == (3, 1)
        with pytest.raises(ValueError):
            f.inner(g)


class TestIrreducibles:
    """Test cases for the irreducible representations."""

    def test_relations(self) -> None:
        """Test that every irreducible satisfies the defining relations."""
        for name in IRREDUCIBLE_NAMES:
            assert relations_hold(name), name

    def test_unknown_representation(self) -> None:
        """Test that an unknown name is rejected."""
        with pytest.raises(UnknownRepresentationError):
            irreducible_matrices("Y")

    def test_representation_is_homomorphism(self) -> None:
        """Test ρ(gh) = ρ(g)ρ(h) on the faithful representation X."""
        group = build_gerst_group()
        for g in (1, 9, 20, 27):
            for h in (3, 8, 16, 30):
                product = representation_matrix("X", group.multiply(g, h))
                assert product == representation_matrix("X", g) * representation_matrix("X", h)


class TestCharacterTable:
    """Test cases for the character table."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.group = build_gerst_group()
        self.table = character_table(self.group)

    def test_dimensions(self) -> None:
        """Test eight linear characters, two of degree 2 and one of degree 4."""
        assert self.table.dimensions() == (1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 4)
        assert sum(d * d for d in self.table.dimensions()) == 32

    def test_orthogonality(self) -> None:
        """Test row orthonormality and column orthogonality."""
        assert self.table.is_orthonormal()
        assert self.table.column_orthogonality()

    def test_printed_column_order(self) -> None:
        """Test the class order 1, s^4, s^2, v, ... of the printed table."""
        assert self.table.class_reps[:4] == (0, 4, 2, 24)
        assert sum(self.table.class_sizes) == 32

    def test_row_lookup(self) -> None:
        """Test looking up a character by name."""
        x = self.table.row("X")

        assert x.value_at_class(0) == 4
        assert x.value_at_class(4) == -4
        with pytest.raises(UnknownRepresentationError):
            self.table.row("Z")


class TestInducedCharacters:
    """Test cases for permutation characters on G/Γ."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.group = build_gerst_group()
        self.table = character_table(self.group)

    def test_gamma1_gamma2_same_character(self) -> None:
        """Test that almost conjugate subgroups induce the same character."""
        first = induced_character(self.group, gerst_subgroup(self.group, "gamma1"))
        second = induced_character(self.group, gerst_subgroup(self.group, "gamma2"))

        assert first.values == second.values
        assert first.value_at_class(0) == 8

    def test_decomposition(self) -> None:
        """Test C[G/Γ1] = 1 + 1⁻ + W⁺ + X."""
        induced = induced_character(self.group, gerst_subgroup(self.group, "gamma1"))
        multiplicities = decompose(induced, self.table)

        assert {name for name, m in multiplicities.items() if m} == {"1", "1-", "W+", "X"}
        assert all(m in (0, 1) for m in multiplicities.values())

    def test_not_a_character(self) -> None:
        """Test that half a character does not decompose."""
        induced = induced_character(self.group, gerst_subgroup(self.group, "gamma1"))

        with pytest.raises(NotACharacterError):
            decompose(induced.scaled(sympy.Rational(1, 2)), self.table)


class TestIntertwiners:
    """Test cases for intertwiners C[G/Γ1] -> C[G/Γ2]."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.group = build_gerst_group()
        generators = generator_set(self.group, "sigma_t_u")
        self.first, self.second = (
            PermRep.from_action(
                coset_action(
                    self.group,
                    gerst_subgroup(self.group, name),
                    generators,
                    GERST_GENERATOR_LABELS,
                )
            )
            for name in ("gamma1", "gamma2")
        )

    def test_permutation_matrices(self) -> None:
        """Test that the permutation matrices are involutions."""
        for _, p in self.first.matrices:
            assert np.array_equal(p @ p, np.eye(8, dtype=np.int64))
        assert self.first.degree == 8

    def test_intertwiner_space_dimension(self) -> None:
        """Test that the intertwiner space is four-dimensional."""
        basis = intertwiner_space(self.first, self.second)

        assert len(basis) == 4
        assert all(is_intertwiner(b, self.first, self.second) for b in basis)

    def test_transplantation_matrix_intertwines(self) -> None:
        """Test that A intertwines Γ1 -> Γ2 but not Γ1 -> Γ1."""
        matrix = transplantation_matrix()

        assert is_intertwiner(matrix.entries, self.first, self.second)
        assert not is_intertwiner(matrix.entries, self.first, self.first)

    def test_idempotent_basis(self) -> None:
        """Test the adapted basis spans C[G/Γ1] and A maps it injectively."""
        basis = idempotent_basis(self.group, gerst_subgroup(self.group, "gamma1"))
        images = transplant_image(transplantation_matrix(), basis)

        assert sympy.Matrix.hstack(*basis.vectors).rank() == 8
        assert sympy.Matrix.hstack(*basis.h_vectors).rank() == 8
        assert sympy.Matrix.hstack(*images).rank() == 8
