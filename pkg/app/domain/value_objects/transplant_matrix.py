"""Transplantation matrix value object."""

from dataclasses import dataclass

import numpy as np
import sympy

# Row r of the matrix, as indices into (α, β, γ, δ).
_PATTERN = (
    (0, 1, 2, 3, 0, 3, 2, 1),
    (1, 0, 1, 2, 3, 0, 3, 2),
    (2, 1, 0, 1, 2, 3, 0, 3),
    (3, 2, 1, 0, 1, 2, 3, 0),
    (0, 3, 2, 1, 0, 1, 2, 3),
    (3, 0, 3, 2, 1, 0, 1, 2),
    (2, 3, 0, 3, 2, 1, 0, 1),
    (1, 2, 3, 0, 3, 2, 1, 0),
)

DEFAULT_PARAMETERS = (6, -2, 2, 2)


@dataclass(frozen=True)
class TransplantMatrix:
    """
    Intertwiner C[G/Γ1] -> C[G/Γ2] with parameters (a, b, c, d).

    a, b, c and d are the scalars by which it acts on the isotypic components
    1, 1⁻, W⁺ and X. The matrix is invertible iff abcd ≠ 0.
    """

    a: sympy.Rational
    b: sympy.Rational
    c: sympy.Rational
    d: sympy.Rational

    def __post_init__(self) -> None:
        """Coerce parameters to exact rationals."""
        for name in ("a", "b", "c", "d"):
            value = sympy.nsimplify(getattr(self, name))
            if not value.is_rational:
                raise ValueError(f"Parameter {name} must be rational")
            object.__setattr__(self, name, sympy.Rational(value))

    @property
    def alpha(self) -> sympy.Rational:
        return (self.a + self.b + 2 * self.c) / 8

    @property
    def beta(self) -> sympy.Rational:
        return (self.a - self.b + 4 * self.d) / 8

    @property
    def gamma(self) -> sympy.Rational:
        return (self.a + self.b - 2 * self.c) / 8

    @property
    def delta(self) -> sympy.Rational:
        return (self.a - self.b - 4 * self.d) / 8

    @property
    def singular(self) -> bool:
        """True when abcd = 0."""
        return self.a * self.b * self.c * self.d == 0

    @property
    def entries(self) -> sympy.Matrix:
        """Exact 8x8 matrix."""
        values = (self.alpha, self.beta, self.gamma, self.delta)
        return sympy.Matrix(8, 8, lambda r, j: values[_PATTERN[r][j]])

    def as_array(self) -> np.ndarray:
        """Floating-point copy of the matrix."""
        return np.array(self.entries.tolist(), dtype=float)

    def is_integral(self) -> bool:
        """Whether every entry is an integer."""
        return all(v.is_integer for v in (self.alpha, self.beta, self.gamma, self.delta))

    def inverse(self) -> sympy.Matrix:
        """
        Exact inverse matrix.

        Raises:
            ValueError: If the matrix is singular
        """
        if self.singular:
            raise ValueError("Transplantation matrix is singular (abcd = 0)")
        return self.entries.inv()

    def parameters(self) -> tuple[sympy.Rational, ...]:
        """(a, b, c, d)."""
        return (self.a, self.b, self.c, self.d)


def intertwiner_parameters(matrix: sympy.Matrix) -> tuple[sympy.Rational, ...]:
    """
    Recover (a, b, c, d) from any matrix with the transplantation pattern.

    Args:
        matrix: 8x8 matrix

    Returns:
        (a, b, c, d) read off the first row (α, β, γ, δ)
    """
    alpha, beta, gamma, delta = (sympy.nsimplify(matrix[0, j]) for j in range(4))
    return (
        2 * (alpha + beta + gamma + delta),
        2 * (alpha + gamma - beta - delta),
        2 * (alpha - gamma),
        beta - delta,
    )


def transplantation_matrix(a=6, b=-2, c=2, d=2) -> TransplantMatrix:
    """
    Build the transplantation matrix for parameters (a, b, c, d).

    The defaults give α = 1, β = 2, γ = δ = 0.
    """
    return TransplantMatrix(a=a, b=b, c=c, d=d)
