"""Class functions with exact Gaussian-rational values."""

from collections.abc import Sequence
from dataclasses import dataclass

import sympy


def gaussian(value) -> sympy.Expr:
    """Coerce a number to an exact sympy Gaussian rational."""
    expr = sympy.nsimplify(value) if isinstance(value, float) else sympy.sympify(value)
    re, im = expr.as_real_imag()
    if not (re.is_rational and im.is_rational):
        raise ValueError(f"{value!r} is not a Gaussian rational")
    return sympy.Rational(re) + sympy.I * sympy.Rational(im)


@dataclass(frozen=True)
class ClassFunction:
    """
    Function on a group that is constant on conjugacy classes.

    Values are indexed like `class_reps`; `class_sizes` carries the class
    sizes so inner products need no access to the group.
    """

    class_reps: tuple[int, ...]
    class_sizes: tuple[int, ...]
    values: tuple[sympy.Expr, ...]

    def __post_init__(self) -> None:
        """Validate lengths and coerce values to exact numbers."""
        if not (len(self.class_reps) == len(self.class_sizes) == len(self.values)):
            raise ValueError("Class function must have one value per conjugacy class")
        object.__setattr__(self, "values", tuple(gaussian(v) for v in self.values))

    @property
    def group_order(self) -> int:
        """Order of the group, recovered from the class sizes."""
        return sum(self.class_sizes)

    def value_at_class(self, representative: int) -> sympy.Expr:
        """Value on the class with the given representative."""
        return self.values[self.class_reps.index(representative)]

    def inner(self, other: "ClassFunction") -> sympy.Expr:
        """
        Hermitian inner product (1/|G|) Σ_g χ(g)·conj(ψ(g)).

        Raises:
            ValueError: If the two functions are indexed by different classes
        """
        if self.class_reps != other.class_reps:
            raise ValueError("Class functions are indexed by different classes")
        total = sum(
            (size * a * sympy.conjugate(b)
             for size, a, b in zip(self.class_sizes, self.values, other.values)),
            sympy.Integer(0),
        )
        return sympy.simplify(total / self.group_order)

    def reindexed(self, class_reps: Sequence[int]) -> "ClassFunction":
        """Same function listed in another class order."""
        order = [self.class_reps.index(rep) for rep in class_reps]
        return ClassFunction(
            class_reps=tuple(class_reps),
            class_sizes=tuple(self.class_sizes[i] for i in order),
            values=tuple(self.values[i] for i in order),
        )

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.class_reps != other.class_reps:
            raise ValueError("Class functions are indexed by different classes")
        return ClassFunction(
            self.class_reps,
            self.class_sizes,
            tuple(a + b for a, b in zip(self.values, other.values)),
        )

    def scaled(self, factor) -> "ClassFunction":
        """Multiply every value by a scalar."""
        factor = gaussian(factor)
        values = tuple(factor * v for v in self.values)
        return ClassFunction(self.class_reps, self.class_sizes, values)

    def as_strings(self) -> list[str]:
        """Values rendered as strings (for reports)."""
        return [str(v) for v in self.values]
