"""Characters, irreducible matrices, idempotents and intertwiners of the Gerst group."""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy

from app.domain.entities.finite_group import (
    CosetAction,
    FiniteGroup,
    Subgroup,
    conjugacy_classes,
    coset_action,
)
from app.domain.errors import NotACharacterError, UnknownRepresentationError
from app.domain.value_objects.class_function import ClassFunction
from app.domain.value_objects.transplant_matrix import TransplantMatrix

# Column order of the printed character table.
TABLE_CLASS_WORDS = ("1", "s^4", "s^2", "v", "s^2v", "s", "t", "u", "st", "su", "sv")

# Signs (a, b, c) of s, t, u on the one-dimensional representations, in table order.
ONE_DIMENSIONAL = {
    "1": (1, 1, 1),
    "1+-+": (1, -1, 1),
    "1++-": (1, 1, -1),
    "1+--": (1, -1, -1),
    "1-": (-1, 1, 1),
    "1--+": (-1, -1, 1),
    "1-+-": (-1, 1, -1),
    "1---": (-1, -1, -1),
}
IRREDUCIBLE_NAMES = (*ONE_DIMENSIONAL, "W+", "W-", "X")

_SWAP = sympy.Matrix([[0, 1], [1, 0]])


@lru_cache(maxsize=None)
def irreducible_matrices(name: str) -> dict[str, sympy.Matrix]:
    """
    Matrices of s, t and u on an irreducible representation.

    Args:
        name: One of 1, 1+-+, ..., 1---, W+, W-, X

    Returns:
        Mapping generator letter -> exact matrix

    Raises:
        UnknownRepresentationError: For an unknown name
    """
    if name in ONE_DIMENSIONAL:
        a, b, c = ONE_DIMENSIONAL[name]
        return {"s": sympy.Matrix([[a]]), "t": sympy.Matrix([[b]]), "u": sympy.Matrix([[c]])}
    if name in ("W+", "W-"):
        sign = 1 if name == "W+" else -1
        return {"s": sympy.diag(sympy.I, -sympy.I), "t": _SWAP, "u": sign * _SWAP}
    if name == "X":
        return {
            "s": sympy.Matrix([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]),
            "t": sympy.Matrix([[1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0]]),
            "u": sympy.Matrix([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0]]),
        }
    raise UnknownRepresentationError(
        f"Unknown representation '{name}'; expected one of {list(IRREDUCIBLE_NAMES)}"
    )


def representation_matrix(name: str, element: int) -> sympy.Matrix:
    """Matrix of the Gerst group element s^i·h (index 8h + i) on an irreducible."""
    m = irreducible_matrices(name)
    i, h = element % 8, element // 8
    h_part = {0: sympy.eye(m["s"].rows), 1: m["t"], 2: m["u"], 3: m["t"] * m["u"]}[h]
    return m["s"] ** i * h_part


def relations_hold(name: str) -> bool:
    """Whether the matrices satisfy s^8 = t^2 = u^2 = [t,u] = 1, tst = s^7, usu = s^3."""
    m = irreducible_matrices(name)
    s, t, u = m["s"], m["t"], m["u"]
    one = sympy.eye(s.rows)
    return (
        s**8 == one
        and t**2 == one
        and u**2 == one
        and t * u == u * t
        and t * s * t == s**7
        and u * s * u == s**3
    )


def table_classes(group: FiniteGroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Representatives and sizes of the conjugacy classes in printed table order."""
    classes = {cls.representative: cls for cls in conjugacy_classes(group)}
    reps = []
    for word in TABLE_CLASS_WORDS:
        element = group.evaluate(word)
        reps.append(next(r for r, cls in classes.items() if element in cls.members))
    return tuple(reps), tuple(classes[r].size for r in reps)


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters indexed by conjugacy classes."""

    class_reps: tuple[int, ...]
    class_sizes: tuple[int, ...]
    rows: tuple[tuple[str, ClassFunction], ...]

    @property
    def names(self) -> tuple[str, ...]:
        """Representation names, in row order."""
        return tuple(name for name, _ in self.rows)

    @property
    def group_order(self) -> int:
        return sum(self.class_sizes)

    def row(self, name: str) -> ClassFunction:
        """
        Character of a named irreducible.

        Raises:
            UnknownRepresentationError: For an unknown name
        """
        for row_name, character in self.rows:
            if row_name == name:
                return character
        raise UnknownRepresentationError(f"Unknown representation '{name}'")

    def dimensions(self) -> tuple[int, ...]:
        """Degree of every irreducible (its value at the identity)."""
        index = self.class_reps.index(min(self.class_reps))
        return tuple(int(character.values[index]) for _, character in self.rows)

    def grid(self) -> list[list[sympy.Expr]]:
        """Character values, one list per row."""
        return [list(character.values) for _, character in self.rows]

    def is_orthonormal(self) -> bool:
        """Row orthonormality under the Hermitian inner product."""
        characters = [character for _, character in self.rows]
        return all(
            characters[i].inner(characters[j]) == (1 if i == j else 0)
            for i in range(len(characters))
            for j in range(len(characters))
        )

    def column_orthogonality(self) -> bool:
        """Σ_χ χ(c)·conj(χ(c')) = δ(c, c')·|G|/|c| for all classes c, c'."""
        grid = self.grid()
        columns = len(self.class_reps)
        for p in range(columns):
            for q in range(columns):
                total = sympy.simplify(sum(row[p] * sympy.conjugate(row[q]) for row in grid))
                expected = sympy.Rational(self.group_order, self.class_sizes[p]) if p == q else 0
                if total != expected:
                    return False
        return True


def character_table(group: FiniteGroup) -> CharacterTable:
    """
    Character table of the Gerst group, computed as traces of the irreducible matrices.

    Args:
        group: Group returned by build_gerst_group

    Returns:
        CharacterTable in printed row and column order
    """
    reps, sizes = table_classes(group)
    rows = tuple(
        (
            name,
            ClassFunction(
                class_reps=reps,
                class_sizes=sizes,
                values=tuple(sympy.simplify(representation_matrix(name, g).trace()) for g in reps),
            ),
        )
        for name in IRREDUCIBLE_NAMES
    )
    return CharacterTable(class_reps=reps, class_sizes=sizes, rows=rows)


def induced_character(
    group: FiniteGroup, subgroup: Subgroup, class_reps: Sequence[int] = ()
) -> ClassFunction:
    """
    Character of the permutation representation on G/H.

    χ(g) counts the cosets fixed by g.

    Args:
        group: Ambient group
        subgroup: Subgroup H
        class_reps: Class order of the result (default: least-member order)

    Returns:
        ClassFunction
    """
    classes = {cls.representative: cls for cls in conjugacy_classes(group)}
    reps = tuple(class_reps) or tuple(classes)
    members = set(subgroup.elements)
    action = coset_action(group, subgroup, [])
    values = []
    for rep in reps:
        fixed = sum(
            1
            for r in action.reps
            if group.multiply(group.inverse(r), rep, r) in members
        )
        values.append(fixed)
    return ClassFunction(
        class_reps=reps, class_sizes=tuple(classes[r].size for r in reps), values=tuple(values)
    )


def decompose(character: ClassFunction, table: CharacterTable) -> dict[str, int]:
    """
    Multiplicities of the irreducibles in a character.

    Args:
        character: Character (any class order)
        table: Character table

    Returns:
        Name -> multiplicity, in table row order

    Raises:
        NotACharacterError: If a multiplicity is negative or not an integer
    """
    aligned = character.reindexed(table.class_reps)
    multiplicities = {}
    for name, irreducible in table.rows:
        value = aligned.inner(irreducible)
        if not (value.is_integer and value >= 0):
            raise NotACharacterError(f"Multiplicity of {name} is {value}; not a character")
        multiplicities[name] = int(value)
    return multiplicities


@dataclass(frozen=True)
class PermRep:
    """Permutation representation C[G/H]: P[π(x)][x] = 1."""

    degree: int
    matrices: tuple[tuple[str, np.ndarray], ...]

    @classmethod
    def from_action(cls, action: CosetAction) -> "PermRep":
        """Permutation matrices of the generators of a coset action."""
        matrices = []
        for label, perm in zip(action.generator_labels, action.perm):
            p = np.zeros((action.coset_count, action.coset_count), dtype=np.int64)
            p[list(perm), range(action.coset_count)] = 1
            matrices.append((label, p))
        return cls(degree=action.coset_count, matrices=tuple(matrices))

    def matrix(self, label: str) -> np.ndarray:
        """Permutation matrix of a generator."""
        return dict(self.matrices)[label]


def permutation_matrix(group: FiniteGroup, action: CosetAction, element: int) -> np.ndarray:
    """Permutation matrix of any group element on the cosets."""
    m = action.coset_count
    p = np.zeros((m, m), dtype=np.int64)
    for x in range(m):
        p[action.act(group, element, x), x] = 1
    return p


@dataclass(frozen=True)
class IdempotentBasis:
    """Vectors ε_V·u_k in the coset basis, with the rotated h-basis."""

    vectors: tuple[sympy.Matrix, ...]
    h_vectors: tuple[sympy.Matrix, ...]
    components: tuple[str, ...] = ("1", "1-", "W+", "W+", "X", "X", "X", "X")


def isotypic_projector(group: FiniteGroup, action: CosetAction, name: str) -> sympy.Matrix:
    """ε_V = (dim V/|G|) Σ_g χ_V(g⁻¹) P(g) acting on C[G/H]."""
    total = sympy.zeros(action.coset_count, action.coset_count)
    dimension = irreducible_matrices(name)["s"].rows
    for g in range(group.order):
        chi = sympy.simplify(representation_matrix(name, group.inverse(g)).trace())
        if chi != 0:
            total += chi * sympy.Matrix(permutation_matrix(group, action, g))
    return total * sympy.Rational(dimension, group.order)


def idempotent_basis(group: FiniteGroup, subgroup: Subgroup) -> IdempotentBasis:
    """
    Basis of C[G/H] adapted to its isotypic decomposition 1 ⊕ 1⁻ ⊕ W⁺ ⊕ X.

    Vector i is ε_V applied to a coset basis vector: ε_1·u0, ε_{1⁻}·u0,
    ε_{W⁺}·u0, ε_{W⁺}·u1 and ε_X·u_k for k = 0..3. The h-basis replaces the X
    vectors by h5 = f6 - f8, h6 = f5 + f7, h7 = f6 + f8, h8 = -f5 + f7.

    Args:
        group: Gerst group
        subgroup: Γ1 or Γ2

    Returns:
        IdempotentBasis
    """
    action = coset_action(group, subgroup, [])
    m = action.coset_count
    unit = [sympy.Matrix([1 if j == k else 0 for j in range(m)]) for k in range(m)]
    projectors = {name: isotypic_projector(group, action, name) for name in ("1", "1-", "W+", "X")}
    vectors = (
        projectors["1"] * unit[0],
        projectors["1-"] * unit[0],
        projectors["W+"] * unit[0],
        projectors["W+"] * unit[1],
        *(projectors["X"] * unit[k] for k in range(4)),
    )
    f = vectors
    h_vectors = (f[0], f[1], f[2], f[3], f[5] - f[7], f[4] + f[6], f[5] + f[7], -f[4] + f[6])
    return IdempotentBasis(vectors=vectors, h_vectors=h_vectors)


def intertwiner_space(first: PermRep, second: PermRep) -> list[sympy.Matrix]:
    """
    Basis of all A with A·P1(g) = P2(g)·A for every generator g.

    Solved exactly as the null space of the linear system on the entries of A
    (row-major: vec(A·P1) = (I ⊗ P1ᵀ)·vec(A), vec(P2·A) = (P2 ⊗ I)·vec(A)).

    Args:
        first: Source permutation representation
        second: Target permutation representation

    Returns:
        Basis matrices
    """
    n = first.degree
    identity = np.eye(n, dtype=np.int64)
    blocks = [
        np.kron(identity, p1.T) - np.kron(second.matrix(label), identity)
        for label, p1 in first.matrices
    ]
    system = sympy.Matrix(np.vstack(blocks).tolist())
    return [sympy.Matrix(n, n, list(vector)) for vector in system.nullspace()]


def is_intertwiner(matrix: sympy.Matrix, first: PermRep, second: PermRep) -> bool:
    """Whether A·P1(g) = P2(g)·A holds exactly for every generator."""
    return all(
        matrix * sympy.Matrix(p1) == sympy.Matrix(second.matrix(label)) * matrix
        for label, p1 in first.matrices
    )


def transplant_image(matrix: TransplantMatrix, basis: IdempotentBasis) -> list[sympy.Matrix]:
    """Images A·e_i of the idempotent basis vectors."""
    return [matrix.entries * e for e in basis.vectors]
