"""Finite groups given by multiplication tables, subgroups and coset actions."""

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from app.domain.errors import NotASubgroupError

# Exhaustive associativity checks are O(n^3); larger tables are checked on a sample.
EXHAUSTIVE_AXIOM_CHECK_LIMIT = 64
MAX_GROUP_ORDER = 4096

_WORD_TOKEN = re.compile(r"([a-z])(?:\^(-?\d+))?")


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group given by its multiplication table on element indices."""

    mul: np.ndarray
    identity: int
    inv: np.ndarray
    names: tuple[str, ...] = ()
    generators: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        """Validate table shapes and freeze the arrays."""
        order = self.mul.shape[0]
        if self.mul.shape != (order, order):
            raise ValueError("Multiplication table must be square")
        if order == 0 or order > MAX_GROUP_ORDER:
            raise ValueError(f"Group order must be between 1 and {MAX_GROUP_ORDER}")
        if self.inv.shape != (order,):
            raise ValueError("Inverse table must have one entry per element")
        if self.names and len(self.names) != order:
            raise ValueError("Names must be given for every element or for none")
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[int]],
        names: Sequence[str] = (),
        generators: Optional[dict[str, int]] = None,
    ) -> "FiniteGroup":
        """
        Build a group from a multiplication table, deriving identity and inverses.

        Args:
            table: order x order table, table[a][b] = index of a*b
            names: Optional display name per element
            generators: Optional letter -> element index map used by `evaluate`

        Returns:
            FiniteGroup instance

        Raises:
            ValueError: If the table has no two-sided identity or lacks inverses
        """
        mul = np.asarray(table, dtype=np.int64)
        order = mul.shape[0]
        rows = np.arange(order)
        identity = next(
            (
                e
                for e in range(order)
                if np.array_equal(mul[e], rows) and np.array_equal(mul[:, e], rows)
            ),
            None,
        )
        if identity is None:
            raise ValueError("Table has no identity element")
        inv = np.empty(order, dtype=np.int64)
        for a in range(order):
            hits = np.flatnonzero(mul[a] == identity)
            if hits.size != 1 or mul[hits[0], a] != identity:
                raise ValueError(f"Element {a} has no two-sided inverse")
            inv[a] = hits[0]
        return cls(
            mul=mul,
            identity=identity,
            inv=inv,
            names=tuple(names),
            generators=tuple(sorted((generators or {}).items())),
        )

    @property
    def order(self) -> int:
        """Number of elements."""
        return int(self.mul.shape[0])

    def multiply(self, *elements: int) -> int:
        """Multiply elements left to right."""
        result = self.identity
        for element in elements:
            result = int(self.mul[result, element])
        return result

    def inverse(self, element: int) -> int:
        """Inverse of an element."""
        return int(self.inv[element])

    def conjugate(self, g: int, x: int) -> int:
        """Return g x g^-1."""
        return self.multiply(g, x, self.inverse(g))

    def power(self, element: int, exponent: int) -> int:
        """Raise an element to an integer power."""
        base = element if exponent >= 0 else self.inverse(element)
        result = self.identity
        for _ in range(abs(exponent)):
            result = int(self.mul[result, base])
        return result

    def name(self, element: int) -> str:
        """Display name of an element (falls back to its index)."""
        return self.names[element] if self.names else str(element)

    def evaluate(self, word: str) -> int:
        """
        Evaluate a word over the named generators.

        Words are letters with optional integer exponents, e.g. ``s^4tu`` or
        ``s^3·tu``; ``1`` denotes the identity.

        Args:
            word: Word to evaluate

        Returns:
            Element index

        Raises:
            ValueError: If a letter is not a named generator
        """
        letters = dict(self.generators)
        compact = word.replace("·", "").replace("*", "").replace(" ", "")
        if compact in ("", "1", "e"):
            return self.identity
        result = self.identity
        position = 0
        while position < len(compact):
            match = _WORD_TOKEN.match(compact, position)
            if match is None or match.group(1) not in letters:
                raise ValueError(f"Cannot parse word '{word}' at position {position}")
            exponent = int(match.group(2)) if match.group(2) else 1
            result = self.multiply(result, self.power(letters[match.group(1)], exponent))
            position = match.end()
        return result

    def satisfies_axioms(self) -> bool:
        """
        Check the group axioms on the table.

        Associativity is checked exhaustively up to EXHAUSTIVE_AXIOM_CHECK_LIMIT
        elements and on a deterministic sample of triples beyond.

        Returns:
            True if identity, inverse and associativity laws hold
        """
        order = self.order
        rows = np.arange(order)
        if not (
            np.array_equal(self.mul[self.identity], rows)
            and np.array_equal(self.mul[:, self.identity], rows)
        ):
            return False
        if not np.all(self.mul[rows, self.inv] == self.identity):
            return False
        if order <= EXHAUSTIVE_AXIOM_CHECK_LIMIT:
            left = self.mul[self.mul]  # left[a, b, c] = (ab)c
            right = self.mul[:, self.mul]  # right[a, b, c] = a(bc)
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, order, size=(3, 20000))
        return bool(np.array_equal(self.mul[self.mul[a, b], c], self.mul[a, self.mul[b, c]]))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of a finite group, stored as a sorted tuple of element indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        """Validate closure under multiplication and inversion."""
        members = sorted(set(int(x) for x in self.elements))
        object.__setattr__(self, "elements", tuple(members))
        member_set = set(members)
        if self.parent.identity not in member_set:
            raise NotASubgroupError(f"Subgroup {self.name or members} does not contain identity")
        for a in members:
            if self.parent.inverse(a) not in member_set:
                raise NotASubgroupError(f"Subgroup {self.name or members} not closed under inverse")
            for b in members:
                if int(self.parent.mul[a, b]) not in member_set:
                    raise NotASubgroupError(
                        f"Subgroup {self.name or members} not closed under multiplication"
                    )

    @classmethod
    def generated_by(cls, parent: FiniteGroup, generators: Iterable[int], name: str = ""):
        """Smallest subgroup containing the given elements."""
        members = {parent.identity}
        frontier = list(members)
        gens = [int(g) for g in generators]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = parent.multiply(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return cls(parent=parent, elements=tuple(members), name=name)

    def __contains__(self, element: int) -> bool:
        return element in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))


@dataclass(frozen=True)
class ConjugacyClass:
    """Conjugacy class with its lexicographically least member as representative."""

    representative: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        """Number of elements in the class."""
        return len(self.members)

    def __contains__(self, element: int) -> bool:
        return element in self.members


@dataclass(frozen=True)
class AlmostConjugacyVerdict:
    """Outcome of the almost-conjugacy test."""

    almost_conjugate: bool
    witness: Optional[dict[int, int]] = None
    failing_class: Optional[ConjugacyClass] = None
    class_counts: tuple[tuple[int, int, int], ...] = field(default=())  # (rep, |H1∩C|, |H2∩C|)


@dataclass(frozen=True)
class CosetAction:
    """Left-multiplication action of chosen generators on the left cosets G/H."""

    coset_count: int
    reps: tuple[int, ...]
    perm: tuple[tuple[int, ...], ...]
    generator_labels: tuple[str, ...]
    generators: tuple[int, ...] = ()
    coset_of: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Validate that every generator acts by a bijection."""
        if len(self.reps) != self.coset_count:
            raise ValueError("One representative is required per coset")
        if len(self.perm) != len(self.generator_labels):
            raise ValueError("One permutation is required per generator label")
        for label, permutation in zip(self.generator_labels, self.perm):
            if sorted(permutation) != list(range(self.coset_count)):
                raise ValueError(f"Generator {label} does not act by a bijection")

    def permutation(self, label: str) -> tuple[int, ...]:
        """Permutation of the generator with the given label."""
        return self.perm[self.generator_labels.index(label)]

    def is_involutive(self, index: int) -> bool:
        """Whether generator `index` acts as an involution."""
        p = self.perm[index]
        return all(p[p[x]] == x for x in range(self.coset_count))

    def fixed_points(self, index: int) -> tuple[int, ...]:
        """Cosets fixed by generator `index`."""
        return tuple(x for x, y in enumerate(self.perm[index]) if x == y)

    def is_transitive(self) -> bool:
        """Whether the generators act transitively on the cosets."""
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for p in self.perm:
                if p[x] not in seen:
                    seen.add(p[x])
                    frontier.append(p[x])
        return len(seen) == self.coset_count

    def act(self, group: FiniteGroup, element: int, coset: int) -> int:
        """Image of a coset under any group element."""
        return self.coset_of[group.multiply(element, self.reps[coset])]


@lru_cache(maxsize=32)
def conjugacy_classes(group: FiniteGroup) -> tuple[ConjugacyClass, ...]:
    """
    Partition a group into conjugacy classes.

    Args:
        group: Finite group

    Returns:
        Classes ordered by their least member, which is also the representative
    """
    seen: set[int] = set()
    classes = []
    for x in range(group.order):
        if x in seen:
            continue
        members = tuple(sorted({group.conjugate(g, x) for g in range(group.order)}))
        seen.update(members)
        classes.append(ConjugacyClass(representative=x, members=members))
    return tuple(classes)


def class_index(group: FiniteGroup) -> np.ndarray:
    """Array mapping each element to the index of its conjugacy class."""
    lookup = np.empty(group.order, dtype=np.int64)
    for position, cls in enumerate(conjugacy_classes(group)):
        lookup[list(cls.members)] = position
    return lookup


def almost_conjugate(group: FiniteGroup, h1: Subgroup, h2: Subgroup) -> AlmostConjugacyVerdict:
    """
    Decide whether two subgroups are almost (elementwise) conjugate.

    The test compares |H1 ∩ C| and |H2 ∩ C| for every conjugacy class C; when
    they agree, a witness bijection is assembled class by class.

    Args:
        group: Ambient group
        h1: First subgroup
        h2: Second subgroup

    Returns:
        Verdict with witness bijection or the first failing class
    """
    counts = []
    witness: dict[int, int] = {}
    failing: Optional[ConjugacyClass] = None
    set1, set2 = set(h1.elements), set(h2.elements)
    for cls in conjugacy_classes(group):
        in1 = [x for x in cls.members if x in set1]
        in2 = [x for x in cls.members if x in set2]
        counts.append((cls.representative, len(in1), len(in2)))
        if len(in1) != len(in2):
            failing = failing or cls
            continue
        witness.update(zip(in1, in2))
    if failing is not None:
        return AlmostConjugacyVerdict(
            almost_conjugate=False, failing_class=failing, class_counts=tuple(counts)
        )
    return AlmostConjugacyVerdict(
        almost_conjugate=True, witness=witness, class_counts=tuple(counts)
    )


def conjugating_element(group: FiniteGroup, h1: Subgroup, h2: Subgroup) -> Optional[int]:
    """Least g with g H1 g^-1 = H2, by exhaustive search; None if there is none."""
    if len(h1) != len(h2):
        return None
    target = set(h2.elements)
    for g in range(group.order):
        if {group.conjugate(g, x) for x in h1.elements} == target:
            return g
    return None


def are_conjugate_subgroups(group: FiniteGroup, h1: Subgroup, h2: Subgroup) -> bool:
    """Whether H1 and H2 are conjugate subgroups."""
    return conjugating_element(group, h1, h2) is not None


def coset_action(
    group: FiniteGroup,
    subgroup: Subgroup,
    generators: Sequence[int],
    labels: Optional[Sequence[str]] = None,
) -> CosetAction:
    """
    Left-multiplication action of generators on the left cosets of a subgroup.

    Cosets are numbered in the order their least-index representative appears
    when scanning the elements by index.

    Args:
        group: Ambient group
        subgroup: Subgroup H
        generators: Element indices acting on G/H
        labels: Optional labels (default: element names)

    Returns:
        CosetAction with one permutation per generator

    Raises:
        NotASubgroupError: If `subgroup` does not belong to `group`
    """
    if subgroup.parent is not group:
        raise NotASubgroupError("Subgroup belongs to a different group")
    coset_of = [-1] * group.order
    reps: list[int] = []
    for x in range(group.order):
        if coset_of[x] >= 0:
            continue
        for h in subgroup.elements:
            coset_of[group.multiply(x, h)] = len(reps)
        reps.append(x)
    perms = tuple(
        tuple(coset_of[group.multiply(g, r)] for r in reps) for g in generators
    )
    return CosetAction(
        coset_count=len(reps),
        reps=tuple(reps),
        perm=perms,
        generator_labels=tuple(labels) if labels else tuple(group.name(g) for g in generators),
        generators=tuple(int(g) for g in generators),
        coset_of=tuple(coset_of),
    )


# --- The Gerst group Z8 ⋊ (Z2 x Z2) -------------------------------------------------

# h in {0: 1, 1: t, 2: u, 3: tu}; h acts on <s> by s -> s^{m[h]}.
_AUTOMORPHISM_MULTIPLIER = (1, 7, 3, 5)
_H_NAMES = ("", "t", "u", "tu")

GERST_GENERATOR_LABELS = ("Σ", "T", "U")
GENERATOR_SETS: dict[str, tuple[str, ...]] = {
    "sigma_t_u": ("st", "t", "u"),
    "st_t_tu": ("st", "t", "tu"),
}
GERST_SUBGROUPS: dict[str, tuple[str, ...]] = {
    "gamma1": ("1", "t", "u", "tu"),
    "gamma2": ("1", "t", "s^4u", "s^4tu"),
    "cyclic8": tuple(f"s^{i}" for i in range(8)),
}


def gerst_element(i: int, h: int) -> int:
    """Index of s^i·h (h = 0, 1, 2, 3 for 1, t, u, tu)."""
    return 8 * h + (i % 8)


def _gerst_name(i: int, h: int) -> str:
    power = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
    if power and _H_NAMES[h]:
        return f"{power}·{_H_NAMES[h]}"
    return power or _H_NAMES[h] or "1"


def build_gerst_group() -> FiniteGroup:
    """
    Build G = <s, t, u | s^8 = t^2 = u^2 = [t,u] = 1, tst = s^7, usu = s^3>.

    Element s^i·h has index 8h + i, so the least member of every conjugacy
    class is the familiar representative 1, s^4, s^2, v, s^2v, s, t, u, st, su, sv.

    Returns:
        FiniteGroup of order 32
    """
    table = np.empty((32, 32), dtype=np.int64)
    names = []
    for h1 in range(4):
        for i1 in range(8):
            names.append(_gerst_name(i1, h1))
            for h2 in range(4):
                for i2 in range(8):
                    i = i1 + _AUTOMORPHISM_MULTIPLIER[h1] * i2
                    table[gerst_element(i1, h1), gerst_element(i2, h2)] = gerst_element(i, h1 ^ h2)
    inv = np.array(
        [gerst_element(-_AUTOMORPHISM_MULTIPLIER[h] * i, h) for h in range(4) for i in range(8)],
        dtype=np.int64,
    )
    return FiniteGroup(
        mul=table,
        identity=0,
        inv=inv,
        names=tuple(names),
        generators=(("s", 1), ("t", 8), ("u", 16), ("v", 24)),
    )


def gerst_subgroup(group: FiniteGroup, name: str) -> Subgroup:
    """
    Named subgroup of the Gerst group.

    Args:
        group: Group returned by build_gerst_group
        name: One of gamma1, gamma2, cyclic8

    Returns:
        Subgroup

    Raises:
        ValueError: For an unknown name
    """
    if name not in GERST_SUBGROUPS:
        raise ValueError(f"Unknown subgroup '{name}'; expected one of {sorted(GERST_SUBGROUPS)}")
    return Subgroup(
        parent=group,
        elements=tuple(group.evaluate(word) for word in GERST_SUBGROUPS[name]),
        name=name,
    )


def generator_set(group: FiniteGroup, name: str) -> tuple[int, ...]:
    """Element indices of a named generator set (bound to labels Σ, T, U)."""
    if name not in GENERATOR_SETS:
        known = sorted(GENERATOR_SETS)
        raise ValueError(f"Unknown generator set '{name}'; expected one of {known}")
    return tuple(group.evaluate(word) for word in GENERATOR_SETS[name])


def trivial_group() -> FiniteGroup:
    """Group with one element."""
    return FiniteGroup.from_table([[0]], names=("1",))


def cyclic_group(n: int) -> FiniteGroup:
    """Cyclic group Z_n written additively on indices, generated by 'a'."""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    return FiniteGroup.from_table(table, names=names, generators={"a": 1 % n})
