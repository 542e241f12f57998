"""Boundary condition assignment value object."""

from collections.abc import Iterable
from dataclasses import dataclass

NEUMANN = "neumann"
DIRICHLET = "dirichlet"
_KINDS = (NEUMANN, DIRICHLET)


@dataclass(frozen=True)
class BCAssignment:
    """Dirichlet or Neumann condition for every named boundary segment."""

    kinds: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        """Validate kinds and uniqueness of segment names."""
        names = [name for name, _ in self.kinds]
        if len(names) != len(set(names)):
            raise ValueError("Boundary segment assigned more than once")
        for name, kind in self.kinds:
            if kind not in _KINDS:
                raise ValueError(f"Boundary segment {name}: unknown condition '{kind}'")

    @classmethod
    def uniform(cls, names: Iterable[str], kind: str) -> "BCAssignment":
        """Same condition on every segment."""
        return cls(kinds=tuple((name, kind) for name in names))

    @classmethod
    def mixed(
        cls, names: Iterable[str], neumann: Iterable[str], default: str = DIRICHLET
    ) -> "BCAssignment":
        """
        Neumann on the listed segments and `default` elsewhere.

        Raises:
            ValueError: If a Neumann segment is not among `names`
        """
        names = list(names)
        neumann_set = set(neumann)
        unknown = neumann_set - set(names)
        if unknown:
            raise ValueError(f"Unknown boundary segments {sorted(unknown)}")
        other = DIRICHLET if default == DIRICHLET else NEUMANN
        return cls(
            kinds=tuple((name, NEUMANN if name in neumann_set else other) for name in names)
        )

    def kind_of(self, name: str) -> str:
        """Condition assigned to a segment."""
        return dict(self.kinds)[name]

    @property
    def neumann_names(self) -> tuple[str, ...]:
        """Segments with Neumann conditions."""
        return tuple(name for name, kind in self.kinds if kind == NEUMANN)

    @property
    def dirichlet_names(self) -> tuple[str, ...]:
        """Segments with Dirichlet conditions."""
        return tuple(name for name, kind in self.kinds if kind == DIRICHLET)

    @property
    def label(self) -> str:
        """neumann, dirichlet or mixed."""
        kinds = {kind for _, kind in self.kinds}
        if kinds == {NEUMANN} or not kinds:
            return NEUMANN
        if kinds == {DIRICHLET}:
            return DIRICHLET
        return "mixed"

    def covers(self, names: Iterable[str]) -> bool:
        """Whether every given segment is assigned."""
        assigned = {name for name, _ in self.kinds}
        return set(names) <= assigned
