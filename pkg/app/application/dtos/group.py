"""Group-theoretic DTOs: triples, Schreier graphs, characters, intertwiners."""

from typing import Optional

from pydantic import ConfigDict

from app.application.dtos.base import DTO


class ClassCount(DTO):
    """Sizes of H1 ∩ C and H2 ∩ C for one conjugacy class C."""

    representative: str
    class_size: int
    h1_count: int
    h2_count: int


class TripleReport(DTO):
    """Verdict on a candidate Gassmann-Sunada triple (G, H1, H2)."""

    group: str
    group_order: int
    h1: str
    h2: str
    almost_conjugate: bool
    conjugate: bool
    nontrivial: bool
    class_counts: list[ClassCount]
    witness: dict[str, str]
    failing_class: Optional[str] = None
    verdict: str

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "group": "gerst",
                "group_order": 32,
                "h1": "gamma1",
                "h2": "gamma2",
                "almost_conjugate": True,
                "conjugate": False,
                "nontrivial": True,
                "class_counts": [],
                "witness": {"u": "s^4·u"},
                "failing_class": None,
                "verdict": "PASS",
            }
        }
    )


class GraphReport(DTO):
    """Schreier graph of G/H with its orientability verdict."""

    subgroup: str
    generator_set: str
    generators: list[str]
    vertex_count: int
    full_edges: list[tuple[int, int, str]]
    half_edges: list[tuple[int, str]]
    orientable: bool
    coloring: Optional[list[int]] = None
    witness_cycle: Optional[list[int]] = None
    witness_labels: Optional[list[str]] = None


class CharacterRow(DTO):
    """One irreducible character."""

    name: str
    dimension: int
    values: list[str]


class CharacterTableReport(DTO):
    """Character table with both orthogonality checks."""

    classes: list[str]
    class_sizes: list[int]
    rows: list[CharacterRow]
    orthonormal: bool
    column_orthogonal: bool


class DecompositionReport(DTO):
    """Induced character of C[G/H] and its irreducible multiplicities."""

    subgroup: str
    induced: list[str]
    multiplicities: dict[str, int]
    components: list[str]


class IntertwinerReport(DTO):
    """Space of intertwiners C[G/Γ1] -> C[G/Γ2] and the chosen transplantation matrix."""

    dimension: int
    basis_first_rows: list[list[str]]
    parameters: list[str]
    alpha: str
    beta: str
    gamma: str
    delta: str
    matrix: list[list[str]]
    intertwines: bool
    invertible: bool
