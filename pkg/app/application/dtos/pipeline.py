"""Run configuration and pipeline report DTOs."""

from typing import Any, Optional

from pydantic import Field, field_validator, model_validator

from app.application.dtos.base import DTO

BC_CHOICES = ("neumann", "dirichlet")
MODE_CHOICES = ("fem", "graph")


class ExpectedVerdicts(DTO):
    """Verdict every pipeline stage is expected to reach."""

    triple: str = "PASS"
    m1_orientable: bool = False
    m2_orientable: bool = True
    neumann: str = "PASS"
    transplant: str = "PASS"
    dirichlet: str = "DISTINGUISHED"
    quotient: str = "PASS"
    fold: str = "PASS"
    cone_point_surfaces: Optional[int] = None


class RunConfig(DTO):
    """Validated configuration of one command-line run."""

    tile: str = "ytile"
    tile_overrides: dict[int, tuple[float, float]] = Field(default_factory=dict)
    group: str = "gerst"
    h1: str = "gamma1"
    h2: str = "gamma2"
    subgroup: Optional[str] = None
    generator_set: str = "sigma_t_u"
    refine: list[int] = Field(default_factory=lambda: [8])
    bc: str = "neumann"
    mixed_neumann: list[str] = Field(default_factory=list)
    mode: str = "graph"
    count: int = 20
    tol: float = 1e-9
    solver_tol: float = 1e-8
    seed: int = 0
    out: str = "out"
    parameters: tuple[int, int, int, int] = (6, -2, 2, 2)
    expected: ExpectedVerdicts = Field(default_factory=ExpectedVerdicts)

    @field_validator("tol", "solver_tol")
    @classmethod
    def _positive_tolerance(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("Tolerances must be > 0")
        return value

    @field_validator("refine")
    @classmethod
    def _ascending_levels(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("At least one refinement level is required")
        if any(k < 1 for k in value):
            raise ValueError("Refinement levels must be >= 1")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("Refinement levels must be strictly ascending")
        return value

    @field_validator("count")
    @classmethod
    def _positive_count(cls, value: int) -> int:
        if value < 1:
            raise ValueError("Eigenpair count must be >= 1")
        return value

    @field_validator("mode")
    @classmethod
    def _known_mode(cls, value: str) -> str:
        if value not in MODE_CHOICES:
            raise ValueError(f"Mode must be one of {list(MODE_CHOICES)}")
        return value

    @model_validator(mode="after")
    def _known_bc(self) -> "RunConfig":
        if self.bc not in (*BC_CHOICES, "mixed"):
            raise ValueError("Boundary condition must be neumann, dirichlet or mixed")
        if self.bc == "mixed" and not self.mixed_neumann:
            raise ValueError("Mixed boundary conditions need at least one Neumann segment")
        return self

    @property
    def finest(self) -> int:
        """Finest refinement level."""
        return self.refine[-1]


class StageResult(DTO):
    """Outcome of one pipeline stage."""

    stage: str
    verdict: str
    expected: str
    matches: bool
    details: dict[str, Any] = Field(default_factory=dict)


class PipelineReport(DTO):
    """End-to-end verification report with full provenance."""

    config: dict[str, Any]
    tile_coordinates: list[tuple[float, float]]
    stages: list[StageResult]
    outputs: list[str]
    passed: bool
