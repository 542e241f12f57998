"""Transplantation DTOs."""

from pydantic import ConfigDict

from app.application.dtos.base import DTO


class EdgeResidual(DTO):
    """Mismatch of the two tile-side traces along a glued edge."""

    edge: str
    residual: float


class TransplantCheck(DTO):
    """Eigen-residual of one transplanted eigenfunction."""

    index: int
    eigenvalue: float
    residual: float
    edge_mismatch: float
    direction: str


class IntertwiningDefectReport(DTO):
    """max|K2·T - T̃ᵀ·K1| and max|N2·T - T̃ᵀ·N1|."""

    mode: str
    stiffness: float
    mass: float
    exact_arithmetic: bool

    @property
    def vanishes(self) -> bool:
        """Whether both defects are zero."""
        return self.stiffness == 0 and self.mass == 0


class TransplantReport(DTO):
    """Transplantation of the lowest Neumann eigenfunctions M1 -> M2 and back."""

    mode: str
    refinement: int
    parameters: list[str]
    count: int
    tolerance: float
    defect: IntertwiningDefectReport
    forward: list[TransplantCheck]
    inverse: list[TransplantCheck]
    roundtrip_error: float
    max_residual: float
    max_edge_mismatch: float
    passed: bool

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "mode": "graph",
                "refinement": 8,
                "parameters": ["6", "-2", "2", "2"],
                "count": 20,
                "tolerance": 1e-9,
                "defect": {
                    "mode": "graph",
                    "stiffness": 0.0,
                    "mass": 0.0,
                    "exact_arithmetic": True,
                },
                "forward": [],
                "inverse": [],
                "roundtrip_error": 0.0,
                "max_residual": 3.1e-13,
                "max_edge_mismatch": 0.0,
                "passed": True,
            }
        }
    )
