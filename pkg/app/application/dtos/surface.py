"""Surface DTOs."""

from typing import Optional

from app.application.dtos.base import DTO


class ConePointReport(DTO):
    """Interior node with an angle defect."""

    node: int
    angle: float
    copies: list[int]


class SurfaceReport(DTO):
    """Combinatorial and metric summary of an assembled surface."""

    name: str
    tile: str
    refinement: int
    copy_count: int
    node_count: int
    triangle_count: int
    area: float
    euler_characteristic: int
    predicted_euler_characteristic: Optional[int] = None
    boundary_components: int
    orientable: Optional[bool] = None
    cone_points: list[ConePointReport]
    boundary_segments: list[str]
