"""Fundamental tile value object and the builtin tile catalog."""

import math
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from app.domain.errors import DegeneratePolygonError, UnknownTileError

AREA_TOLERANCE = 1e-12

Point = tuple[float, float]


@dataclass(frozen=True)
class TileSymmetry:
    """Self-isometry of a tile given as a permutation of its mesh points."""

    point_perm: tuple[int, ...]
    label_map: tuple[tuple[str, str], ...] = ()
    kind: str = "reflection"

    def maps_label(self, label: str) -> str:
        """Image of a glue label under the symmetry."""
        return dict(self.label_map).get(label, label)


@dataclass(frozen=True)
class TileSpec:
    """
    Planar polygonal tile with labeled boundary segments.

    `points` lists the polygon vertices in counter-clockwise order followed by
    any interior points of the coarse triangulation. Segment j runs from vertex
    j to vertex j+1 and carries `labels[j]` (a glue label, or None when free).
    """

    name: str
    points: tuple[Point, ...]
    vertex_count: int
    labels: tuple[Optional[str], ...]
    macro_triangles: tuple[tuple[int, int, int], ...]
    symmetries: tuple[TileSymmetry, ...] = field(default=())
    distinguished_segment: Optional[int] = None

    def __post_init__(self) -> None:
        """Validate polygon, labels, coarse triangulation and symmetries."""
        if self.vertex_count < 3 or len(self.points) < self.vertex_count:
            raise DegeneratePolygonError(f"Tile {self.name} needs at least 3 polygon vertices")
        if len(self.labels) != self.vertex_count:
            raise ValueError(f"Tile {self.name} needs one label per boundary segment")
        glue = [label for label in self.labels if label is not None]
        if len(glue) != len(set(glue)):
            raise ValueError(f"Tile {self.name} carries a glue label more than once")
        area = self.area
        if abs(area) <= AREA_TOLERANCE:
            raise DegeneratePolygonError(f"Tile {self.name} has zero area")
        if area < 0:
            raise ValueError(f"Tile {self.name} boundary must be counter-clockwise")
        if not self._is_simple():
            raise DegeneratePolygonError(f"Tile {self.name} boundary self-intersects")
        self._validate_macro_triangles(area)
        for symmetry in self.symmetries:
            self._validate_symmetry(symmetry)
        if self.distinguished_segment is not None and not (
            0 <= self.distinguished_segment < self.vertex_count
        ):
            raise ValueError(f"Tile {self.name} distinguished segment out of range")

    @property
    def polygon(self) -> np.ndarray:
        """Polygon vertices as an array of shape (n, 2)."""
        return np.asarray(self.points[: self.vertex_count], dtype=float)

    @property
    def area(self) -> float:
        """Signed area of the boundary polygon (positive when counter-clockwise)."""
        xy = self.polygon
        x, y = xy[:, 0], xy[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def diameter(self) -> float:
        """Largest distance between two polygon vertices."""
        xy = self.polygon
        return float(np.max(np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=-1)))

    @property
    def edge_order(self) -> tuple[Optional[str], ...]:
        """Counter-clockwise glue labels (None for free arcs)."""
        return self.labels

    @property
    def glue_labels(self) -> tuple[str, ...]:
        """Glue labels carried by the tile, in boundary order."""
        return tuple(label for label in self.labels if label is not None)

    def segment_of(self, label: str) -> int:
        """Index of the boundary segment carrying a glue label."""
        return self.labels.index(label)

    def symmetric_segment(self, symmetry: TileSymmetry, segment: int) -> int:
        """Boundary segment a symmetry maps `segment` onto."""
        n = self.vertex_count
        ends = {symmetry.point_perm[segment], symmetry.point_perm[(segment + 1) % n]}
        for image in range(n):
            if {image, (image + 1) % n} == ends:
                return image
        raise ValueError(f"Tile {self.name} symmetry does not map segment {segment} to a segment")

    def segment_endpoints(self, segment: int) -> tuple[Point, Point]:
        """Start and end point of a boundary segment."""
        return self.points[segment], self.points[(segment + 1) % self.vertex_count]

    def corner_angles(self) -> np.ndarray:
        """Interior angle at every polygon vertex."""
        xy = self.polygon
        incoming = xy - np.roll(xy, 1, axis=0)
        outgoing = np.roll(xy, -1, axis=0) - xy
        turn = np.arctan2(
            incoming[:, 0] * outgoing[:, 1] - incoming[:, 1] * outgoing[:, 0],
            np.sum(incoming * outgoing, axis=1),
        )
        return math.pi - turn

    def with_points(self, overrides: Mapping[int, Point]) -> "TileSpec":
        """Copy of the tile with some points moved (re-validated)."""
        points = list(self.points)
        for index, point in overrides.items():
            if not 0 <= index < len(points):
                raise ValueError(f"Tile {self.name} has no point {index}")
            points[index] = (float(point[0]), float(point[1]))
        return replace(self, points=tuple(points))

    def _is_simple(self) -> bool:
        xy = self.polygon
        n = self.vertex_count
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_intersect(xy[i], xy[(i + 1) % n], xy[j], xy[(j + 1) % n]):
                    return False
        return True

    def _validate_macro_triangles(self, area: float) -> None:
        xy = np.asarray(self.points, dtype=float)
        edges: set[tuple[int, int]] = set()
        total = 0.0
        for a, b, c in self.macro_triangles:
            signed = 0.5 * _cross(xy[b] - xy[a], xy[c] - xy[a])
            if signed <= AREA_TOLERANCE:
                raise DegeneratePolygonError(
                    f"Tile {self.name} macro triangle {(a, b, c)} is degenerate or clockwise"
                )
            total += signed
            edges.update({(min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(a, c), max(a, c))})
        if not math.isclose(total, area, rel_tol=1e-9):
            raise ValueError(f"Tile {self.name} macro triangles do not cover the polygon")
        for j in range(self.vertex_count):
            k = (j + 1) % self.vertex_count
            if (min(j, k), max(j, k)) not in edges:
                raise ValueError(f"Tile {self.name} segment {j} is not a macro triangle edge")

    def _validate_symmetry(self, symmetry: TileSymmetry) -> None:
        perm = symmetry.point_perm
        if sorted(perm) != list(range(len(self.points))):
            raise ValueError(f"Tile {self.name} symmetry is not a point permutation")
        xy = np.asarray(self.points, dtype=float)
        distances = np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=-1)
        image = distances[np.ix_(perm, perm)]
        if not np.allclose(distances, image, atol=1e-9):
            raise ValueError(f"Tile {self.name} symmetry is not an isometry")


def _cross(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def _segments_intersect(p1, p2, q1, q2) -> bool:
    d1 = _cross(q2 - q1, p1 - q1)
    d2 = _cross(q2 - q1, p2 - q1)
    d3 = _cross(p2 - p1, q1 - p1)
    d4 = _cross(p2 - p1, q2 - p1)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True

    def on_segment(a, b, p) -> bool:
        return (
            abs(_cross(b - a, p - a)) <= AREA_TOLERANCE
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        )

    return on_segment(q1, q2, p1) or on_segment(q1, q2, p2) or on_segment(p1, p2, q1) or (
        on_segment(p1, p2, q2)
    )


def _hexagon3() -> TileSpec:
    return TileSpec(
        name="hexagon3",
        points=((0.0, 0.0), (5.0, 0.0), (6.0, 2.0), (4.0, 5.0), (1.0, 4.0), (-1.0, 2.0)),
        vertex_count=6,
        labels=("Σ", None, "T", None, "U", None),
        macro_triangles=((0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5)),
    )


def _ytile(sigma_arm: float = 0.5, side_arm: float = 0.25) -> TileSpec:
    def corner(k: int) -> np.ndarray:
        return np.array([math.cos(math.radians(60 * k)), math.sin(math.radians(60 * k))])

    def normal(degrees: float) -> np.ndarray:
        return np.array([math.cos(math.radians(degrees)), math.sin(math.radians(degrees))])

    raw = [
        corner(0),
        corner(1),
        corner(1) + sigma_arm * normal(90),
        corner(2) + sigma_arm * normal(90),
        corner(2),
        corner(3),
        corner(3) + side_arm * normal(210),
        corner(4) + side_arm * normal(210),
        corner(4),
        corner(5),
        corner(5) + side_arm * normal(330),
        corner(0) + side_arm * normal(330),
        np.zeros(2),
        0.5 * (corner(1) + corner(2)) + 0.5 * sigma_arm * normal(90),
    ]
    # x -> -x swaps the T and U arms and maps the Σ arm onto itself.
    mirror = TileSymmetry(
        point_perm=(5, 4, 3, 2, 1, 0, 11, 10, 9, 8, 7, 6, 12, 13),
        label_map=(("T", "U"), ("U", "T")),
    )
    return TileSpec(
        name="ytile",
        points=tuple((round(float(p[0]), 15), round(float(p[1]), 15)) for p in raw),
        vertex_count=12,
        labels=(None, None, "Σ", None, None, None, "T", None, None, None, "U", None),
        macro_triangles=(
            (12, 0, 1),
            (12, 1, 4),
            (12, 4, 5),
            (12, 5, 8),
            (12, 8, 9),
            (12, 9, 0),
            (1, 2, 13),
            (2, 3, 13),
            (3, 4, 13),
            (4, 1, 13),
            (5, 6, 7),
            (5, 7, 8),
            (9, 10, 0),
            (10, 11, 0),
        ),
        symmetries=(mirror,),
    )


def _triangle() -> TileSpec:
    # Right angle at the corner between the T and U edges.
    return TileSpec(
        name="triangle",
        points=((0.0, 0.0), (4.0, 0.0), (0.0, 3.0)),
        vertex_count=3,
        labels=("T", "Σ", "U"),
        macro_triangles=((0, 1, 2),),
    )


def _ltile() -> TileSpec:
    return TileSpec(
        name="ltile",
        points=((0.0, 0.0), (4.0, 0.0), (5.0, 3.0), (1.0, 2.0)),
        vertex_count=4,
        labels=("E", None, None, None),
        macro_triangles=((0, 1, 2), (0, 2, 3)),
        distinguished_segment=0,
    )


def _square() -> TileSpec:
    return TileSpec(
        name="square",
        points=((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)),
        vertex_count=4,
        labels=(None, None, None, None),
        macro_triangles=((0, 1, 2), (0, 2, 3)),
    )


_BUILDERS = {
    "hexagon3": _hexagon3,
    "ytile": _ytile,
    "triangle": _triangle,
    "ltile": _ltile,
    "square": _square,
}

BUILTIN_TILE_NAMES = tuple(_BUILDERS)


def builtin_tile(name: str, overrides: Optional[Mapping[int, Point]] = None) -> TileSpec:
    """
    Look up a builtin tile, optionally moving some of its points.

    Args:
        name: One of hexagon3, ytile, triangle, ltile, square
        overrides: Point index -> replacement coordinates

    Returns:
        TileSpec

    Raises:
        UnknownTileError: For an unknown name
    """
    if name not in _BUILDERS:
        raise UnknownTileError(f"Unknown tile '{name}'; expected one of {list(_BUILDERS)}")
    tile = _BUILDERS[name]()
    if overrides:
        tile = tile.with_points(overrides)
    return tile
