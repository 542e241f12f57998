"""Uniform triangulation of a tile."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from app.domain.errors import DegeneratePolygonError, NonConformingMeshError
from app.domain.value_objects.tile_spec import TileSpec, TileSymmetry

INTERIOR = "interior"
CORNER = "corner"
FREE = "free"
GLUE = "glue"

SYMMETRY_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class TileMesh:
    """
    Conforming triangulation of a tile at refinement k.

    `segment_nodes[j]` lists the k+1 nodes of boundary segment j from its start
    vertex to its end vertex, equally spaced, so node m sits at arclength
    parameter m/k on every copy of the tile.
    """

    tile: TileSpec
    refinement: int
    nodes: np.ndarray
    triangles: np.ndarray
    segment_nodes: tuple[np.ndarray, ...]
    node_class: tuple[str, ...]

    @property
    def node_count(self) -> int:
        """Number of mesh nodes."""
        return int(self.nodes.shape[0])

    @property
    def triangle_count(self) -> int:
        """Number of triangles."""
        return int(self.triangles.shape[0])

    @property
    def corner_nodes(self) -> np.ndarray:
        """Mesh node of every polygon vertex."""
        return np.array([nodes[0] for nodes in self.segment_nodes], dtype=np.int64)

    def edges(self) -> np.ndarray:
        """Unique undirected edges, sorted, as an (E, 2) array."""
        t = self.triangles
        pairs = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        return np.unique(np.sort(pairs, axis=1), axis=0)

    def boundary_edge_count(self) -> int:
        """Number of mesh edges on the tile boundary."""
        return self.refinement * self.tile.vertex_count

    def triangle_areas(self) -> np.ndarray:
        """Signed area of every triangle (positive for counter-clockwise)."""
        p = self.nodes[self.triangles]
        u = p[:, 1] - p[:, 0]
        v = p[:, 2] - p[:, 0]
        return 0.5 * (u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])

    def max_diameter(self) -> float:
        """Largest triangle edge length."""
        p = self.nodes[self.triangles]
        lengths = np.linalg.norm(p - np.roll(p, 1, axis=1), axis=-1)
        return float(lengths.max())

    def symmetry_permutation(self, symmetry: TileSymmetry) -> np.ndarray:
        """
        Node permutation induced by a tile symmetry.

        The isometry is fitted to the tile points and their images; every mapped
        node must land on a mesh node.

        Raises:
            NonConformingMeshError: If the triangulation is not invariant
        """
        points = np.asarray(self.tile.points, dtype=float)
        images = points[list(symmetry.point_perm)]
        affine, *_ = np.linalg.lstsq(
            np.column_stack([points, np.ones(len(points))]), images, rcond=None
        )
        mapped = np.column_stack([self.nodes, np.ones(self.node_count)]) @ affine
        distance, perm = cKDTree(self.nodes).query(mapped)
        tolerance = SYMMETRY_TOLERANCE * max(1.0, self.tile.diameter)
        if distance.max() > tolerance or np.unique(perm).size != perm.size:
            raise NonConformingMeshError(
                f"Mesh of tile {self.tile.name} at k={self.refinement} is not invariant "
                "under its symmetry"
            )
        return perm.astype(np.int64)


def _node_key(triangle: tuple[int, int, int], index: int, i: int, j: int, k: int) -> tuple:
    """Key shared by coincident nodes of neighbouring macro triangles."""
    a, b, c = triangle
    w_a, w_b, w_c = k - i - j, i, j
    vertices = [(a, w_a), (b, w_b), (c, w_c)]
    present = [(v, w) for v, w in vertices if w > 0]
    if len(present) == 1:
        return ("v", present[0][0])
    if len(present) == 2:
        (u, wu), (v, wv) = sorted(present)
        return ("e", u, v, wv)
    return ("t", index, i, j)


def mesh_tile(spec: TileSpec, k: int) -> TileMesh:
    """
    Mesh a tile by subdividing each macro triangle uniformly into k² triangles.

    Args:
        spec: Tile to mesh
        k: Refinement (number of subdivisions per macro edge)

    Returns:
        TileMesh whose boundary segments carry k+1 equally spaced nodes

    Raises:
        ValueError: If k < 1
        DegeneratePolygonError: If a generated triangle has no area
    """
    if k < 1:
        raise ValueError("Refinement must be at least 1")
    points = np.asarray(spec.points, dtype=float)
    keys: dict[tuple, int] = {}
    coordinates: list[np.ndarray] = []
    triangles: list[tuple[int, int, int]] = []

    def node(key: tuple, position: np.ndarray) -> int:
        if key not in keys:
            keys[key] = len(coordinates)
            coordinates.append(position)
        return keys[key]

    for index, triangle in enumerate(spec.macro_triangles):
        pa, pb, pc = points[list(triangle)]
        local: dict[tuple[int, int], int] = {}
        for i in range(k + 1):
            for j in range(k + 1 - i):
                position = pa + (i / k) * (pb - pa) + (j / k) * (pc - pa)
                local[(i, j)] = node(_node_key(triangle, index, i, j, k), position)
        for i in range(k):
            for j in range(k - i):
                triangles.append((local[(i, j)], local[(i + 1, j)], local[(i, j + 1)]))
                if i + j < k - 1:
                    triangles.append(
                        (local[(i + 1, j)], local[(i + 1, j + 1)], local[(i, j + 1)])
                    )

    n = spec.vertex_count
    segment_nodes = []
    node_class = [INTERIOR] * len(coordinates)
    for segment in range(n):
        start, end = segment, (segment + 1) % n
        nodes = [keys[("v", start)]]
        for m in range(1, k):
            key = ("e", start, end, m) if start < end else ("e", end, start, k - m)
            nodes.append(keys[key])
        nodes.append(keys[("v", end)])
        segment_nodes.append(np.array(nodes, dtype=np.int64))
        kind = FREE if spec.labels[segment] is None else GLUE
        for x in nodes[1:-1]:
            node_class[x] = kind
    for nodes in segment_nodes:
        node_class[nodes[0]] = CORNER

    mesh = TileMesh(
        tile=spec,
        refinement=k,
        nodes=np.asarray(coordinates, dtype=float),
        triangles=np.asarray(triangles, dtype=np.int64),
        segment_nodes=tuple(segment_nodes),
        node_class=tuple(node_class),
    )
    if np.any(mesh.triangle_areas() <= 0):
        raise DegeneratePolygonError(f"Mesh of tile {spec.name} has degenerate triangles")
    return mesh
