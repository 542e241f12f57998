"""Surfaces assembled from glued copies of a meshed tile."""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Optional

import networkx as nx
import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from app.domain.entities.schreier_graph import (
    SchreierGraph,
    euler_characteristic,
    is_orientable,
)
from app.domain.entities.tile_mesh import TileMesh
from app.domain.errors import (
    LabelMismatchError,
    NonConformingMeshError,
    NotAGraphAutomorphismError,
    OverlappingDomainError,
)
from app.domain.value_objects.boundary_conditions import BCAssignment
from app.domain.value_objects.tile_spec import TileSymmetry

CONE_ANGLE_TOLERANCE = 1e-12
ARCLENGTH_TOLERANCE = 1e-12

FREE_ARC = "free"
HALF_EDGE = "half_edge"


@dataclass(frozen=True)
class Placement:
    """Isometry of the plane placing a tile copy in the export layout."""

    rotation: tuple[tuple[float, float], tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))
    translation: tuple[float, float] = (0.0, 0.0)

    def apply(self, xy: np.ndarray) -> np.ndarray:
        """Map local tile coordinates to layout coordinates."""
        return xy @ np.asarray(self.rotation).T + np.asarray(self.translation)

    @property
    def is_reflection(self) -> bool:
        """Whether the placement reverses orientation."""
        return bool(np.linalg.det(np.asarray(self.rotation)) < 0)


@dataclass(frozen=True)
class Gluing:
    """Identification of boundary segment `segment` of two tile copies."""

    copy_a: int
    copy_b: int
    label: str
    segment: int
    reversed: bool = False


@dataclass(frozen=True)
class BoundarySegment:
    """Unglued tile segment on the surface boundary."""

    name: str
    copy: int
    segment: int
    origin: str
    label: Optional[str] = None


@dataclass(frozen=True)
class ConePoint:
    """Interior surface node whose incident tile angles do not sum to 2π."""

    node: int
    angle: float
    copies: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SurfaceMesh:
    """Triangulated flat surface glued from copies of one tile mesh."""

    name: str
    tile_mesh: TileMesh
    copy_names: tuple[str, ...]
    global_ids: np.ndarray
    gluings: tuple[Gluing, ...]
    boundary_segments: tuple[BoundarySegment, ...]
    placements: tuple[Placement, ...]
    orientation_signs: Optional[tuple[int, ...]] = None
    graph: Optional[SchreierGraph] = None
    planar: bool = False
    predicted_euler: Optional[int] = field(default=None)

    @property
    def copy_count(self) -> int:
        """Number of tile copies."""
        return len(self.copy_names)

    @property
    def node_count(self) -> int:
        """Number of surface nodes after identification."""
        return int(self.global_ids.max()) + 1

    @property
    def triangles(self) -> np.ndarray:
        """Global node triples, copy by copy in local triangle order."""
        return np.concatenate([ids[self.tile_mesh.triangles] for ids in self.global_ids])

    @property
    def triangle_copy(self) -> np.ndarray:
        """Tile copy of every global triangle."""
        return np.repeat(np.arange(self.copy_count), self.tile_mesh.triangle_count)

    @property
    def area(self) -> float:
        """Total area."""
        return self.copy_count * float(self.tile_mesh.triangle_areas().sum())

    @property
    def segment_names(self) -> tuple[str, ...]:
        """Names of all boundary segments."""
        return tuple(segment.name for segment in self.boundary_segments)

    def segment_nodes(self, copy: int, segment: int) -> np.ndarray:
        """Global nodes of segment `segment` of copy `copy`, start to end."""
        return self.global_ids[copy][self.tile_mesh.segment_nodes[segment]]

    def boundary_nodes(self, names: Optional[Sequence[str]] = None) -> np.ndarray:
        """Sorted global nodes on the named (default: all) boundary segments."""
        wanted = set(self.segment_names if names is None else names)
        nodes = [
            self.segment_nodes(s.copy, s.segment)
            for s in self.boundary_segments
            if s.name in wanted
        ]
        if not nodes:
            return np.zeros(0, dtype=np.int64)
        return np.unique(np.concatenate(nodes))

    def interior_nodes(self) -> np.ndarray:
        """Global nodes not on the boundary."""
        return np.setdiff1d(np.arange(self.node_count), self.boundary_nodes())

    def all_neumann(self) -> BCAssignment:
        """Neumann condition on every boundary segment."""
        return BCAssignment.uniform(self.segment_names, "neumann")

    def all_dirichlet(self) -> BCAssignment:
        """Dirichlet condition on every boundary segment."""
        return BCAssignment.uniform(self.segment_names, "dirichlet")

    def edge_count(self) -> int:
        """Edges of the triangulation, counting glued edge pairs once."""
        glued = sum(self.tile_mesh.refinement for _ in self.gluings)
        return self.copy_count * len(self.tile_mesh.edges()) - glued

    def euler_characteristic(self) -> int:
        """V - E + F of the triangulation."""
        return self.node_count - self.edge_count() + self.copy_count * self.tile_mesh.triangle_count

    def boundary_component_count(self) -> int:
        """Connected components of the boundary curve."""
        boundary = nx.Graph()
        k = self.tile_mesh.refinement
        for s in self.boundary_segments:
            nodes = self.segment_nodes(s.copy, s.segment)
            boundary.add_edges_from(
                (int(nodes[m]), int(nodes[m + 1])) for m in range(k)
            )
        return nx.number_connected_components(boundary)

    def gluing_node_pairs(self, gluing: Gluing) -> tuple[np.ndarray, np.ndarray]:
        """Local nodes of the two sides of a gluing, paired position by position."""
        nodes = self.tile_mesh.segment_nodes[gluing.segment]
        return nodes, (nodes[::-1] if gluing.reversed else nodes)

    def layout_coordinates(self) -> np.ndarray:
        """Node coordinates of every copy in the export layout, shape (copies, n, 2)."""
        return np.stack([p.apply(self.tile_mesh.nodes) for p in self.placements])

    def layout_outline(self) -> np.ndarray:
        """Layout position of every boundary segment start point."""
        corners = []
        for s in self.boundary_segments:
            start = self.tile_mesh.segment_nodes[s.segment][0]
            corners.append(self.placements[s.copy].apply(self.tile_mesh.nodes[start][None, :])[0])
        return np.asarray(corners)


def _arclength_parameters(mesh: TileMesh, segment: int) -> np.ndarray:
    xy = mesh.nodes[mesh.segment_nodes[segment]]
    total = np.linalg.norm(xy[-1] - xy[0])
    return np.linalg.norm(xy - xy[0], axis=1) / total


def glue_copies(
    name: str,
    tile_mesh: TileMesh,
    copy_names: Sequence[str],
    gluings: Sequence[Gluing],
    boundary_segments: Sequence[BoundarySegment],
    placements: Sequence[Placement],
    graph: Optional[SchreierGraph] = None,
    orientation_signs: Optional[Sequence[int]] = None,
    planar: bool = False,
) -> SurfaceMesh:
    """
    Identify glued nodes of tile copies and number the surface nodes.

    Surface node ids are ordered by the least (copy, local node) they contain.

    Args:
        name: Surface name
        tile_mesh: Mesh shared by all copies
        copy_names: Display name of every copy
        gluings: Segment identifications
        boundary_segments: Every unglued segment
        placements: Export layout of every copy
        graph: Schreier graph the gluing came from, if any
        orientation_signs: Side of every copy when the surface is orientable
        planar: Whether the layout is an isometric embedding

    Returns:
        SurfaceMesh

    Raises:
        NonConformingMeshError: If glued nodes do not match or a segment is
            neither glued exactly once nor on the boundary
    """
    copies = len(copy_names)
    n = tile_mesh.node_count
    n_segments = tile_mesh.tile.vertex_count
    uses: dict[tuple[int, int], int] = {}
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    for gluing in gluings:
        for key in ((gluing.copy_a, gluing.segment), (gluing.copy_b, gluing.segment)):
            uses[key] = uses.get(key, 0) + 1
        side_a = tile_mesh.segment_nodes[gluing.segment]
        side_b = side_a[::-1] if gluing.reversed else side_a
        params = _arclength_parameters(tile_mesh, gluing.segment)
        partner = 1.0 - params[::-1] if gluing.reversed else params
        if len(side_a) != len(side_b) or np.max(np.abs(params - partner)) > ARCLENGTH_TOLERANCE:
            raise NonConformingMeshError(
                f"Segment {gluing.segment} of copies {gluing.copy_a}, {gluing.copy_b} "
                "does not carry matching node layouts"
            )
        rows.append(gluing.copy_a * n + side_a)
        cols.append(gluing.copy_b * n + side_b)
    for segment in boundary_segments:
        key = (segment.copy, segment.segment)
        uses[key] = uses.get(key, 0) + 1
    for copy in range(copies):
        for segment in range(n_segments):
            if uses.get((copy, segment), 0) != 1:
                raise NonConformingMeshError(
                    f"Segment {segment} of copy {copy_names[copy]} must be glued once "
                    "or lie on the boundary"
                )

    size = copies * n
    if rows:
        r, c = np.concatenate(rows), np.concatenate(cols)
        identification = sparse.coo_matrix((np.ones(r.size), (r, c)), shape=(size, size))
    else:
        identification = sparse.coo_matrix((size, size))
    _, labels = connected_components(identification, directed=False)
    first = np.full(labels.max() + 1, size, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(size))
    rank = np.empty_like(first)
    rank[np.argsort(first)] = np.arange(first.size)
    global_ids = rank[labels].reshape(copies, n)

    return SurfaceMesh(
        name=name,
        tile_mesh=tile_mesh,
        copy_names=tuple(copy_names),
        global_ids=global_ids,
        gluings=tuple(gluings),
        boundary_segments=tuple(boundary_segments),
        placements=tuple(placements),
        orientation_signs=tuple(orientation_signs) if orientation_signs is not None else None,
        graph=graph,
        planar=planar,
    )


def _grid_layout(tile_mesh: TileMesh, signs: Optional[Sequence[int]], copies: int) -> list:
    xy = tile_mesh.nodes
    width, height = np.ptp(xy[:, 0]), np.ptp(xy[:, 1])
    gap = 0.25 * max(width, height)
    placements = []
    for copy in range(copies):
        row, col = divmod(copy, 4)
        flip = signs is not None and signs[copy] < 0
        rotation = ((-1.0, 0.0), (0.0, 1.0)) if flip else ((1.0, 0.0), (0.0, 1.0))
        x0 = col * (width + gap) - (xy[:, 0].min() if not flip else -xy[:, 0].max())
        y0 = -row * (height + gap) - xy[:, 1].min()
        placements.append(Placement(rotation=rotation, translation=(float(x0), float(y0))))
    return placements


def assemble_surface(
    graph: SchreierGraph,
    tile_mesh: TileMesh,
    name: str = "M",
    copy_names: Optional[Sequence[str]] = None,
) -> SurfaceMesh:
    """
    Glue one tile copy per coset along the Schreier graph.

    For every full edge (x, y, r) the r-segments of copies x and y are
    identified pointwise (reflection in the common edge). Glue segments at
    half-edges and free arcs become boundary.

    Args:
        graph: Schreier graph
        tile_mesh: Meshed tile carrying every graph label
        name: Surface name
        copy_names: Display names of the copies (default: vertex indices)

    Returns:
        SurfaceMesh with orientation signs when the surface is orientable

    Raises:
        LabelMismatchError: If a graph label is not carried by the tile
        NonConformingMeshError: If the triangulation disagrees with the
            combinatorial Euler characteristic
    """
    tile = tile_mesh.tile
    missing = set(graph.labels) - set(tile.glue_labels)
    if missing:
        raise LabelMismatchError(f"Tile {tile.name} does not carry labels {sorted(missing)}")
    names = tuple(copy_names) if copy_names else tuple(str(x) for x in range(graph.vertex_count))
    neighbors = graph.neighbor_table()
    gluings = [
        Gluing(copy_a=a, copy_b=b, label=label, segment=tile.segment_of(label))
        for a, b, label in graph.full_edges
    ]
    boundary = []
    for copy in range(graph.vertex_count):
        for segment, label in enumerate(tile.labels):
            if label is None:
                boundary.append(
                    BoundarySegment(f"{names[copy]}free{segment}", copy, segment, FREE_ARC)
                )
            elif label not in neighbors:
                boundary.append(
                    BoundarySegment(f"{names[copy]}{label}", copy, segment, FREE_ARC, label)
                )
            elif neighbors[label][copy] is None:
                boundary.append(
                    BoundarySegment(f"{names[copy]}{label}", copy, segment, HALF_EDGE, label)
                )
    verdict = is_orientable(graph)
    signs = tuple(1 - 2 * c for c in verdict.coloring) if verdict.orientable else None
    mesh = glue_copies(
        name=name,
        tile_mesh=tile_mesh,
        copy_names=names,
        gluings=gluings,
        boundary_segments=boundary,
        placements=_grid_layout(tile_mesh, signs, graph.vertex_count),
        graph=graph,
        orientation_signs=signs,
    )
    predicted = euler_characteristic(graph, tile.edge_order)
    if mesh.euler_characteristic() != predicted:
        raise NonConformingMeshError(
            f"Surface {name} has Euler characteristic {mesh.euler_characteristic()}, "
            f"expected {predicted}"
        )
    return replace(mesh, predicted_euler=predicted)


def _triangle_angles(tile_mesh: TileMesh) -> np.ndarray:
    p = tile_mesh.nodes[tile_mesh.triangles]
    angles = np.empty(tile_mesh.triangles.shape, dtype=float)
    for corner in range(3):
        u = p[:, (corner + 1) % 3] - p[:, corner]
        v = p[:, (corner + 2) % 3] - p[:, corner]
        cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
        angles[:, corner] = np.arctan2(np.abs(cross), np.sum(u * v, axis=1))
    return angles


def cone_points(mesh: SurfaceMesh, tolerance: float = CONE_ANGLE_TOLERANCE) -> list[ConePoint]:
    """
    Interior nodes whose total incident angle differs from 2π.

    Args:
        mesh: Assembled surface
        tolerance: Angle tolerance

    Returns:
        Cone points ordered by node id
    """
    local = _triangle_angles(mesh.tile_mesh)
    totals = np.zeros(mesh.node_count)
    for ids in mesh.global_ids:
        np.add.at(totals, ids[mesh.tile_mesh.triangles].ravel(), local.ravel())
    interior = mesh.interior_nodes()
    defects = interior[np.abs(totals[interior] - 2 * math.pi) > tolerance]
    points = []
    for node in defects:
        copies = tuple(int(c) for c in np.flatnonzero((mesh.global_ids == node).any(axis=1)))
        points.append(ConePoint(node=int(node), angle=float(totals[node]), copies=copies))
    return points


def quotient_by_involution(
    mesh: SurfaceMesh, tile_perm: Sequence[int]
) -> tuple[SurfaceMesh, BCAssignment]:
    """
    Quotient of a glued surface by an involutive symmetry of its Schreier graph.

    Copies x and perm[x] are identified; the larger index represents the pair.
    An edge joining x to perm[x] is fixed pointwise and becomes a Neumann
    (mirror) segment named after its representative copy and label; every
    other boundary segment gets a Dirichlet condition.

    Args:
        mesh: Surface assembled by `assemble_surface`
        tile_perm: Involutive permutation of the tile copies

    Returns:
        (quotient surface, mixed boundary assignment)

    Raises:
        NotAGraphAutomorphismError: If the permutation is not a label-preserving
            involutive automorphism of the Schreier graph
    """
    graph = mesh.graph
    perm = list(tile_perm)
    if graph is None or not graph.is_automorphism(perm):
        raise NotAGraphAutomorphismError("Tile permutation is not a Schreier graph automorphism")
    if any(perm[perm[x]] != x for x in range(len(perm))):
        raise NotAGraphAutomorphismError("Tile permutation is not an involution")
    reps = sorted({max(x, perm[x]) for x in range(len(perm))})
    index = {rep: i for i, rep in enumerate(reps)}

    def rep(x: int) -> int:
        return index[max(x, perm[x])]

    full: set[tuple[int, int, str]] = set()
    half: set[tuple[int, str]] = set()
    mirrors: set[tuple[int, str]] = set()
    for a, b, label in graph.full_edges:
        ra, rb = rep(a), rep(b)
        if ra == rb:
            mirrors.add((ra, label))
        else:
            full.add((min(ra, rb), max(ra, rb), label))
    for x, label in graph.half_edges:
        half.add((rep(x), label))
    quotient_graph = SchreierGraph(
        vertex_count=len(reps),
        full_edges=tuple(sorted(full)),
        half_edges=tuple(sorted(half | mirrors)),
        labels=graph.labels,
    )
    names = tuple(mesh.copy_names[r] for r in reps)
    quotient = assemble_surface(
        quotient_graph, mesh.tile_mesh, name=f"{mesh.name}/involution", copy_names=names
    )
    neumann = [f"{names[x]}{label}" for x, label in sorted(mirrors)]
    return quotient, BCAssignment.mixed(quotient.segment_names, neumann)


@dataclass(frozen=True, eq=False)
class SymmetricQuotient:
    """
    Surface with boundary conditions and a symmetry acting on its nodes.

    Copy x is carried onto copy copy_perm[x] by the tile symmetry. Copies the
    permutation fixes are folded onto themselves; the quotient problem lives
    on functions constant on every node orbit.
    """

    mesh: SurfaceMesh
    bc: BCAssignment
    symmetry: TileSymmetry
    copy_perm: tuple[int, ...]
    node_perm: np.ndarray

    @property
    def folded_copies(self) -> tuple[int, ...]:
        """Copies mapped onto themselves."""
        return tuple(x for x, image in enumerate(self.copy_perm) if x == image)

    def node_orbits(self) -> np.ndarray:
        """Least node of the orbit of every node."""
        n = self.mesh.node_count
        links = sparse.coo_matrix(
            (np.ones(n), (np.arange(n), self.node_perm)), shape=(n, n)
        )
        _, labels = connected_components(links, directed=False)
        least = np.full(labels.max() + 1, n, dtype=np.int64)
        np.minimum.at(least, labels, np.arange(n))
        return least[labels]


def symmetry_node_permutation(
    mesh: SurfaceMesh, symmetry: TileSymmetry, copy_perm: Sequence[int]
) -> np.ndarray:
    """
    Surface node permutation sending node n of copy x to node symmetry(n) of copy_perm[x].

    Raises:
        NotAGraphAutomorphismError: If a glued node would get two images
    """
    local = mesh.tile_mesh.symmetry_permutation(symmetry)
    image = np.full(mesh.node_count, -1, dtype=np.int64)
    for copy in range(mesh.copy_count):
        source = mesh.global_ids[copy]
        target = mesh.global_ids[copy_perm[copy]][local]
        if np.any((image[source] >= 0) & (image[source] != target)):
            raise NotAGraphAutomorphismError(
                f"Copy permutation {list(copy_perm)} does not respect the gluing of {mesh.name}"
            )
        image[source] = target
    if np.unique(image).size != image.size:
        raise NotAGraphAutomorphismError(f"Symmetry of {mesh.name} is not a bijection")
    return image


def _preserves_conditions(
    mesh: SurfaceMesh, bc: BCAssignment, symmetry: TileSymmetry, copy_perm: Sequence[int]
) -> bool:
    tile = mesh.tile_mesh.tile
    by_position = {(s.copy, s.segment): s.name for s in mesh.boundary_segments}
    for s in mesh.boundary_segments:
        target = by_position.get((copy_perm[s.copy], tile.symmetric_segment(symmetry, s.segment)))
        if target is None or bc.kind_of(target) != bc.kind_of(s.name):
            return False
    return True


def quotient_by_tile_symmetry(
    mesh: SurfaceMesh, bc: BCAssignment, symmetry: TileSymmetry
) -> SymmetricQuotient:
    """
    Quotient of a glued surface by a tile symmetry applied to every copy.

    The copies are permuted by a Schreier graph automorphism that twists the
    labels as the symmetry does. Among the permutations that keep every
    boundary condition, the one fixing the most copies is used (ties go to
    the least permutation).

    Args:
        mesh: Surface assembled from a Schreier graph
        bc: Boundary conditions the symmetry must preserve
        symmetry: Symmetry of the tile

    Returns:
        SymmetricQuotient

    Raises:
        NotAGraphAutomorphismError: If no copy permutation is compatible
    """
    if mesh.graph is None:
        raise NotAGraphAutomorphismError(f"Surface {mesh.name} has no Schreier graph")
    candidates = sorted(
        mesh.graph.twisted_automorphisms(dict(symmetry.label_map)),
        key=lambda perm: (-sum(x == y for x, y in enumerate(perm)), perm),
    )
    for perm in candidates:
        if _preserves_conditions(mesh, bc, symmetry, perm):
            return SymmetricQuotient(
                mesh=mesh,
                bc=bc,
                symmetry=symmetry,
                copy_perm=perm,
                node_perm=symmetry_node_permutation(mesh, symmetry, perm),
            )
    raise NotAGraphAutomorphismError(
        f"No copy permutation of {mesh.name} carries the tile symmetry and its conditions"
    )


def _reflection_across(p: np.ndarray, q: np.ndarray) -> Placement:
    d = (q - p) / np.linalg.norm(q - p)
    m = 2 * np.outer(d, d) - np.eye(2)
    t = p - m @ p
    return Placement(rotation=tuple(map(tuple, m)), translation=(float(t[0]), float(t[1])))


def _half_turn_about(center: np.ndarray) -> Placement:
    t = 2 * center
    return Placement(rotation=((-1.0, 0.0), (0.0, -1.0)), translation=(float(t[0]), float(t[1])))


def _check_half_plane(tile_mesh: TileMesh, segment: int) -> None:
    tile = tile_mesh.tile
    p, q = (np.asarray(x) for x in tile.segment_endpoints(segment))
    d = q - p
    for index, point in enumerate(tile.polygon):
        if index in (segment, (segment + 1) % tile.vertex_count):
            continue
        side = d[0] * (point[1] - p[1]) - d[1] * (point[0] - p[0])
        if side <= 0:
            raise OverlappingDomainError(
                f"Tile {tile.name} is not on one side of its distinguished segment"
            )


def _doubled(tile_mesh: TileMesh, name: str, image: Placement, reversed_pairing: bool):
    segment = tile_mesh.tile.distinguished_segment
    label = tile_mesh.tile.labels[segment] or "E"
    boundary = [
        BoundarySegment(f"{copy}free{j}", copy, j, FREE_ARC)
        for copy in (0, 1)
        for j in range(tile_mesh.tile.vertex_count)
        if j != segment
    ]
    return glue_copies(
        name=name,
        tile_mesh=tile_mesh,
        copy_names=("0", "1"),
        gluings=[Gluing(0, 1, label, segment, reversed=reversed_pairing)],
        boundary_segments=boundary,
        placements=[Placement(), image],
        planar=True,
    )


def fefferman_domains(tile_mesh: TileMesh) -> tuple[SurfaceMesh, SurfaceMesh]:
    """
    Double a half tile across its distinguished segment E in two ways.

    C is the union of the tile with its mirror image in E (identity pairing of
    E); S is the union with its image under the half-turn about the midpoint of
    E (reversed pairing).

    Args:
        tile_mesh: Mesh of a tile with a distinguished segment

    Returns:
        (S, C) as planar surfaces

    Raises:
        ValueError: If the tile has no distinguished segment
        OverlappingDomainError: If the tile overlaps its images
    """
    segment = tile_mesh.tile.distinguished_segment
    if segment is None:
        raise ValueError(f"Tile {tile_mesh.tile.name} has no distinguished segment")
    _check_half_plane(tile_mesh, segment)
    p, q = (np.asarray(x, dtype=float) for x in tile_mesh.tile.segment_endpoints(segment))
    s_domain = _doubled(tile_mesh, "S", _half_turn_about(0.5 * (p + q)), reversed_pairing=True)
    c_domain = _doubled(tile_mesh, "C", _reflection_across(p, q), reversed_pairing=False)
    return s_domain, c_domain


def half_tile_domain(tile_mesh: TileMesh) -> tuple[SurfaceMesh, BCAssignment]:
    """
    The tile alone with Neumann on its distinguished segment, Dirichlet elsewhere.

    Raises:
        ValueError: If the tile has no distinguished segment
    """
    tile = tile_mesh.tile
    segment = tile.distinguished_segment
    if segment is None:
        raise ValueError(f"Tile {tile.name} has no distinguished segment")
    boundary = [
        BoundarySegment(
            "E" if j == segment else f"0free{j}", 0, j, FREE_ARC, tile.labels[j]
        )
        for j in range(tile.vertex_count)
    ]
    mesh = glue_copies(
        name="L",
        tile_mesh=tile_mesh,
        copy_names=("0",),
        gluings=[],
        boundary_segments=boundary,
        placements=[Placement()],
        planar=True,
    )
    return mesh, BCAssignment.mixed(mesh.segment_names, ["E"])


def single_tile(tile_mesh: TileMesh) -> SurfaceMesh:
    """The tile as a surface on its own, every segment on the boundary."""
    tile = tile_mesh.tile
    boundary = [
        BoundarySegment(f"0free{j}" if label is None else f"0{label}", 0, j, FREE_ARC, label)
        for j, label in enumerate(tile.labels)
    ]
    return glue_copies(
        name=tile.name,
        tile_mesh=tile_mesh,
        copy_names=("0",),
        gluings=[],
        boundary_segments=boundary,
        placements=[Placement()],
        planar=True,
    )


def congruent_outlines(first: SurfaceMesh, second: SurfaceMesh, tolerance: float = 1e-9) -> bool:
    """Whether two planar outlines have the same sorted pairwise distances."""
    a, b = first.layout_outline(), second.layout_outline()
    if a.shape != b.shape:
        return False

    def distances(xy: np.ndarray) -> np.ndarray:
        return np.sort(np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=-1).ravel())

    return bool(np.allclose(distances(a), distances(b), atol=tolerance))
