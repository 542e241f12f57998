"""Schreier graphs of involutive coset actions and their combinatorial topology."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Optional

import networkx as nx
from networkx.algorithms import isomorphism

from app.domain.entities.finite_group import CosetAction
from app.domain.errors import NonInvolutiveGeneratorError

# A tile boundary as seen by the graph: one entry per boundary segment in
# counter-clockwise order, either a glue label or None for a free arc.
TileEdgeOrder = Sequence[Optional[str]]


@dataclass(frozen=True)
class SchreierGraph:
    """Labeled multigraph on cosets; fixed cosets carry half-edges."""

    vertex_count: int
    full_edges: tuple[tuple[int, int, str], ...]
    half_edges: tuple[tuple[int, str], ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        """Check that every vertex meets every label exactly once."""
        seen: dict[tuple[int, str], int] = {}
        for a, b, label in self.full_edges:
            if a == b:
                raise ValueError(f"Full edge {label} at vertex {a} must join distinct vertices")
            for x in (a, b):
                seen[(x, label)] = seen.get((x, label), 0) + 1
        for x, label in self.half_edges:
            seen[(x, label)] = seen.get((x, label), 0) + 1
        for label in self.labels:
            for x in range(self.vertex_count):
                if seen.get((x, label), 0) != 1:
                    raise ValueError(f"Vertex {x} must meet label {label} exactly once")

    def neighbor(self, vertex: int, label: str) -> Optional[int]:
        """Vertex across the `label` edge, or None at a half-edge."""
        for a, b, edge_label in self.full_edges:
            if edge_label == label and vertex in (a, b):
                return b if a == vertex else a
        return None

    def neighbor_table(self) -> dict[str, tuple[Optional[int], ...]]:
        """Per label, the neighbor of every vertex (None at half-edges)."""
        table: dict[str, list[Optional[int]]] = {
            label: [None] * self.vertex_count for label in self.labels
        }
        for a, b, label in self.full_edges:
            table[label][a] = b
            table[label][b] = a
        return {label: tuple(row) for label, row in table.items()}

    def to_networkx(self) -> nx.MultiGraph:
        """Full edges as a networkx multigraph keyed by label."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        for a, b, label in self.full_edges:
            graph.add_edge(a, b, key=label, label=label)
        return graph

    def _labeled_networkx(self, label_map: Mapping[str, str]) -> nx.MultiGraph:
        graph = self.to_networkx()
        for _, _, data in graph.edges(data=True):
            data["label"] = label_map.get(data["label"], data["label"])
        half = {x: set() for x in range(self.vertex_count)}
        for x, label in self.half_edges:
            half[x].add(label_map.get(label, label))
        nx.set_node_attributes(graph, {x: frozenset(s) for x, s in half.items()}, "half")
        return graph

    def twisted_automorphisms(self, label_map: Mapping[str, str]) -> list[tuple[int, ...]]:
        """
        Vertex permutations carrying every `label` edge to a `label_map[label]` edge.

        The map must be an involution on labels; labels it omits are fixed.
        Half-edges are carried along with full edges.

        Returns:
            Permutations as tuples perm[x], sorted
        """
        matcher = isomorphism.MultiGraphMatcher(
            self._labeled_networkx({}),
            self._labeled_networkx(label_map),
            node_match=isomorphism.categorical_node_match("half", frozenset()),
            edge_match=isomorphism.categorical_multiedge_match("label", None),
        )
        return sorted(
            tuple(mapping[x] for x in range(self.vertex_count))
            for mapping in matcher.isomorphisms_iter()
        )

    def relabeled(self, perm: Sequence[int]) -> "SchreierGraph":
        """Same graph with vertex x renamed perm[x]."""
        full = tuple(
            sorted((min(perm[a], perm[b]), max(perm[a], perm[b]), label)
                   for a, b, label in self.full_edges)
        )
        half = tuple(sorted((perm[x], label) for x, label in self.half_edges))
        return SchreierGraph(self.vertex_count, full, half, self.labels)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        """Whether a vertex permutation preserves the labeled edges and half-edges."""
        if sorted(perm) != list(range(self.vertex_count)):
            return False
        image = self.relabeled(perm)
        return (
            set(image.full_edges) == set(self.full_edges)
            and set(image.half_edges) == set(self.half_edges)
        )


@dataclass(frozen=True)
class OrientabilityVerdict:
    """Outcome of the two-coloring test."""

    orientable: bool
    coloring: Optional[tuple[int, ...]] = None
    witness_cycle: Optional[tuple[int, ...]] = None
    witness_labels: Optional[tuple[str, ...]] = None


def build_schreier(action: CosetAction) -> SchreierGraph:
    """
    Build the Schreier graph of an involutive coset action.

    Args:
        action: Coset action whose generators all act as involutions

    Returns:
        SchreierGraph with 2-cycles as full edges and fixed points as half-edges

    Raises:
        NonInvolutiveGeneratorError: If a generator does not act as an involution
    """
    full_edges = []
    half_edges = []
    for index, label in enumerate(action.generator_labels):
        if not action.is_involutive(index):
            raise NonInvolutiveGeneratorError(f"Generator {label} does not act as an involution")
        perm = action.perm[index]
        for x in range(action.coset_count):
            if perm[x] == x:
                half_edges.append((x, label))
            elif x < perm[x]:
                full_edges.append((x, perm[x], label))
    return SchreierGraph(
        vertex_count=action.coset_count,
        full_edges=tuple(full_edges),
        half_edges=tuple(half_edges),
        labels=action.generator_labels,
    )


def _simple_adjacency(graph: SchreierGraph) -> list[list[int]]:
    adjacency: list[set[int]] = [set() for _ in range(graph.vertex_count)]
    for a, b, _ in graph.full_edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    return [sorted(neighbors) for neighbors in adjacency]


def _shortest_odd_cycle_length(adjacency: list[list[int]]) -> Optional[int]:
    best: Optional[int] = None
    for root in range(len(adjacency)):
        distance = {root: 0}
        queue = [root]
        for x in queue:
            for y in adjacency[x]:
                if y not in distance:
                    distance[y] = distance[x] + 1
                    queue.append(y)
                elif distance[y] == distance[x]:
                    length = 2 * distance[x] + 1
                    best = length if best is None else min(best, length)
    return best


def _least_cycle_of_length(adjacency: list[list[int]], length: int) -> Optional[tuple[int, ...]]:
    """Lexicographically least simple cycle, rotated to its least vertex."""
    for start in range(len(adjacency)):
        path = [start]

        def extend(path: list[int], start: int = start) -> Optional[tuple[int, ...]]:
            if len(path) == length:
                closes = start in adjacency[path[-1]] and path[1] < path[-1]
                return tuple(path) if closes else None
            for y in adjacency[path[-1]]:
                if y > start and y not in path:
                    found = extend(path + [y])
                    if found is not None:
                        return found
            return None

        found = extend(path)
        if found is not None:
            return found
    return None


def _edge_label(graph: SchreierGraph, a: int, b: int) -> str:
    pair = {a, b}
    candidates = [label for x, y, label in graph.full_edges if {x, y} == pair]
    return min(candidates, key=graph.labels.index)


def is_orientable(graph: SchreierGraph) -> OrientabilityVerdict:
    """
    Decide orientability of the reflection-glued surface.

    Each reflection gluing flips the side of a tile, so the surface is
    orientable exactly when the full-edge multigraph is bipartite. Half-edges
    impose no constraint.

    Args:
        graph: Schreier graph

    Returns:
        Verdict with a 0/1 side coloring, or the least shortest odd cycle with
        its edge labels
    """
    simple = nx.Graph()
    simple.add_nodes_from(range(graph.vertex_count))
    simple.add_edges_from((a, b) for a, b, _ in graph.full_edges)
    if nx.is_bipartite(simple):
        coloring = nx.bipartite.color(simple)
        # Normalize so the least vertex of every component is colored 0.
        for component in nx.connected_components(simple):
            if coloring[min(component)] == 1:
                for x in component:
                    coloring[x] = 1 - coloring[x]
        return OrientabilityVerdict(
            orientable=True, coloring=tuple(coloring[x] for x in range(graph.vertex_count))
        )
    adjacency = _simple_adjacency(graph)
    length = _shortest_odd_cycle_length(adjacency)
    cycle = _least_cycle_of_length(adjacency, length) if length else None
    labels = None
    if cycle is not None:
        labels = tuple(
            _edge_label(graph, cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
        )
    return OrientabilityVerdict(orientable=False, witness_cycle=cycle, witness_labels=labels)


def _is_boundary(
    neighbors: dict[str, tuple[Optional[int], ...]],
    edge_order: TileEdgeOrder,
    copy: int,
    segment: int,
) -> bool:
    label = edge_order[segment]
    return label is None or neighbors[label][copy] is None


def boundary_walks(
    graph: SchreierGraph, edge_order: TileEdgeOrder
) -> list[tuple[tuple[int, int], ...]]:
    """
    Trace the boundary components of the surface glued along a Schreier graph.

    A boundary segment is a free arc of any tile copy or a glue edge sitting on
    a half-edge. At each corner the walk turns around the corner through glued
    edges (crossing to the neighbor copy and reversing direction) until it
    meets the next boundary segment.

    Args:
        graph: Schreier graph
        edge_order: Counter-clockwise tile boundary; glue labels or None for free arcs

    Returns:
        One closed walk per boundary component, as (copy, segment) pairs

    Raises:
        ValueError: If a graph label is not carried by the tile
    """
    missing = set(graph.labels) - {label for label in edge_order if label is not None}
    if missing:
        raise ValueError(f"Tile does not carry glue labels {sorted(missing)}")
    neighbors = graph.neighbor_table()
    n = len(edge_order)
    visited: set[tuple[int, int]] = set()
    walks = []
    for copy in range(graph.vertex_count):
        for segment in range(n):
            if (copy, segment) in visited or not _is_boundary(neighbors, edge_order, copy, segment):
                continue
            walk = []
            x, seg, direction = copy, segment, 1
            while (x, seg) not in visited:
                visited.add((x, seg))
                walk.append((x, seg))
                corner = (seg + 1) % n if direction == 1 else seg
                came = seg
                other = corner if came == (corner - 1) % n else (corner - 1) % n
                # Rotate around the corner through glued edges.
                while not _is_boundary(neighbors, edge_order, x, other):
                    x = neighbors[edge_order[other]][x]
                    came, other = other, came
                seg, direction = other, (1 if other == corner else -1)
            walks.append(tuple(walk))
    return walks


def corner_orbits(graph: SchreierGraph, edge_order: TileEdgeOrder) -> list[frozenset]:
    """
    Group tile-copy corners that become one point of the glued surface.

    Corner c of a tile sits between segments c-1 and c. Gluing segment j of
    copies x and y identifies corners j and j+1 of the two copies.

    Args:
        graph: Schreier graph
        edge_order: Counter-clockwise tile boundary

    Returns:
        Orbits of (copy, corner) pairs, ordered by their least member
    """
    n = len(edge_order)
    neighbors = graph.neighbor_table()
    corners = nx.Graph()
    corners.add_nodes_from((x, c) for x in range(graph.vertex_count) for c in range(n))
    for x in range(graph.vertex_count):
        for j, label in enumerate(edge_order):
            if label is None or neighbors[label][x] is None:
                continue
            y = neighbors[label][x]
            corners.add_edge((x, j), (y, j))
            corners.add_edge((x, (j + 1) % n), (y, (j + 1) % n))
    return sorted((frozenset(c) for c in nx.connected_components(corners)), key=min)


def euler_characteristic(graph: SchreierGraph, edge_order: TileEdgeOrder) -> int:
    """
    Euler characteristic of the glued surface, from the coarse tile cell structure.

    Each tile copy is one face, glued segment pairs and boundary segments are
    edges, and corner orbits are vertices.
    """
    neighbors = graph.neighbor_table()
    boundary = 0
    glued_sides = 0
    for x in range(graph.vertex_count):
        for segment in range(len(edge_order)):
            if _is_boundary(neighbors, edge_order, x, segment):
                boundary += 1
            else:
                glued_sides += 1
    vertices = len(corner_orbits(graph, edge_order))
    return vertices - (boundary + glued_sides // 2) + graph.vertex_count
