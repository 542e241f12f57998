"""Discrete Laplacians on assembled surfaces."""

from dataclasses import dataclass
from typing import Optional

import networkx as nx
import numpy as np
from scipy import sparse

from app.domain.entities.surface_mesh import SurfaceMesh
from app.domain.entities.tile_mesh import TileMesh
from app.domain.errors import EmptyDofSetError
from app.domain.value_objects.boundary_conditions import BCAssignment

FEM = "fem"
GRAPH = "graph"
MODES = (FEM, GRAPH)


@dataclass(frozen=True, eq=False)
class DiscreteOperatorPair:
    """
    Stiffness K and mass M of a generalized eigenproblem K x = λ M x.

    `dof_nodes[i]` is the surface node carried by degree of freedom i;
    Dirichlet nodes are eliminated and carry no degree of freedom.
    """

    stiffness: sparse.csr_matrix
    mass: sparse.csr_matrix
    dof_nodes: np.ndarray
    node_count: int
    mode: str
    mesh_name: str = ""
    refinement: int = 0
    bc_label: str = "neumann"

    @property
    def dof_count(self) -> int:
        """Number of degrees of freedom."""
        return int(self.dof_nodes.size)

    def dof_of(self) -> np.ndarray:
        """Map global node -> degree of freedom (-1 on eliminated nodes)."""
        lookup = np.full(self.node_count, -1, dtype=np.int64)
        lookup[self.dof_nodes] = np.arange(self.dof_count)
        return lookup

    def to_global(self, x: np.ndarray) -> np.ndarray:
        """Extend a dof vector to all nodes, zero on Dirichlet nodes."""
        values = np.zeros(self.node_count, dtype=np.result_type(x, float))
        values[self.dof_nodes] = x
        return values

    def restrict(self, values: np.ndarray) -> np.ndarray:
        """Dof vector of a function given on all nodes."""
        return np.asarray(values)[self.dof_nodes]

    def is_symmetric(self, tolerance: float = 1e-12) -> bool:
        """Whether K and M are symmetric."""
        return all(
            abs(matrix - matrix.T).max() <= tolerance * max(1.0, abs(matrix).max())
            for matrix in (self.stiffness, self.mass)
        )


def tile_fem_matrices(tile_mesh: TileMesh) -> tuple[sparse.coo_matrix, sparse.coo_matrix]:
    """
    Piecewise-linear stiffness and consistent mass of one tile.

    Cotangent stiffness entries -cot/2 on edges, row sums zero; mass |T|/6 on
    the diagonal and |T|/12 off it, per triangle.

    Args:
        tile_mesh: Meshed tile

    Returns:
        (stiffness, mass) on the tile nodes
    """
    t = tile_mesh.triangles
    t1, t2, t3 = t[:, 0], t[:, 1], t[:, 2]
    v1, v2, v3 = (tile_mesh.nodes[i] for i in (t1, t2, t3))
    v2mv1 = v2 - v1
    v3mv2 = v3 - v2
    v1mv3 = v1 - v3
    # 4 * area
    vol = 2 * np.abs(v3mv2[:, 0] * v1mv3[:, 1] - v3mv2[:, 1] * v1mv3[:, 0])
    a12 = np.sum(v3mv2 * v1mv3, axis=1) / vol
    a23 = np.sum(v1mv3 * v2mv1, axis=1) / vol
    a31 = np.sum(v2mv1 * v3mv2, axis=1) / vol
    a11 = -a12 - a31
    a22 = -a12 - a23
    a33 = -a31 - a23
    local_a = np.column_stack((a12, a12, a23, a23, a31, a31, a11, a22, a33)).reshape(-1)
    i = np.column_stack((t1, t2, t2, t3, t3, t1, t1, t2, t3)).reshape(-1)
    j = np.column_stack((t2, t1, t3, t2, t1, t3, t1, t2, t3)).reshape(-1)
    b_ii = vol / 24
    b_ij = vol / 48
    local_b = np.column_stack((b_ij, b_ij, b_ij, b_ij, b_ij, b_ij, b_ii, b_ii, b_ii)).reshape(-1)
    n = tile_mesh.node_count
    stiffness = sparse.coo_matrix((local_a, (i, j)), shape=(n, n))
    mass = sparse.coo_matrix((local_b, (i, j)), shape=(n, n))
    return stiffness.tocsr().tocoo(), mass.tocsr().tocoo()


def tile_graph_matrices(tile_mesh: TileMesh) -> tuple[sparse.coo_matrix, sparse.coo_matrix]:
    """Combinatorial Laplacian of the tile mesh graph and the counting mass."""
    n = tile_mesh.node_count
    edges = tile_mesh.edges()
    rows = np.r_[edges[:, 0], edges[:, 1]]
    cols = np.r_[edges[:, 1], edges[:, 0]]
    adjacency = sparse.coo_matrix((np.ones(rows.size), (rows, cols)), shape=(n, n)).tocsr()
    degree = sparse.diags(np.asarray(adjacency.sum(axis=1)).ravel())
    return (degree - adjacency).tocoo(), sparse.identity(n, format="coo")


def _scatter(local: sparse.coo_matrix, global_ids: np.ndarray, size: int) -> sparse.csr_matrix:
    rows = np.concatenate([ids[local.row] for ids in global_ids])
    cols = np.concatenate([ids[local.col] for ids in global_ids])
    data = np.tile(local.data, len(global_ids))
    return sparse.coo_matrix((data, (rows, cols)), shape=(size, size)).tocsr()


def _eliminate(matrix: sparse.csr_matrix, keep: np.ndarray) -> sparse.csr_matrix:
    return matrix[keep][:, keep].tocsr()


def assemble(mesh: SurfaceMesh, bc: BCAssignment, mode: str = FEM) -> DiscreteOperatorPair:
    """
    Assemble the discrete Laplacian of a surface.

    Every tile copy contributes the tile matrices scattered to its surface
    nodes. Neumann segments need no treatment; nodes on Dirichlet segments
    (including their end points) are eliminated.

    Args:
        mesh: Assembled surface
        bc: Condition for every boundary segment
        mode: fem or graph

    Returns:
        DiscreteOperatorPair

    Raises:
        ValueError: For an unknown mode or an incomplete boundary assignment
        EmptyDofSetError: If every node is a Dirichlet node
    """
    if mode not in MODES:
        raise ValueError(f"Unknown mode '{mode}'; expected one of {list(MODES)}")
    if not bc.covers(mesh.segment_names):
        missing = sorted(set(mesh.segment_names) - {name for name, _ in bc.kinds})
        raise ValueError(f"Boundary segments without a condition: {missing}")
    local_k, local_m = (
        tile_fem_matrices(mesh.tile_mesh) if mode == FEM else tile_graph_matrices(mesh.tile_mesh)
    )
    size = mesh.node_count
    stiffness = _scatter(local_k, mesh.global_ids, size)
    mass = _scatter(local_m, mesh.global_ids, size)
    dirichlet = mesh.boundary_nodes(bc.dirichlet_names)
    keep = np.setdiff1d(np.arange(size), dirichlet)
    if keep.size == 0:
        raise EmptyDofSetError(f"Boundary conditions on {mesh.name} leave no degree of freedom")
    return DiscreteOperatorPair(
        stiffness=_eliminate(stiffness, keep),
        mass=_eliminate(mass, keep),
        dof_nodes=keep,
        node_count=size,
        mode=mode,
        mesh_name=mesh.name,
        refinement=mesh.tile_mesh.refinement,
        bc_label=bc.label,
    )


def from_graph(graph: nx.Graph, name: str = "graph", dirichlet: Optional[list] = None):
    """
    Graph-mode operator of a plain graph: its Laplacian with identity mass.

    Args:
        graph: Undirected graph
        name: Name recorded on the operator
        dirichlet: Nodes to eliminate

    Returns:
        DiscreteOperatorPair over the sorted node list

    Raises:
        EmptyDofSetError: If every node is eliminated
    """
    nodes = sorted(graph.nodes)
    n = len(nodes)
    laplacian = sparse.csr_matrix(nx.laplacian_matrix(graph, nodelist=nodes), dtype=float)
    eliminated = {nodes.index(x) for x in (dirichlet or [])}
    keep = np.array([i for i in range(n) if i not in eliminated], dtype=np.int64)
    if keep.size == 0:
        raise EmptyDofSetError(f"Graph {name} has no degree of freedom left")
    return DiscreteOperatorPair(
        stiffness=_eliminate(laplacian, keep),
        mass=sparse.identity(keep.size, format="csr"),
        dof_nodes=keep,
        node_count=n,
        mode=GRAPH,
        mesh_name=name,
        bc_label="dirichlet" if eliminated else "neumann",
    )


def restrict_to_invariant(
    operator: DiscreteOperatorPair, node_orbit: np.ndarray
) -> DiscreteOperatorPair:
    """
    Operator on functions constant on node orbits.

    Each orbit of kept nodes becomes one degree of freedom whose basis
    function is the sum of the orbit's nodal functions; K and M are
    compressed as BᵀKB and BᵀMB.

    Args:
        operator: Operator on the whole surface
        node_orbit: Orbit representative of every surface node

    Returns:
        DiscreteOperatorPair whose dof nodes are the orbit representatives

    Raises:
        ValueError: If an orbit mixes eliminated and kept nodes
    """
    node_orbit = np.asarray(node_orbit, dtype=np.int64)
    kept = np.zeros(operator.node_count, dtype=bool)
    kept[operator.dof_nodes] = True
    if np.any(kept != kept[node_orbit]):
        raise ValueError(f"Node orbits of {operator.mesh_name} mix eliminated and kept nodes")
    representatives, column = np.unique(node_orbit[operator.dof_nodes], return_inverse=True)
    basis = sparse.coo_matrix(
        (np.ones(operator.dof_count), (np.arange(operator.dof_count), column)),
        shape=(operator.dof_count, representatives.size),
    ).tocsr()
    return DiscreteOperatorPair(
        stiffness=(basis.T @ operator.stiffness @ basis).tocsr(),
        mass=(basis.T @ operator.mass @ basis).tocsr(),
        dof_nodes=representatives,
        node_count=operator.node_count,
        mode=operator.mode,
        mesh_name=operator.mesh_name,
        refinement=operator.refinement,
        bc_label="mixed",
    )
