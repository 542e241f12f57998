"""Assemble the isospectral surfaces M1, M2 and the planar comparison domains."""

from collections.abc import Mapping
from typing import Any, Callable, Optional

from app.application.dtos.surface import ConePointReport, SurfaceReport
from app.application.ports.tile_catalog import TileCatalog
from app.application.use_cases.representation_theory import RepresentationAnalysis
from app.domain.entities.schreier_graph import is_orientable
from app.domain.entities.surface_mesh import (
    SurfaceMesh,
    SymmetricQuotient,
    assemble_surface,
    cone_points,
    fefferman_domains,
    half_tile_domain,
    quotient_by_involution,
    quotient_by_tile_symmetry,
)
from app.domain.entities.tile_mesh import TileMesh, mesh_tile
from app.domain.value_objects.boundary_conditions import BCAssignment
from app.domain.value_objects.tile_spec import Point, TileSpec, TileSymmetry

# s^4 generates the centre of the Gerst group.
CENTRAL_INVOLUTION = "s^4"


class SurfaceAssembly:
    """Use case for building meshed surfaces from tiles and Schreier graphs."""

    def __init__(
        self,
        catalog: TileCatalog,
        analysis: Optional[RepresentationAnalysis] = None,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize surface assembly.

        Args:
            catalog: Tile catalog
            analysis: Group analysis providing the coset actions
            logger: Optional logger function (run_id, stage, component, **kwargs)
            run_id: Run identifier passed to the logger
        """
        self._catalog = catalog
        self._analysis = analysis or RepresentationAnalysis()
        self._logger = logger
        self._run_id = run_id

    def _log(self, component: str, **kwargs: Any) -> None:
        if self._logger:
            self._logger(self._run_id, "surfaces", component, **kwargs)

    def tile(self, name: str, overrides: Optional[Mapping[int, Point]] = None) -> TileSpec:
        """Tile from the catalog."""
        return self._catalog.get(name, overrides)

    def tile_mesh(self, tile: TileSpec, refinement: int) -> TileMesh:
        """Mesh a tile at refinement k."""
        return mesh_tile(tile, refinement)

    def surface(
        self,
        tile_mesh: TileMesh,
        subgroup: str,
        generators: str = "sigma_t_u",
        name: str = "M",
    ) -> SurfaceMesh:
        """
        Glue one copy of the tile per coset of a subgroup along its Schreier graph.

        Args:
            tile_mesh: Meshed tile carrying the labels Σ, T, U (or a subset)
            subgroup: Subgroup name
            generators: Generator set name
            name: Surface name

        Returns:
            SurfaceMesh

        Raises:
            LabelMismatchError: If the tile lacks a graph label
            NonConformingMeshError: If the gluing is inconsistent
        """
        graph = self._analysis.schreier_graph(subgroup, generators)
        mesh = assemble_surface(graph, tile_mesh, name=name)
        self._log(
            "assemble",
            surface=name,
            subgroup=subgroup,
            node_count=mesh.node_count,
            euler_characteristic=mesh.euler_characteristic(),
        )
        return mesh

    def surface_pair(
        self,
        tile_mesh: TileMesh,
        h1: str = "gamma1",
        h2: str = "gamma2",
        generators: str = "sigma_t_u",
    ) -> tuple[SurfaceMesh, SurfaceMesh]:
        """Surfaces M1 and M2 from the same tile mesh."""
        return (
            self.surface(tile_mesh, h1, generators, "M1"),
            self.surface(tile_mesh, h2, generators, "M2"),
        )

    def quotient(
        self, mesh: SurfaceMesh, subgroup: str, generators: str = "sigma_t_u"
    ) -> tuple[SurfaceMesh, BCAssignment]:
        """
        Quotient of a surface by the deck involution of the central element s^4.

        Args:
            mesh: Surface built by `surface`
            subgroup: Subgroup the surface was built from
            generators: Generator set the surface was built with

        Returns:
            (quotient surface, mixed boundary assignment with Neumann mirrors)
        """
        group = self._analysis.group
        action = self._analysis.action(subgroup, generators)
        central = group.evaluate(CENTRAL_INVOLUTION)
        perm = [action.act(group, central, x) for x in range(action.coset_count)]
        quotient, bc = quotient_by_involution(mesh, perm)
        self._log("quotient", surface=mesh.name, neumann=list(bc.neumann_names))
        return quotient, bc

    def fold(
        self, mesh: SurfaceMesh, bc: BCAssignment, symmetry: TileSymmetry
    ) -> SymmetricQuotient:
        """
        Fold a surface with boundary conditions by a tile symmetry.

        Args:
            mesh: Surface, typically a quotient built by `quotient`
            bc: Boundary conditions of the surface
            symmetry: Symmetry of the tile

        Returns:
            SymmetricQuotient carrying the copy and node permutations
        """
        folded = quotient_by_tile_symmetry(mesh, bc, symmetry)
        self._log(
            "fold",
            surface=mesh.name,
            copy_permutation=list(folded.copy_perm),
            folded_copies=list(folded.folded_copies),
        )
        return folded

    def fefferman(
        self, tile_mesh: TileMesh
    ) -> tuple[SurfaceMesh, SurfaceMesh, SurfaceMesh, BCAssignment]:
        """
        Planar domains S and C doubled from a half tile, and the half tile L.

        Returns:
            (S, C, L, mixed assignment of L)
        """
        s_domain, c_domain = fefferman_domains(tile_mesh)
        half, bc = half_tile_domain(tile_mesh)
        self._log("fefferman", tile=tile_mesh.tile.name, nodes=c_domain.node_count)
        return s_domain, c_domain, half, bc

    def report(self, mesh: SurfaceMesh) -> SurfaceReport:
        """Summary of an assembled surface, including its cone points."""
        points = cone_points(mesh)
        orientable = is_orientable(mesh.graph).orientable if mesh.graph is not None else None
        return SurfaceReport(
            name=mesh.name,
            tile=mesh.tile_mesh.tile.name,
            refinement=mesh.tile_mesh.refinement,
            copy_count=mesh.copy_count,
            node_count=mesh.node_count,
            triangle_count=int(mesh.triangles.shape[0]),
            area=round(mesh.area, 12),
            euler_characteristic=mesh.euler_characteristic(),
            predicted_euler_characteristic=mesh.predicted_euler,
            boundary_components=mesh.boundary_component_count(),
            orientable=orientable,
            cone_points=[
                ConePointReport(node=p.node, angle=round(p.angle, 12), copies=list(p.copies))
                for p in points
            ],
            boundary_segments=list(mesh.segment_names),
        )

