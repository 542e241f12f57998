"""Functions on assembled surfaces, viewed tile by tile."""

from dataclasses import dataclass

import numpy as np

from app.domain.entities.surface_mesh import Gluing, SurfaceMesh


@dataclass(frozen=True, eq=False)
class DiscreteFunction:
    """
    Nodal values on a surface, stored per tile copy.

    `tile_values[x]` holds F_x on the standard tile mesh node layout. A
    function is well defined when every glued node carries a single value.
    """

    mesh: SurfaceMesh
    tile_values: np.ndarray

    def __post_init__(self) -> None:
        """Validate the shape against the mesh."""
        expected = (self.mesh.copy_count, self.mesh.tile_mesh.node_count)
        if self.tile_values.shape != expected:
            shape = self.tile_values.shape
            raise ValueError(f"Tile values must have shape {expected}, got {shape}")

    @classmethod
    def from_global(cls, mesh: SurfaceMesh, values: np.ndarray) -> "DiscreteFunction":
        """Function given by one value per surface node."""
        values = np.asarray(values)
        if values.shape != (mesh.node_count,):
            raise ValueError(f"Expected {mesh.node_count} nodal values, got {values.shape}")
        return cls(mesh=mesh, tile_values=values[mesh.global_ids])

    @classmethod
    def constant(cls, mesh: SurfaceMesh, value: float = 1.0) -> "DiscreteFunction":
        return cls.from_global(mesh, np.full(mesh.node_count, float(value)))

    def tile_view(self) -> np.ndarray:
        """F_0..F_{n-1}, one row per tile copy."""
        return self.tile_values

    def node_spread(self) -> np.ndarray:
        """Max minus min of the values carried by each surface node."""
        ids = self.mesh.global_ids.ravel()
        flat = self.tile_values.ravel()
        high = np.full(self.mesh.node_count, -np.inf)
        low = np.full(self.mesh.node_count, np.inf)
        np.maximum.at(high, ids, flat)
        np.minimum.at(low, ids, flat)
        return high - low

    def is_well_defined(self, tolerance: float = 0.0) -> bool:
        """Whether glued nodes agree to within the tolerance."""
        return bool(np.all(self.node_spread() <= tolerance))

    @property
    def values(self) -> np.ndarray:
        """One value per surface node (mean of the copies carrying it)."""
        ids = self.mesh.global_ids.ravel()
        totals = np.zeros(self.mesh.node_count, dtype=np.result_type(self.tile_values, float))
        counts = np.zeros(self.mesh.node_count)
        np.add.at(totals, ids, self.tile_values.ravel())
        np.add.at(counts, ids, 1.0)
        return totals / counts

    def gluing_mismatch(self, gluing: Gluing) -> float:
        """Largest difference of the two tile-side traces along a glued segment."""
        side_a, side_b = self.mesh.gluing_node_pairs(gluing)
        trace_a = self.tile_values[gluing.copy_a, side_a]
        trace_b = self.tile_values[gluing.copy_b, side_b]
        return float(np.max(np.abs(trace_a - trace_b)))


def gluing_name(mesh: SurfaceMesh, gluing: Gluing) -> str:
    """Display name of a glued edge, e.g. 0U-4U."""
    a, b = mesh.copy_names[gluing.copy_a], mesh.copy_names[gluing.copy_b]
    return f"{a}{gluing.label}-{b}{gluing.label}"
