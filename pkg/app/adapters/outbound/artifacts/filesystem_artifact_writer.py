"""Filesystem artifact writer adapter."""

import csv
from collections.abc import Sequence
from pathlib import Path

from app.application.dtos.base import DTO
from app.application.dtos.spectrum import SpectrumReport
from app.application.ports.artifact_writer import ArtifactWriter
from app.domain.entities.schreier_graph import SchreierGraph
from app.domain.entities.surface_mesh import SurfaceMesh

SPECTRUM_HEADER = ("index", "eigenvalue", "residual", "cluster")


def _number(value) -> str:
    if value is None:
        return "NaN"
    # repr round-trips floats exactly.
    return repr(float(value)) if isinstance(value, float) else str(value)


class FilesystemArtifactWriter(ArtifactWriter):
    """Writes artifacts into one output directory."""

    def __init__(self, output_dir: str) -> None:
        """
        Initialize filesystem artifact writer.

        Args:
            output_dir: Target directory (created on first write)
        """
        self._root = Path(output_dir)
        self._written: list[str] = []

    @property
    def written(self) -> list[str]:
        """Names of the files written so far, relative to the output directory."""
        return list(self._written)

    def _path(self, name: str, suffix: str) -> Path:
        self._root.mkdir(parents=True, exist_ok=True)
        path = self._root / f"{name}{suffix}"
        self._written.append(path.name)
        return path

    def write_spectrum(self, name: str, report: SpectrumReport) -> str:
        """Write index,eigenvalue,residual,cluster rows."""
        path = self._path(name, ".csv")
        with open(path, "w", encoding="utf-8", newline="") as file:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(SPECTRUM_HEADER)
            for index, (value, residual, cluster) in enumerate(
                zip(report.eigenvalues, report.residuals, report.clusters)
            ):
                writer.writerow((index, repr(value), repr(residual), cluster))
        return str(path)

    def write_report(self, name: str, report: DTO) -> str:
        """Write deterministic JSON."""
        path = self._path(name, ".json")
        path.write_text(report.to_json(), encoding="utf-8")
        return str(path)

    def write_mesh(self, name: str, mesh: SurfaceMesh) -> str:
        """Write the exploded export layout (one block of nodes per tile copy) as OFF."""
        path = self._path(name, ".off")
        coordinates = mesh.layout_coordinates()
        n = mesh.tile_mesh.node_count
        lines = ["OFF", f"{mesh.copy_count * n} {mesh.triangles.shape[0]} 0"]
        for block in coordinates:
            lines.extend(f"{x:.12g} {y:.12g} 0" for x, y in block)
        for copy in range(mesh.copy_count):
            offset = copy * n
            lines.extend(
                f"3 {a + offset} {b + offset} {c + offset}" for a, b, c in mesh.tile_mesh.triangles
            )
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    def write_graph(self, name: str, graph: SchreierGraph) -> str:
        """Write DOT; half-edges are drawn as dashed loops."""
        path = self._path(name, ".dot")
        lines = [f'graph "{name}" {{']
        lines.extend(f"  {v};" for v in range(graph.vertex_count))
        lines.extend(f'  {a} -- {b} [label="{label}"];' for a, b, label in graph.full_edges)
        lines.extend(
            f'  {x} -- {x} [label="{label}", style=dashed];' for x, label in graph.half_edges
        )
        lines.append("}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    def write_table(self, name: str, header: Sequence[str], rows: Sequence[Sequence]) -> str:
        """Write a gnuplot-ready table with a commented header."""
        path = self._path(name, ".dat")
        lines = ["# " + " ".join(header)]
        lines.extend(" ".join(_number(v) for v in row) for row in rows)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)
