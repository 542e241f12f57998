"""Artifact writer port."""

from abc import ABC, abstractmethod
from collections.abc import Sequence

from app.application.dtos.base import DTO
from app.application.dtos.spectrum import SpectrumReport
from app.domain.entities.schreier_graph import SchreierGraph
from app.domain.entities.surface_mesh import SurfaceMesh


class ArtifactWriter(ABC):
    """Port interface for writing run artifacts."""

    @abstractmethod
    def write_spectrum(self, name: str, report: SpectrumReport) -> str:
        """
        Write a spectrum as CSV (index,eigenvalue,residual,cluster).

        Args:
            name: Artifact name without extension
            report: Spectrum to write

        Returns:
            Path of the written file
        """
        pass

    @abstractmethod
    def write_report(self, name: str, report: DTO) -> str:
        """
        Write a report as deterministic JSON.

        Args:
            name: Artifact name without extension
            report: Report DTO

        Returns:
            Path of the written file
        """
        pass

    @abstractmethod
    def write_mesh(self, name: str, mesh: SurfaceMesh) -> str:
        """
        Write the export layout of a surface in OFF format.

        Args:
            name: Artifact name without extension
            mesh: Assembled surface

        Returns:
            Path of the written file
        """
        pass

    @abstractmethod
    def write_graph(self, name: str, graph: SchreierGraph) -> str:
        """
        Write a Schreier graph in DOT format.

        Args:
            name: Artifact name without extension
            graph: Schreier graph

        Returns:
            Path of the written file
        """
        pass

    @abstractmethod
    def write_table(self, name: str, header: Sequence[str], rows: Sequence[Sequence]) -> str:
        """
        Write a whitespace-separated, gnuplot-ready data table.

        Args:
            name: Artifact name without extension
            header: Column names (written as a comment line)
            rows: Data rows

        Returns:
            Path of the written file
        """
        pass
