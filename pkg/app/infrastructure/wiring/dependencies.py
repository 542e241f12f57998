"""Dependency injection factory functions."""

from typing import Any, Optional

from app.adapters.outbound.artifacts.filesystem_artifact_writer import FilesystemArtifactWriter
from app.adapters.outbound.tile_catalog.key_value_tile_catalog import KeyValueTileCatalog
from app.application.ports.artifact_writer import ArtifactWriter
from app.application.ports.tile_catalog import TileCatalog
from app.application.use_cases.representation_theory import RepresentationAnalysis
from app.application.use_cases.run_pipeline import RunPipeline
from app.application.use_cases.spectral_solver import SpectralSolver
from app.application.use_cases.transplantation import Transplantation
from app.application.use_cases.verify_triple import VerifyTriple
from app.infrastructure.config.settings import settings
from app.infrastructure.logging.logger import log_stage


def _logger_func(run_id: str, stage: str, component: str, **kwargs: Any) -> None:
    log_stage(run_id, stage, component, **kwargs)


def create_tile_catalog(path: Optional[str] = None) -> TileCatalog:
    """
    Factory function to create the tile catalog.

    Args:
        path: Override file; defaults to ISOSPEC_TILE_CATALOG_FILE

    Returns:
        TileCatalog instance
    """
    return KeyValueTileCatalog(path or settings.tile_catalog_file)


def create_artifact_writer(output_dir: Optional[str] = None) -> ArtifactWriter:
    """
    Factory function to create the artifact writer.

    Returns:
        ArtifactWriter writing into output_dir (default: ISOSPEC_OUTPUT_DIR)
    """
    return FilesystemArtifactWriter(output_dir or settings.output_dir)


def create_spectral_solver(run_id: str = "local") -> SpectralSolver:
    """
    Factory function to create the eigensolver.

    Returns:
        SpectralSolver configured from settings
    """
    return SpectralSolver(
        dense_limit=settings.dense_solver_limit,
        maxiter=settings.solver_maxiter,
        logger=_logger_func,
        run_id=run_id,
    )


def create_verify_triple(run_id: str = "local") -> VerifyTriple:
    """
    Factory function to create VerifyTriple.

    Returns:
        VerifyTriple instance
    """
    return VerifyTriple(logger=_logger_func, run_id=run_id)


def create_representation_analysis(run_id: str = "local") -> RepresentationAnalysis:
    """
    Factory function to create RepresentationAnalysis.

    Returns:
        RepresentationAnalysis over the Gerst group
    """
    return RepresentationAnalysis(logger=_logger_func, run_id=run_id)


def create_transplantation(run_id: str = "local") -> Transplantation:
    """
    Factory function to create Transplantation.

    Returns:
        Transplantation instance
    """
    return Transplantation(create_spectral_solver(run_id), logger=_logger_func, run_id=run_id)


def create_run_pipeline(
    output_dir: Optional[str] = None, run_id: str = "local", write: bool = True
) -> RunPipeline:
    """
    Factory function to create RunPipeline with dependencies.

    Args:
        output_dir: Artifact directory
        run_id: Run identifier for the logs
        write: Whether artifacts are written

    Returns:
        RunPipeline instance
    """
    return RunPipeline(
        create_tile_catalog(),
        create_spectral_solver(run_id),
        writer=create_artifact_writer(output_dir) if write else None,
        logger=_logger_func,
        run_id=run_id,
    )
