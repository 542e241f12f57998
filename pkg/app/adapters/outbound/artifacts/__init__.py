"""Artifact writer adapters."""

from app.adapters.outbound.artifacts.filesystem_artifact_writer import FilesystemArtifactWriter

__all__ = ["FilesystemArtifactWriter"]
