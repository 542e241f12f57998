"""Unit tests for FilesystemArtifactWriter."""

import json

import pytest

from app.adapters.outbound.artifacts.filesystem_artifact_writer import FilesystemArtifactWriter
from app.application.dtos.spectrum import SpectrumMeta, SpectrumReport
from app.application.use_cases.representation_theory import RepresentationAnalysis
from app.domain.entities.surface_mesh import single_tile
from app.domain.entities.tile_mesh import mesh_tile
from app.domain.value_objects.tile_spec import builtin_tile


@pytest.fixture
def report() -> SpectrumReport:
    """Two-eigenvalue Neumann spectrum."""
    return SpectrumReport(
        eigenvalues=[0.0, 2.5],
        residuals=[1e-14, 3e-13],
        clusters=[0, 1],
        meta=SpectrumMeta(
            mesh="M1",
            refinement=4,
            bc="neumann",
            mode="graph",
            dof_count=40,
            solver="dense",
            iterations=0,
            seed=0,
            tolerance=1e-10,
        ),
    )


def test_write_spectrum(tmp_path, report: SpectrumReport) -> None:
    """Test the CSV header and one row per eigenvalue."""
    writer = FilesystemArtifactWriter(str(tmp_path))

    path = writer.write_spectrum("M1-neumann", report)

    lines = (tmp_path / "M1-neumann.csv").read_text(encoding="utf-8").splitlines()
    assert path.endswith("M1-neumann.csv")
    assert lines[0] == "index,eigenvalue,residual,cluster"
    assert lines[1:] == ["0,0.0,1e-14,0", "1,2.5,3e-13,1"]


def test_write_report(tmp_path, report: SpectrumReport) -> None:
    """Test that reports are written as their canonical JSON."""
    writer = FilesystemArtifactWriter(str(tmp_path))

    writer.write_report("spectrum", report)

    text = (tmp_path / "spectrum.json").read_text(encoding="utf-8")
    assert text == report.to_json()
    assert json.loads(text)["meta"]["mesh"] == "M1"


def test_write_mesh(tmp_path) -> None:
    """Test the OFF export of a single coarse triangle."""
    writer = FilesystemArtifactWriter(str(tmp_path))
    mesh = single_tile(mesh_tile(builtin_tile("triangle"), 1))

    writer.write_mesh("triangle", mesh)

    lines = (tmp_path / "triangle.off").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "OFF"
    assert lines[1] == "3 1 0"
    assert lines[-1].split()[0] == "3"
    assert len(lines) == 2 + 3 + 1


def test_write_graph(tmp_path) -> None:
    """Test that half-edges become dashed loops."""
    writer = FilesystemArtifactWriter(str(tmp_path))
    graph = RepresentationAnalysis().schreier_graph("gamma1")

    writer.write_graph("graph-M1", graph)

    text = (tmp_path / "graph-M1.dot").read_text(encoding="utf-8")
    assert text.startswith('graph "graph-M1" {')
    assert text.count("style=dashed") == len(graph.half_edges)
    assert text.count(" -- ") == len(graph.full_edges) + len(graph.half_edges)


def test_write_table(tmp_path) -> None:
    """Test the commented header and NaN for missing values."""
    writer = FilesystemArtifactWriter(str(tmp_path))

    writer.write_table("extrapolation", ["index", "value", "error"], [[0, 1.5, None]])

    lines = (tmp_path / "extrapolation.dat").read_text(encoding="utf-8").splitlines()
    assert lines == ["# index value error", "0 1.5 NaN"]


def test_written_names(tmp_path, report: SpectrumReport) -> None:
    """Test that written names are recorded in order and the directory is created."""
    target = tmp_path / "out" / "nested"
    writer = FilesystemArtifactWriter(str(target))

    writer.write_spectrum("a", report)
    writer.write_table("b", ["x"], [[1]])

    assert writer.written == ["a.csv", "b.dat"]
    assert target.is_dir()
