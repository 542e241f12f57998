"""Command handlers of the command-line front end."""

import argparse
import sys
from collections.abc import Sequence
from typing import Callable, Optional
from uuid import uuid4

from app.adapters.inbound.cli.parser import build_parser, build_run_config
from app.application.dtos.base import DTO
from app.application.dtos.pipeline import RunConfig
from app.application.dtos.spectrum import FAIL, PASS
from app.application.use_cases.run_pipeline import RunPipeline
from app.domain.errors import IsospectralError, PipelineStageError
from app.infrastructure.config.settings import settings
from app.infrastructure.logging.logger import (
    log_group_check,
    log_mesh_assembly,
    log_solver_run,
    log_spectrum_comparison,
    log_transplant_check,
    logger,
)
from app.infrastructure.wiring.dependencies import (
    create_artifact_writer,
    create_representation_analysis,
    create_run_pipeline,
    create_transplantation,
    create_verify_triple,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2

FEFFERMAN_DEFAULTS = {"tile": "ltile", "mode": "fem"}


def _emit(report: DTO) -> None:
    sys.stdout.write(report.to_json())


def _status(matches: bool) -> int:
    return EXIT_OK if matches else EXIT_MISMATCH


def _subgroups(cfg: RunConfig) -> list[str]:
    return [cfg.subgroup] if cfg.subgroup else [cfg.h1, cfg.h2]


def triple_verify(cfg: RunConfig, run_id: str) -> int:
    """Verify almost conjugacy and nonconjugacy of (G, H1, H2)."""
    report = create_verify_triple(run_id).execute(cfg.h1, cfg.h2, cfg.group)
    log_group_check(
        run_id, cfg.h1, cfg.h2, report.verdict, nontrivial=report.nontrivial
    )
    create_artifact_writer(cfg.out).write_report("triple", report)
    _emit(report)
    if report.failing_class is not None:
        sys.stderr.write(f"not almost conjugate: class of {report.failing_class} differs\n")
    return _status(report.verdict == cfg.expected.triple)


def graph_build(cfg: RunConfig, run_id: str) -> int:
    """Schreier graphs as JSON and DOT."""
    analysis = create_representation_analysis(run_id)
    writer = create_artifact_writer(cfg.out)
    for subgroup in _subgroups(cfg):
        report = analysis.graph_report(subgroup, cfg.generator_set)
        graph = analysis.schreier_graph(subgroup, cfg.generator_set)
        writer.write_graph(f"graph-{subgroup}", graph)
        writer.write_report(f"graph-{subgroup}", report)
        _emit(report)
    return EXIT_OK


def graph_orient(cfg: RunConfig, run_id: str) -> int:
    """Orientability verdicts with colouring or odd-cycle witness."""
    analysis = create_representation_analysis(run_id)
    for subgroup in _subgroups(cfg):
        report = analysis.graph_report(subgroup, cfg.generator_set)
        if report.orientable:
            sys.stdout.write(f"{subgroup}: orientable coloring={report.coloring}\n")
        else:
            sys.stdout.write(
                f"{subgroup}: nonorientable witness={report.witness_cycle} "
                f"labels={report.witness_labels}\n"
            )
    return EXIT_OK


def chars_table(cfg: RunConfig, run_id: str) -> int:
    """Character table as JSON and a plain-text table."""
    report = create_representation_analysis(run_id).character_table_report()
    writer = create_artifact_writer(cfg.out)
    writer.write_report("characters", report)
    writer.write_table(
        "characters",
        ("name", *report.classes),
        [(row.name, *row.values) for row in report.rows],
    )
    _emit(report)
    return _status(report.orthonormal and report.column_orthogonal)


def chars_decompose(cfg: RunConfig, run_id: str) -> int:
    """Decompose the permutation characters of G/H into irreducibles."""
    analysis = create_representation_analysis(run_id)
    writer = create_artifact_writer(cfg.out)
    for subgroup in _subgroups(cfg):
        report = analysis.decomposition(subgroup)
        writer.write_report(f"decomposition-{subgroup}", report)
        _emit(report)
    return EXIT_OK


def intertwine_solve(cfg: RunConfig, run_id: str) -> int:
    """Intertwiner space and the transplantation matrix of the given parameters."""
    report, _ = create_representation_analysis(run_id).intertwiners(
        cfg.parameters, cfg.h1, cfg.h2, cfg.generator_set
    )
    create_artifact_writer(cfg.out).write_report("intertwiner", report)
    _emit(report)
    return _status(report.intertwines and report.invertible)


def _surfaces(cfg: RunConfig, pipeline: RunPipeline, run_id: str) -> list:
    if cfg.subgroup:
        meshes = [pipeline.single_surface(cfg, cfg.finest)]
    else:
        meshes = list(pipeline.surface_pairs(cfg)[cfg.finest])
    for mesh in meshes:
        log_mesh_assembly(run_id, mesh.name, mesh.node_count, mesh.euler_characteristic())
    return meshes


def surface_build(cfg: RunConfig, run_id: str) -> int:
    """Surface summaries (Euler characteristic, boundary, cone points)."""
    pipeline = create_run_pipeline(cfg.out, run_id, write=False)
    writer = create_artifact_writer(cfg.out)
    for mesh in _surfaces(cfg, pipeline, run_id):
        report = pipeline.assembly.report(mesh)
        writer.write_report(f"surface-{mesh.name}", report)
        _emit(report)
    return EXIT_OK


def surface_export(cfg: RunConfig, run_id: str) -> int:
    """OFF meshes and DOT graphs of the surfaces."""
    pipeline = create_run_pipeline(cfg.out, run_id, write=False)
    writer = create_artifact_writer(cfg.out)
    for mesh in _surfaces(cfg, pipeline, run_id):
        writer.write_mesh(mesh.name, mesh)
        if mesh.graph is not None:
            writer.write_graph(f"graph-{mesh.name}", mesh.graph)
    for name in writer.written:
        sys.stdout.write(f"{name}\n")
    return EXIT_OK


def spectrum_compute(cfg: RunConfig, run_id: str) -> int:
    """Lowest eigenvalues of one surface (or the tile alone) at every level."""
    reports, study = create_run_pipeline(cfg.out, run_id).spectrum(cfg)
    for report in reports:
        log_solver_run(
            run_id,
            report.meta.mesh,
            report.meta.dof_count,
            report.meta.solver,
            report.meta.iterations,
            refinement=report.meta.refinement,
        )
    _emit(study if study is not None else reports[-1])
    return EXIT_OK


def compare(cfg: RunConfig, run_id: str) -> int:
    """Compare the spectra of M1 and M2 under one boundary condition."""
    report = create_run_pipeline(cfg.out, run_id).compare(cfg)
    log_spectrum_comparison(run_id, report.first, report.second, report.verdict, bc=cfg.bc)
    _emit(report)
    expected = {
        "neumann": cfg.expected.neumann,
        "dirichlet": cfg.expected.dirichlet,
    }.get(cfg.bc, PASS)
    return _status(report.verdict == expected)


def transplant_verify(cfg: RunConfig, run_id: str) -> int:
    """Transplant Neumann eigenfunctions between M1 and M2 and back."""
    pipeline = create_run_pipeline(cfg.out, run_id, write=False)
    m1, m2 = pipeline.surface_pairs(cfg)[cfg.finest]
    _, matrix = pipeline.analysis.intertwiners(cfg.parameters, cfg.h1, cfg.h2, cfg.generator_set)
    report = create_transplantation(run_id).verify(
        m1, m2, matrix, cfg.count, cfg.mode, cfg.tol, cfg.seed
    )
    log_transplant_check(
        run_id, "both", report.max_residual, report.max_edge_mismatch, passed=report.passed
    )
    create_artifact_writer(cfg.out).write_report("transplant", report)
    _emit(report)
    verdict = PASS if report.passed else FAIL
    return _status(verdict == cfg.expected.transplant)


def pipeline(cfg: RunConfig, run_id: str) -> int:
    """Run every stage and compare with the expected verdicts."""
    report = create_run_pipeline(cfg.out, run_id).execute(cfg)
    for stage in report.stages:
        mark = "ok" if stage.matches else "MISMATCH"
        sys.stdout.write(f"{stage.stage}: {stage.verdict} (expected {stage.expected}) {mark}\n")
    return _status(report.passed)


def fefferman(cfg: RunConfig, run_id: str) -> int:
    """Lowest Dirichlet eigenvalues of the doubled half-tile domains."""
    report = create_run_pipeline(cfg.out, run_id).fefferman(cfg)
    _emit(report)
    return _status(report.verdict == PASS and report.c_matches_half_tile)


HANDLERS: dict[tuple[str, Optional[str]], Callable[[RunConfig, str], int]] = {
    ("triple", "verify"): triple_verify,
    ("graph", "build"): graph_build,
    ("graph", "orient"): graph_orient,
    ("chars", "table"): chars_table,
    ("chars", "decompose"): chars_decompose,
    ("intertwine", "solve"): intertwine_solve,
    ("surface", "build"): surface_build,
    ("surface", "export"): surface_export,
    ("spectrum", "compute"): spectrum_compute,
    ("compare", None): compare,
    ("transplant", "verify"): transplant_verify,
    ("pipeline", None): pipeline,
    ("fefferman", None): fefferman,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and map its outcome to an exit status.

    Returns:
        0 when every verdict matches, 1 on a mismatch, 2 on an error
    """
    args: argparse.Namespace = build_parser().parse_args(argv)
    action = getattr(args, "action", None)
    handler = HANDLERS[(args.command, action)]
    run_id = str(uuid4())
    defaults = FEFFERMAN_DEFAULTS if args.command == "fefferman" else {}
    try:
        cfg = build_run_config(args, settings, **defaults)
        return handler(cfg, run_id)
    except PipelineStageError as error:
        logger.error(f"run_id={run_id!r} | stage={error.stage!r} | error={error}")
        sys.stderr.write(f"error: {error} {error.diagnostics}\n")
        return EXIT_ERROR
    except (IsospectralError, ValueError) as error:
        logger.error(f"run_id={run_id!r} | command={args.command!r} | error={error}")
        sys.stderr.write(f"error: {error}\n")
        return EXIT_ERROR
