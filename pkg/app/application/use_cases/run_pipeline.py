"""End-to-end verification pipeline and the single-purpose runs behind the CLI."""

from collections.abc import Sequence
from typing import Any, Callable, Optional, TypeVar

from app.application.dtos.pipeline import PipelineReport, RunConfig, StageResult
from app.application.dtos.spectrum import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    ComparisonReport,
    ConvergenceReport,
    FeffermanReport,
    SpectrumReport,
)
from app.application.ports.artifact_writer import ArtifactWriter
from app.application.ports.tile_catalog import TileCatalog
from app.application.use_cases.compare_spectra import (
    ERROR_MARGIN,
    CompareSpectra,
    relative_differences,
)
from app.application.use_cases.convergence_study import MIN_LEVELS, ConvergenceStudy, richardson
from app.application.use_cases.representation_theory import RepresentationAnalysis
from app.application.use_cases.spectral_solver import SpectralSolver, rayleigh_quotient
from app.application.use_cases.surface_assembly import SurfaceAssembly
from app.application.use_cases.transplantation import Transplantation
from app.application.use_cases.verify_triple import VerifyTriple
from app.domain.entities.discrete_operator import (
    DiscreteOperatorPair,
    assemble,
    restrict_to_invariant,
)
from app.domain.entities.surface_mesh import SurfaceMesh, congruent_outlines, single_tile
from app.domain.errors import IsospectralError, PipelineStageError
from app.domain.value_objects.boundary_conditions import BCAssignment
from app.domain.value_objects.tile_spec import TileSpec

T = TypeVar("T")

SKIPPED = "SKIPPED"


def boundary_assignment(mesh: SurfaceMesh, cfg: RunConfig) -> BCAssignment:
    """Boundary conditions of a run applied to a surface."""
    if cfg.bc == "neumann":
        return mesh.all_neumann()
    if cfg.bc == "dirichlet":
        return mesh.all_dirichlet()
    return BCAssignment.mixed(mesh.segment_names, cfg.mixed_neumann)


def _orientability(m1: bool, m2: bool) -> str:
    return ",".join(
        f"{name}={'orientable' if flag else 'nonorientable'}"
        for name, flag in (("M1", m1), ("M2", m2))
    )


def _diagnostics(error: Exception) -> dict[str, Any]:
    return {
        key: value
        for key, value in vars(error).items()
        if isinstance(value, (str, int, float, bool, list, dict, type(None)))
    }


class RunPipeline:
    """Use case orchestrating group checks, surfaces, spectra and transplantation."""

    def __init__(
        self,
        catalog: TileCatalog,
        solver: SpectralSolver,
        writer: Optional[ArtifactWriter] = None,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize run pipeline.

        Args:
            catalog: Tile catalog
            solver: Eigensolver
            writer: Optional artifact writer (no files are written without one)
            logger: Optional logger function (run_id, stage, component, **kwargs)
            run_id: Run identifier passed to the logger
        """
        self._catalog = catalog
        self._solver = solver
        self._writer = writer
        self._logger = logger
        self._run_id = run_id
        self._analysis = RepresentationAnalysis(logger=logger, run_id=run_id)
        self._assembly = SurfaceAssembly(catalog, self._analysis, logger=logger, run_id=run_id)
        self._compare = CompareSpectra(logger=logger, run_id=run_id)
        self._study = ConvergenceStudy(solver, logger=logger, run_id=run_id)
        self._transplantation = Transplantation(solver, logger=logger, run_id=run_id)

    @property
    def analysis(self) -> RepresentationAnalysis:
        return self._analysis

    @property
    def assembly(self) -> SurfaceAssembly:
        return self._assembly

    def _log(self, stage: str, **kwargs: Any) -> None:
        if self._logger:
            self._logger(self._run_id, stage, "pipeline", **kwargs)

    def _stage(self, stage: str, action: Callable[[], T]) -> T:
        try:
            return action()
        except PipelineStageError:
            raise
        except IsospectralError as error:
            raise PipelineStageError(stage, str(error), _diagnostics(error)) from error

    # --- building blocks ------------------------------------------------------------

    def tile(self, cfg: RunConfig) -> TileSpec:
        """Tile of a run with its coordinate overrides."""
        return self._assembly.tile(cfg.tile, cfg.tile_overrides)

    def surface_pairs(self, cfg: RunConfig) -> dict[int, tuple[SurfaceMesh, SurfaceMesh]]:
        """M1 and M2 at every refinement level of a run."""
        tile = self.tile(cfg)
        return {
            k: self._assembly.surface_pair(
                self._assembly.tile_mesh(tile, k), cfg.h1, cfg.h2, cfg.generator_set
            )
            for k in cfg.refine
        }

    def single_surface(self, cfg: RunConfig, refinement: int) -> SurfaceMesh:
        """Surface of single-surface commands: G/subgroup, or the tile alone."""
        tile_mesh = self._assembly.tile_mesh(self.tile(cfg), refinement)
        if cfg.subgroup is None:
            return single_tile(tile_mesh)
        return self._assembly.surface(tile_mesh, cfg.subgroup, cfg.generator_set, "M")

    def operator(self, mesh: SurfaceMesh, cfg: RunConfig, bc: Optional[str] = None):
        """Operator pair of a surface under the run's (or the given) condition."""
        if bc == "neumann":
            assignment = mesh.all_neumann()
        elif bc == "dirichlet":
            assignment = mesh.all_dirichlet()
        else:
            assignment = boundary_assignment(mesh, cfg)
        return assemble(mesh, assignment, cfg.mode)

    def spectrum(
        self, cfg: RunConfig
    ) -> tuple[list[SpectrumReport], Optional[ConvergenceReport]]:
        """
        Lowest eigenvalues of one surface at every refinement level.

        Returns:
            (one report per level, convergence report when there are enough levels)
        """
        meshes = {k: self.single_surface(cfg, k) for k in cfg.refine}

        def build(k: int) -> DiscreteOperatorPair:
            return self.operator(meshes[k], cfg)

        if len(cfg.refine) >= MIN_LEVELS:
            study = self._study.run(build, cfg.refine, cfg.count, tol=cfg.solver_tol, seed=cfg.seed)
            reports = study.reports
        else:
            study = None
            reports = [
                self._solver.lowest_eigenpairs(build(k), cfg.count, cfg.solver_tol, cfg.seed)[0]
                for k in cfg.refine
            ]
        if self._writer:
            for k, report in zip(cfg.refine, reports):
                self._writer.write_spectrum(f"spectrum-{meshes[k].name}-{cfg.bc}-k{k}", report)
            if study is not None:
                self._writer.write_report(f"convergence-{cfg.bc}", study)
        return reports, study

    def _compare_pair(
        self,
        pairs: dict[int, tuple[SurfaceMesh, SurfaceMesh]],
        cfg: RunConfig,
        bc: str,
        skip_kernel: bool,
    ) -> tuple[ComparisonReport, list[tuple[SpectrumReport, SpectrumReport]]]:
        extra = 1 if skip_kernel else 0
        count = cfg.count + extra
        if len(cfg.refine) >= MIN_LEVELS:
            studies = [
                self._study.run(
                    lambda k, i=i: self.operator(pairs[k][i], cfg, bc),
                    cfg.refine,
                    count,
                    tol=cfg.solver_tol,
                    seed=cfg.seed,
                )
                for i in (0, 1)
            ]
            spectra = list(zip(studies[0].reports, studies[1].reports))
        else:
            studies = []
            spectra = [
                tuple(
                    self._solver.lowest_eigenpairs(
                        self.operator(m, cfg, bc), count, cfg.solver_tol, cfg.seed
                    )[0]
                    for m in pairs[k]
                )
                for k in cfg.refine
            ]
        r1, r2 = spectra[-1]
        skip = min(r1.zero_count(), r2.zero_count(), extra)
        if studies:
            window = slice(skip, skip + cfg.count)
            report = self._compare.compare_extrapolated(
                studies[0].extrapolated[window],
                studies[1].extrapolated[window],
                studies[0].error_estimates[window],
                studies[1].error_estimates[window],
                cfg.tol,
                names=(f"M1-{bc}", f"M2-{bc}"),
                offset=skip,
                first_finest=r1.eigenvalues[window],
                second_finest=r2.eigenvalues[window],
            )
        else:
            report = self._compare.compare(r1, r2, cfg.count, cfg.tol, skip=skip)
        return report, spectra

    def compare(self, cfg: RunConfig) -> ComparisonReport:
        """Compare the spectra of M1 and M2 under the run's boundary condition."""
        pairs = self.surface_pairs(cfg)
        report, spectra = self._compare_pair(pairs, cfg, cfg.bc, cfg.bc == "neumann")
        self._export_comparison(cfg.bc, cfg, report, spectra)
        return report

    def _export_comparison(
        self,
        bc: str,
        cfg: RunConfig,
        report: ComparisonReport,
        spectra: Sequence[tuple[SpectrumReport, SpectrumReport]],
    ) -> None:
        if not self._writer:
            return
        r1, r2 = spectra[-1]
        self._writer.write_spectrum(f"M1-{bc}", r1)
        self._writer.write_spectrum(f"M2-{bc}", r2)
        self._writer.write_report(f"compare-{bc}", report)
        rows = []
        for k, (s1, s2) in zip(cfg.refine, spectra):
            differences = relative_differences(s1.eigenvalues, s2.eigenvalues)
            rows.extend(
                (k, i, a, b, d)
                for i, (a, b, d) in enumerate(zip(s1.eigenvalues, s2.eigenvalues, differences))
            )
        self._writer.write_table(
            f"differences-{bc}", ("refinement", "index", "m1", "m2", "relative_difference"), rows
        )

    def fefferman(self, cfg: RunConfig) -> FeffermanReport:
        """
        Compare the lowest Dirichlet eigenvalues of the doubled domains C and S.

        λ1(C) must lie below λ1(S); λ1(C) must equal the lowest mixed eigenvalue
        of the half tile L, and the restriction of the S ground state to L must
        have a larger Rayleigh quotient.
        """
        tile = self.tile(cfg)
        lambda_c, lambda_s, lambda_l = [], [], []
        domains = {}
        restricted = 0.0
        for k in cfg.refine:
            s_domain, c_domain, half, half_bc = self._assembly.fefferman(
                self._assembly.tile_mesh(tile, k)
            )
            domains[k] = (s_domain, c_domain)
            op_s = assemble(s_domain, s_domain.all_dirichlet(), cfg.mode)
            op_c = assemble(c_domain, c_domain.all_dirichlet(), cfg.mode)
            op_l = assemble(half, half_bc, cfg.mode)
            report_s, vectors_s = self._solver.lowest_eigenpairs(
                op_s, 1, cfg.solver_tol, cfg.seed
            )
            report_c, _ = self._solver.lowest_eigenpairs(op_c, 1, cfg.solver_tol, cfg.seed)
            report_l, _ = self._solver.lowest_eigenpairs(op_l, 1, cfg.solver_tol, cfg.seed)
            lambda_s.append(report_s.eigenvalues[0])
            lambda_c.append(report_c.eigenvalues[0])
            lambda_l.append(report_l.eigenvalues[0])
            ground = op_s.to_global(vectors_s[:, 0])[s_domain.global_ids[0]]
            restricted = rayleigh_quotient(op_l, op_l.restrict(ground[half.global_ids[0]]))
        extrapolated: dict[str, Any] = {}
        verdict = PASS if all(c < s for c, s in zip(lambda_c, lambda_s)) else FAIL
        if len(cfg.refine) >= MIN_LEVELS:
            c_value, c_error, c_order = richardson(lambda_c, cfg.refine)
            s_value, s_error, _ = richardson(lambda_s, cfg.refine)
            extrapolated = {
                "extrapolated_c": c_value,
                "extrapolated_s": s_value,
                "error_c": c_error,
                "error_s": s_error,
                "observed_order_c": c_order,
            }
            if verdict == PASS and s_value - c_value <= ERROR_MARGIN * max(c_error, s_error):
                verdict = INCONCLUSIVE
        finest = cfg.finest
        report = FeffermanReport(
            tile=tile.name,
            mode=cfg.mode,
            levels=list(cfg.refine),
            lambda_c=lambda_c,
            lambda_s=lambda_s,
            lambda_l_mixed=lambda_l,
            restricted_rayleigh_quotient=restricted,
            c_matches_half_tile=bool(
                abs(lambda_c[-1] - lambda_l[-1]) <= cfg.tol * max(1.0, lambda_l[-1])
            ),
            congruent=congruent_outlines(*domains[finest]),
            verdict=verdict,
            **extrapolated,
        )
        self._log("fefferman", verdict=verdict, lambda_c=lambda_c[-1], lambda_s=lambda_s[-1])
        if self._writer:
            self._writer.write_report("fefferman", report)
            self._writer.write_mesh("C", domains[finest][1])
            self._writer.write_mesh("S", domains[finest][0])
            self._writer.write_table(
                "fefferman",
                ("refinement", "lambda_c", "lambda_s", "lambda_l_mixed"),
                list(zip(cfg.refine, lambda_c, lambda_s, lambda_l)),
            )
        return report

    # --- full pipeline --------------------------------------------------------------

    def execute(self, cfg: RunConfig) -> PipelineReport:
        """
        Run every stage and compare each verdict with the expected one.

        Stages: group, orientability, surfaces, neumann, transplant,
        dirichlet, quotient, fold.

        Args:
            cfg: Run configuration

        Returns:
            PipelineReport (passed iff every stage matches its expected verdict)

        Raises:
            PipelineStageError: If a stage fails outright
        """
        stages: list[StageResult] = []

        def record(stage: str, verdict: str, expected: str, **details: Any) -> None:
            result = StageResult(
                stage=stage,
                verdict=verdict,
                expected=expected,
                matches=verdict == expected,
                details=details,
            )
            stages.append(result)
            self._log(stage, verdict=verdict, expected=expected, matches=result.matches)

        triple = self._stage(
            "group",
            lambda: VerifyTriple(self._logger, self._run_id).execute(cfg.h1, cfg.h2, cfg.group),
        )
        record(
            "group",
            triple.verdict,
            cfg.expected.triple,
            nontrivial=triple.nontrivial,
            failing_class=triple.failing_class,
        )

        g1 = self._stage(
            "orientability", lambda: self._analysis.graph_report(cfg.h1, cfg.generator_set)
        )
        g2 = self._stage(
            "orientability", lambda: self._analysis.graph_report(cfg.h2, cfg.generator_set)
        )
        record(
            "orientability",
            _orientability(g1.orientable, g2.orientable),
            _orientability(cfg.expected.m1_orientable, cfg.expected.m2_orientable),
            witness_cycle=g1.witness_cycle or g2.witness_cycle,
            witness_labels=g1.witness_labels or g2.witness_labels,
        )

        tile = self._stage("surfaces", lambda: self.tile(cfg))
        pairs = self._stage("surfaces", lambda: self.surface_pairs(cfg))
        m1, m2 = pairs[cfg.finest]
        reports = [self._assembly.report(m) for m in (m1, m2)]
        with_cones = sum(1 for r in reports if r.cone_points)
        expected_cones = cfg.expected.cone_point_surfaces
        record(
            "surfaces",
            str(with_cones),
            str(with_cones if expected_cones is None else expected_cones),
            euler_characteristics=[r.euler_characteristic for r in reports],
            boundary_components=[r.boundary_components for r in reports],
            cone_points=[len(r.cone_points) for r in reports],
        )

        neumann, neumann_spectra = self._stage(
            "neumann", lambda: self._compare_pair(pairs, cfg, "neumann", skip_kernel=True)
        )
        record(
            "neumann",
            neumann.verdict,
            cfg.expected.neumann,
            max_relative_difference=max(c.relative_difference for c in neumann.indices),
            kernel_dimension=neumann.offset,
        )

        intertwiner, matrix = self._stage(
            "transplant",
            lambda: self._analysis.intertwiners(cfg.parameters, cfg.h1, cfg.h2, cfg.generator_set),
        )
        transplant = None
        if intertwiner.intertwines and intertwiner.invertible:
            transplant = self._stage(
                "transplant",
                lambda: self._transplantation.verify(
                    m1, m2, matrix, cfg.count, cfg.mode, cfg.tol, cfg.seed
                ),
            )
            record(
                "transplant",
                PASS if transplant.passed else FAIL,
                cfg.expected.transplant,
                defect_stiffness=transplant.defect.stiffness,
                defect_mass=transplant.defect.mass,
                max_residual=transplant.max_residual,
                max_edge_mismatch=transplant.max_edge_mismatch,
            )
        else:
            record("transplant", SKIPPED, cfg.expected.transplant, intertwines=False)

        dirichlet, dirichlet_spectra = self._stage(
            "dirichlet", lambda: self._compare_pair(pairs, cfg, "dirichlet", skip_kernel=False)
        )
        record(
            "dirichlet",
            dirichlet.verdict,
            cfg.expected.dirichlet,
            lowest=[dirichlet.indices[0].first, dirichlet.indices[0].second],
            max_relative_difference=max(c.relative_difference for c in dirichlet.indices),
        )

        quotients = self._stage(
            "quotient",
            lambda: [
                self._assembly.quotient(m, subgroup, cfg.generator_set)
                for m, subgroup in ((m1, cfg.h1), (m2, cfg.h2))
            ],
        )
        quotient_values = self._stage(
            "quotient",
            lambda: [self._lowest(assemble(q, bc, cfg.mode), cfg) for q, bc in quotients],
        )
        lowest_dirichlet = [r.eigenvalues[0] for r in dirichlet_spectra[-1]]
        differences = relative_differences(quotient_values, lowest_dirichlet)
        record(
            "quotient",
            PASS if max(differences) <= cfg.tol else FAIL,
            cfg.expected.quotient,
            quotient_lowest=quotient_values,
            dirichlet_lowest=lowest_dirichlet,
        )

        if tile.symmetries:
            folded = self._stage(
                "fold", lambda: self._assembly.fold(*quotients[0], tile.symmetries[0])
            )
            folded_op = restrict_to_invariant(
                assemble(folded.mesh, folded.bc, cfg.mode), folded.node_orbits()
            )
            omega = self._stage("fold", lambda: self._lowest(folded_op, cfg))
            difference = relative_differences([omega], lowest_dirichlet[:1])[0]
            record(
                "fold",
                PASS if difference <= cfg.tol else FAIL,
                cfg.expected.fold,
                fold_lowest=omega,
                dirichlet_lowest=lowest_dirichlet,
                copy_permutation=list(folded.copy_perm),
                folded_copies=list(folded.folded_copies),
                neumann=list(folded.bc.neumann_names),
                dof_count=folded_op.dof_count,
            )
        else:
            record("fold", SKIPPED, cfg.expected.fold, symmetries=0)

        outputs: list[str] = []
        if self._writer:
            self._export_all(cfg, triple, (g1, g2), (m1, m2), reports, intertwiner)
            self._export_comparison("neumann", cfg, neumann, neumann_spectra)
            self._export_comparison("dirichlet", cfg, dirichlet, dirichlet_spectra)
            if transplant is not None:
                self._writer.write_report("transplant", transplant)
            outputs = self._writer.written + ["pipeline.json"]

        report = PipelineReport(
            config=cfg.model_dump(mode="json"),
            tile_coordinates=[tuple(p) for p in tile.points],
            stages=stages,
            outputs=outputs,
            passed=all(s.matches for s in stages),
        )
        if self._writer:
            self._writer.write_report("pipeline", report)
        return report

    def _lowest(self, op: DiscreteOperatorPair, cfg: RunConfig) -> float:
        return self._solver.lowest_eigenpairs(op, 1, cfg.solver_tol, cfg.seed)[0].eigenvalues[0]

    def _export_all(self, cfg, triple, graphs, meshes, reports, intertwiner) -> None:
        self._writer.write_report("triple", triple)
        self._writer.write_report("intertwiner", intertwiner)
        for name, graph_report, mesh, surface_report in zip(("M1", "M2"), graphs, meshes, reports):
            self._writer.write_report(f"graph-{name}", graph_report)
            self._writer.write_graph(f"graph-{name}", mesh.graph)
            self._writer.write_report(f"surface-{name}", surface_report)
            self._writer.write_mesh(name, mesh)
