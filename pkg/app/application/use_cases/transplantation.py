"""Transplantation of eigenfunctions between M1 and M2."""

from typing import Any, Callable, Optional

import numpy as np
from scipy import sparse

from app.application.dtos.transplant import (
    EdgeResidual,
    IntertwiningDefectReport,
    TransplantCheck,
    TransplantReport,
)
from app.application.use_cases.spectral_solver import SpectralSolver
from app.domain.entities.discrete_function import DiscreteFunction, gluing_name
from app.domain.entities.discrete_operator import GRAPH, DiscreteOperatorPair, assemble
from app.domain.entities.surface_mesh import SurfaceMesh
from app.domain.errors import GluingConsistencyError
from app.domain.value_objects.transplant_matrix import TransplantMatrix

EDGE_TOLERANCE = 1e-12


def check_edge_compatibility(h: DiscreteFunction) -> list[EdgeResidual]:
    """
    Mismatch of the two tile-side traces along every glued edge of h's surface.

    Args:
        h: Function given tile by tile

    Returns:
        One residual per gluing, in gluing order
    """
    return [
        EdgeResidual(edge=gluing_name(h.mesh, gluing), residual=h.gluing_mismatch(gluing))
        for gluing in h.mesh.gluings
    ]


def transplant(
    f: DiscreteFunction,
    matrix: np.ndarray,
    target: SurfaceMesh,
    tolerance: float = EDGE_TOLERANCE,
) -> DiscreteFunction:
    """
    Transplant a function tile by tile: [H_0 … H_7] = [F_0 … F_7]·A.

    Args:
        f: Function on the source surface
        matrix: Square matrix A, rows indexed by source copies
        target: Surface glued from the same tile mesh
        tolerance: Largest admissible glued-edge mismatch of the result

    Returns:
        Function on the target surface

    Raises:
        ValueError: If the surfaces do not share a tile mesh or A has the wrong shape
        GluingConsistencyError: If the result violates a gluing of the target
    """
    if target.tile_mesh.node_count != f.mesh.tile_mesh.node_count:
        raise ValueError("Source and target must be glued from the same tile mesh")
    a = np.asarray(matrix)
    if a.shape != (f.mesh.copy_count, target.copy_count):
        raise ValueError(
            f"Matrix of shape {a.shape} cannot map {f.mesh.copy_count} tiles to "
            f"{target.copy_count}"
        )
    h = DiscreteFunction(mesh=target, tile_values=a.T @ f.tile_values)
    residuals = check_edge_compatibility(h)
    worst = max(residuals, key=lambda r: r.residual, default=None)
    if worst is not None and worst.residual > tolerance:
        raise GluingConsistencyError(
            f"Transplanted function violates gluing {worst.edge} by {worst.residual:.3e}",
            gluing=worst.edge,
            residual=worst.residual,
        )
    return h


def transplant_operator(
    source: SurfaceMesh, target: SurfaceMesh, matrix: np.ndarray
) -> sparse.csr_matrix:
    """
    Matrix of the transplantation on nodal values, shape (target nodes, source nodes).

    Each target node reads its value from the first tile copy carrying it.
    """
    a = np.asarray(matrix)
    n = target.tile_mesh.node_count
    _, first = np.unique(target.global_ids.ravel(), return_index=True)
    copies, local = np.divmod(first, n)
    rows, cols, data = [], [], []
    for i in range(source.copy_count):
        weights = a[i, copies]
        keep = weights != 0
        rows.append(np.flatnonzero(keep))
        cols.append(source.global_ids[i, local[keep]])
        data.append(weights[keep])
    shape = (target.node_count, source.node_count)
    return sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=shape
    ).tocsr()


def _integral(matrix: sparse.spmatrix) -> sparse.csr_matrix:
    # Graph-mode entries are integers stored as floats.
    matrix = sparse.csr_matrix(matrix)
    data = np.rint(matrix.data).astype(np.int64)
    return sparse.csr_matrix((data, matrix.indices, matrix.indptr), shape=matrix.shape)


def _max_abs(matrix: sparse.spmatrix) -> float:
    matrix = sparse.csr_matrix(matrix)
    matrix.eliminate_zeros()
    return float(abs(matrix).max()) if matrix.nnz else 0.0


def intertwining_defect(
    m1: SurfaceMesh, m2: SurfaceMesh, matrix: TransplantMatrix, mode: str = GRAPH
) -> IntertwiningDefectReport:
    """
    max|K2·T − T̃ᵀ·K1| and max|N2·T − T̃ᵀ·N1| for the Neumann operators.

    T transplants M1 -> M2 and T̃ transplants M2 -> M1, both with A. In graph
    mode with an integral A every product is formed in integer arithmetic.

    Args:
        m1: First surface
        m2: Second surface
        matrix: Transplantation matrix
        mode: fem or graph

    Returns:
        IntertwiningDefectReport
    """
    op1 = assemble(m1, m1.all_neumann(), mode)
    op2 = assemble(m2, m2.all_neumann(), mode)
    exact = mode == GRAPH and matrix.is_integral()
    a = np.array(matrix.entries.tolist(), dtype=np.int64) if exact else matrix.as_array()
    forward = transplant_operator(m1, m2, a)
    backward = transplant_operator(m2, m1, a)
    k1, k2, n1, n2 = (
        _integral(x) if exact else sparse.csr_matrix(x)
        for x in (op1.stiffness, op2.stiffness, op1.mass, op2.mass)
    )
    return IntertwiningDefectReport(
        mode=mode,
        stiffness=_max_abs(k2 @ forward - backward.T @ k1),
        mass=_max_abs(n2 @ forward - backward.T @ n1),
        exact_arithmetic=exact,
    )


class Transplantation:
    """Use case for verifying that transplantation maps eigenfunctions to eigenfunctions."""

    def __init__(
        self,
        solver: SpectralSolver,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize transplantation use case.

        Args:
            solver: Eigensolver
            logger: Optional logger function (run_id, stage, component, **kwargs)
            run_id: Run identifier passed to the logger
        """
        self._solver = solver
        self._logger = logger
        self._run_id = run_id

    def _log(self, **kwargs: Any) -> None:
        if self._logger:
            self._logger(self._run_id, "transplant", "transplant", **kwargs)

    def _checks(
        self,
        source: SurfaceMesh,
        target: SurfaceMesh,
        matrix: np.ndarray,
        count: int,
        mode: str,
        tol: float,
        seed: int,
        direction: str,
    ) -> tuple[list[TransplantCheck], list[DiscreteFunction], list[DiscreteFunction]]:
        op_source = assemble(source, source.all_neumann(), mode)
        op_target = assemble(target, target.all_neumann(), mode)
        spectrum, vectors = self._solver.lowest_eigenpairs(op_source, count, tol=tol, seed=seed)
        checks, originals, images = [], [], []
        for index, eigenvalue in enumerate(spectrum.eigenvalues):
            f = DiscreteFunction.from_global(source, op_source.to_global(vectors[:, index]))
            h = transplant(f, matrix, target)
            mismatch = max((r.residual for r in check_edge_compatibility(h)), default=0.0)
            checks.append(
                TransplantCheck(
                    index=index,
                    eigenvalue=eigenvalue,
                    residual=eigen_residual(op_target, h, eigenvalue),
                    edge_mismatch=mismatch,
                    direction=direction,
                )
            )
            originals.append(f)
            images.append(h)
        self._log(
            direction=direction,
            max_residual=max(c.residual for c in checks),
            max_edge_mismatch=max(c.edge_mismatch for c in checks),
        )
        return checks, originals, images

    def verify(
        self,
        m1: SurfaceMesh,
        m2: SurfaceMesh,
        matrix: TransplantMatrix,
        count: int,
        mode: str = GRAPH,
        tol: float = 1e-9,
        seed: int = 0,
    ) -> TransplantReport:
        """
        Transplant the lowest Neumann eigenfunctions of M1 to M2 with A and back with A⁻¹.

        Args:
            m1: First surface
            m2: Second surface
            matrix: Invertible transplantation matrix
            count: Number of eigenpairs
            mode: fem or graph
            tol: Eigen-residual tolerance, relative to max(1, λ)
            seed: Solver seed

        Returns:
            TransplantReport

        Raises:
            ValueError: If the matrix is singular
            GluingConsistencyError: If a transplanted function breaks a gluing
            SolverConvergenceError: If the eigensolver fails
        """
        forward_matrix = matrix.as_array()
        inverse_matrix = np.array(matrix.inverse().tolist(), dtype=float)
        defect = intertwining_defect(m1, m2, matrix, mode)
        forward, originals, images = self._checks(
            m1, m2, forward_matrix, count, mode, tol, seed, "forward"
        )
        inverse, _, _ = self._checks(m2, m1, inverse_matrix, count, mode, tol, seed, "inverse")
        roundtrip = max(
            float(np.max(np.abs(transplant(h, inverse_matrix, m1).tile_values - f.tile_values)))
            for f, h in zip(originals, images)
        )
        checks = forward + inverse
        max_residual = max(c.residual for c in checks)
        max_mismatch = max(c.edge_mismatch for c in checks)
        passed = (
            all(c.residual <= tol * max(1.0, abs(c.eigenvalue)) for c in checks)
            and max_mismatch <= EDGE_TOLERANCE
        )
        self._log(
            defect_stiffness=defect.stiffness,
            defect_mass=defect.mass,
            roundtrip_error=roundtrip,
            passed=passed,
        )
        return TransplantReport(
            mode=mode,
            refinement=m1.tile_mesh.refinement,
            parameters=[str(p) for p in matrix.parameters()],
            count=count,
            tolerance=tol,
            defect=defect,
            forward=forward,
            inverse=inverse,
            roundtrip_error=roundtrip,
            max_residual=max_residual,
            max_edge_mismatch=max_mismatch,
            passed=passed,
        )


def eigen_residual(op: DiscreteOperatorPair, h: DiscreteFunction, eigenvalue: float) -> float:
    """‖K h − λ M h‖ / ‖h‖_M for a function on the operator's surface."""
    x = op.restrict(h.values)
    mx = op.mass @ x
    norm = float(np.sqrt(x @ mx))
    if norm == 0.0:
        return 0.0
    return float(np.linalg.norm(op.stiffness @ x - eigenvalue * mx)) / norm
