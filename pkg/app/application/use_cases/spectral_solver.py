"""Lowest eigenpairs of discrete Laplacians."""

from typing import Any, Callable, Optional

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh, splu

from app.application.dtos.spectrum import SpectrumMeta, SpectrumReport
from app.domain.entities.discrete_operator import DiscreteOperatorPair
from app.domain.errors import SolverConvergenceError, ZeroDenominatorError

SHIFT = -0.01
CLUSTER_GAP = 1e-6
CLUSTER_FLOOR = 1e-8


def rayleigh_quotient(op: DiscreteOperatorPair, f: np.ndarray) -> float:
    """
    fᵀKf / fᵀMf.

    Raises:
        ZeroDenominatorError: If f vanishes in the M-norm
    """
    f = np.asarray(f, dtype=float)
    denominator = float(f @ (op.mass @ f))
    if denominator <= 0.0:
        raise ZeroDenominatorError("Rayleigh quotient of a vector with zero M-norm")
    return float(f @ (op.stiffness @ f)) / denominator


def residual_norms(
    op: DiscreteOperatorPair, eigenvalues: np.ndarray, eigenvectors: np.ndarray
) -> np.ndarray:
    """‖Kx − λMx‖ / ‖x‖_M for every eigenpair (columns of `eigenvectors`)."""
    kx = op.stiffness @ eigenvectors
    mx = op.mass @ eigenvectors
    norms = np.sqrt(np.einsum("ij,ij->j", eigenvectors, mx))
    return np.linalg.norm(kx - mx * eigenvalues, axis=0) / norms


def clusters(eigenvalues: list[float]) -> list[int]:
    """
    Multiplicity cluster index of every eigenvalue.

    Neighbours share a cluster when their gap is at most CLUSTER_GAP times the
    larger magnitude, or CLUSTER_FLOOR times the largest eigenvalue.
    """
    if not eigenvalues:
        return []
    floor = CLUSTER_FLOOR * max(abs(v) for v in eigenvalues)
    labels = [0]
    for previous, current in zip(eigenvalues, eigenvalues[1:]):
        gap = current - previous
        same = gap <= max(CLUSTER_GAP * max(abs(previous), abs(current)), floor)
        labels.append(labels[-1] if same else labels[-1] + 1)
    return labels


def _normalized(eigenvectors: np.ndarray, op: DiscreteOperatorPair) -> np.ndarray:
    # Unit M-norm; the largest entry of every vector is positive.
    mx = op.mass @ eigenvectors
    vectors = eigenvectors / np.sqrt(np.einsum("ij,ij->j", eigenvectors, mx))
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


class SpectralSolver:
    """Use case for the lowest generalized eigenpairs K x = λ M x."""

    def __init__(
        self,
        dense_limit: int = 600,
        maxiter: int = 10000,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize spectral solver.

        Args:
            dense_limit: Largest dof count solved with a dense eigensolver
            maxiter: Iteration budget of the shift-invert Lanczos solver
            logger: Optional logger function (run_id, stage, component, **kwargs)
            run_id: Run identifier passed to the logger
        """
        self._dense_limit = dense_limit
        self._maxiter = maxiter
        self._logger = logger
        self._run_id = run_id

    def _log(self, **kwargs: Any) -> None:
        if self._logger:
            self._logger(self._run_id, "spectral", "solver", **kwargs)

    def lowest_eigenpairs(
        self,
        op: DiscreteOperatorPair,
        count: int,
        tol: float = 1e-8,
        seed: int = 0,
    ) -> tuple[SpectrumReport, np.ndarray]:
        """
        Compute the `count` smallest eigenvalues of K x = λ M x.

        Small problems are solved densely; larger ones by Lanczos iteration in
        shift-invert mode about a small negative shift with a sparse LU
        factorization, started from a seeded random vector.

        Args:
            op: Operator pair
            count: Number of eigenpairs (less than the dof count)
            tol: Bound on the residuals ‖Kx − λMx‖/‖x‖_M, relative to max(1, |λ|)
            seed: Seed of the start vector

        Returns:
            (SpectrumReport, eigenvectors as columns with unit M-norm)

        Raises:
            ValueError: If count is not below the dof count
            SolverConvergenceError: If the iteration budget runs out or a
                residual exceeds the tolerance
        """
        n = op.dof_count
        if not 0 < count < n:
            raise ValueError(f"Eigenpair count must be in [1, {n - 1}], got {count}")
        stiffness = op.stiffness.astype(float)
        mass = op.mass.astype(float)
        if n <= self._dense_limit:
            solver, iterations = "dense", 0
            values, vectors = linalg.eigh(
                stiffness.toarray(), mass.toarray(), subset_by_index=[0, count - 1]
            )
        else:
            solver = "shift_invert"
            lu = splu((stiffness - SHIFT * mass).tocsc())
            applications = [0]

            def solve(x: np.ndarray) -> np.ndarray:
                applications[0] += 1
                return lu.solve(np.asarray(x, dtype=float))

            op_inv = LinearOperator(matvec=solve, shape=stiffness.shape, dtype=float)
            v0 = np.random.default_rng(seed).standard_normal(n)
            try:
                values, vectors = eigsh(
                    stiffness,
                    count,
                    mass,
                    sigma=SHIFT,
                    OPinv=op_inv,
                    v0=v0,
                    maxiter=self._maxiter,
                )
            except ArpackNoConvergence as error:
                partial = sorted(float(v) for v in error.eigenvalues)
                raise SolverConvergenceError(
                    f"Lanczos iteration did not converge on {op.mesh_name} "
                    f"({len(partial)} of {count} eigenpairs)",
                    partial_eigenvalues=partial,
                ) from error
            iterations = applications[0]
        order = np.argsort(values)
        values = values[order]
        vectors = _normalized(vectors[:, order], op)
        residuals = residual_norms(op, values, vectors)
        limits = tol * np.maximum(1.0, np.abs(values))
        if np.any(residuals > limits):
            good = [float(v) for v, r, lim in zip(values, residuals, limits) if r <= lim]
            raise SolverConvergenceError(
                f"Eigen-residual {residuals.max():.3e} above tolerance on {op.mesh_name}",
                partial_eigenvalues=good,
            )
        eigenvalues = [float(v) for v in values]
        self._log(
            mesh=op.mesh_name,
            dof_count=n,
            solver=solver,
            iterations=iterations,
            lowest=eigenvalues[0],
        )
        report = SpectrumReport(
            eigenvalues=eigenvalues,
            residuals=[float(r) for r in residuals],
            clusters=clusters(eigenvalues),
            meta=SpectrumMeta(
                mesh=op.mesh_name,
                refinement=op.refinement,
                bc=op.bc_label,
                mode=op.mode,
                dof_count=n,
                solver=solver,
                iterations=iterations,
                seed=seed,
                tolerance=tol,
            ),
        )
        return report, vectors

    def rayleigh_quotient(self, op: DiscreteOperatorPair, f: np.ndarray) -> float:
        """Rayleigh quotient of a dof vector."""
        return rayleigh_quotient(op, f)
