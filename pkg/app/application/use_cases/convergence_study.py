"""Refinement studies with Richardson extrapolation."""

import math
from collections.abc import Sequence
from typing import Any, Callable, Optional

import numpy as np

from app.application.dtos.spectrum import ConvergenceReport
from app.application.use_cases.spectral_solver import SpectralSolver
from app.domain.entities.discrete_operator import DiscreteOperatorPair
from app.domain.errors import NonMonotoneSequenceError

# Error of P1 eigenvalues is O(h^2).
ASSUMED_ORDER = 2
MIN_LEVELS = 3


def richardson(
    values: Sequence[float], levels: Sequence[int], order: int = ASSUMED_ORDER
) -> tuple[float, float, Optional[float]]:
    """
    Extrapolate an eigenvalue sequence computed at refinements k (h ∝ 1/k).

    The extrapolant uses the last two levels; the error estimate is its
    distance to the extrapolant of the two levels before. The observed order is
    log(|d1|/|d2|)/log(r) for the last three levels, with r the last ratio.

    Args:
        values: Eigenvalue at every level
        levels: Refinement levels, strictly ascending
        order: Assumed convergence order

    Returns:
        (extrapolated value, error estimate, observed order or None)

    Raises:
        ValueError: With fewer than three levels
        NonMonotoneSequenceError: If the sequence changes direction
    """
    if len(values) < MIN_LEVELS or len(values) != len(levels):
        raise ValueError(f"Richardson extrapolation needs >= {MIN_LEVELS} levels")
    steps = np.diff(np.asarray(values, dtype=float))
    if np.any(steps > 0) and np.any(steps < 0):
        raise NonMonotoneSequenceError(f"Sequence {list(values)} is not monotone")

    def extrapolate(coarse: float, fine: float, ratio: float) -> float:
        return fine + (fine - coarse) / (ratio**order - 1)

    ratio = levels[-1] / levels[-2]
    last = extrapolate(values[-2], values[-1], ratio)
    previous = extrapolate(values[-3], values[-2], levels[-2] / levels[-3])
    d1, d2 = values[-2] - values[-3], values[-1] - values[-2]
    observed = math.log(abs(d1) / abs(d2)) / math.log(ratio) if d1 and d2 else None
    return last, abs(last - previous), observed


class ConvergenceStudy:
    """Use case for eigenvalue refinement studies."""

    def __init__(
        self,
        solver: SpectralSolver,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize convergence study.

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
            self._logger(self._run_id, "spectral", "convergence", **kwargs)

    def run(
        self,
        build: Callable[[int], DiscreteOperatorPair],
        levels: Sequence[int],
        count: int,
        tol: float = 1e-8,
        seed: int = 0,
    ) -> ConvergenceReport:
        """
        Solve at every refinement level and extrapolate each eigenvalue index.

        Non-monotone sequences are reported (monotone=False) without an
        extrapolated value.

        Args:
            build: Refinement level -> operator pair
            levels: Refinement levels, strictly ascending, at least three
            count: Number of eigenvalues per level
            tol: Solver tolerance
            seed: Solver seed

        Returns:
            ConvergenceReport

        Raises:
            ValueError: With fewer than three or non-ascending levels
        """
        levels = list(levels)
        if len(levels) < MIN_LEVELS:
            raise ValueError(f"A convergence study needs >= {MIN_LEVELS} refinement levels")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError("Refinement levels must be strictly ascending")
        reports = [
            self._solver.lowest_eigenpairs(build(k), count, tol=tol, seed=seed)[0]
            for k in levels
        ]
        sequences = [[r.eigenvalues[i] for r in reports] for i in range(count)]
        extrapolated: list[Optional[float]] = []
        errors: list[Optional[float]] = []
        orders: list[Optional[float]] = []
        monotone: list[bool] = []
        for index, sequence in enumerate(sequences):
            try:
                value, error, order = richardson(sequence, levels)
            except NonMonotoneSequenceError:
                self._log(index=index, monotone=False, sequence=sequence)
                extrapolated.append(None)
                errors.append(None)
                orders.append(None)
                monotone.append(False)
                continue
            extrapolated.append(value)
            errors.append(error)
            orders.append(order)
            monotone.append(True)
        self._log(levels=levels, extrapolated=extrapolated[: min(count, 3)])
        return ConvergenceReport(
            levels=levels,
            sequences=sequences,
            extrapolated=extrapolated,
            error_estimates=errors,
            observed_orders=orders,
            monotone=monotone,
            reports=reports,
        )
