"""Index-by-index comparison of spectra."""

from collections.abc import Collection, Sequence
from typing import Any, Callable, Optional

from app.application.dtos.spectrum import (
    DISTINGUISHED,
    INCONCLUSIVE,
    PASS,
    ComparisonReport,
    IndexComparison,
    SpectrumReport,
)
from app.domain.errors import MismatchedSpectraError

# Differences must exceed this multiple of the extrapolation error to distinguish.
ERROR_MARGIN = 10.0
RELATIVE_FLOOR = 1e-8


def relative_differences(first: Sequence[float], second: Sequence[float]) -> list[float]:
    """
    |a − b| / max(|a|, |b|, floor) index by index.

    The floor is RELATIVE_FLOOR times the largest magnitude in both lists, so
    that two numerically zero eigenvalues compare equal.
    """
    scale = max((abs(v) for v in (*first, *second)), default=0.0)
    floor = RELATIVE_FLOOR * scale
    differences = []
    for a, b in zip(first, second):
        denominator = max(abs(a), abs(b), floor)
        differences.append(abs(a - b) / denominator if denominator > 0 else 0.0)
    return differences


def _verdict(difference: float, rel_tol: float, error: Optional[float], scale: float) -> str:
    if difference <= rel_tol:
        return PASS
    if error is None or difference * scale > ERROR_MARGIN * error:
        return DISTINGUISHED
    return INCONCLUSIVE


def compare_values(
    first: Sequence[float],
    second: Sequence[float],
    rel_tol: float,
    error_estimates: Optional[Sequence[Optional[float]]] = None,
    names: tuple[str, str] = ("first", "second"),
    offset: int = 0,
    unresolved: Collection[int] = (),
) -> ComparisonReport:
    """
    Compare two eigenvalue lists index by index.

    An index passes when its relative difference is at most rel_tol. It is
    distinguished when the difference also exceeds ERROR_MARGIN times its
    extrapolation error estimate (or when no estimate is given). Unresolved
    indices are INCONCLUSIVE whatever their difference. The overall verdict is
    PASS if every index passes, DISTINGUISHED if any index is, and
    INCONCLUSIVE otherwise.

    Args:
        first: First eigenvalues
        second: Second eigenvalues
        rel_tol: Relative tolerance (>= 0)
        error_estimates: Absolute error estimate of every index (larger of the two)
        names: Names of the two spectra
        offset: Index of the first compared eigenvalue in the full spectra
        unresolved: Positions (0-based, before the offset) with no reliable value

    Returns:
        ComparisonReport

    Raises:
        MismatchedSpectraError: If the lists have different lengths
    """
    if len(first) != len(second):
        raise MismatchedSpectraError(
            f"Cannot compare {len(first)} eigenvalues with {len(second)}"
        )
    if rel_tol < 0:
        raise ValueError("Relative tolerance must be >= 0")
    errors = list(error_estimates) if error_estimates is not None else [None] * len(first)
    differences = relative_differences(first, second)
    indices = []
    for i, (a, b, difference, error) in enumerate(zip(first, second, differences, errors)):
        if i in unresolved:
            verdict = INCONCLUSIVE
        else:
            verdict = _verdict(difference, rel_tol, error, max(abs(a), abs(b)))
        indices.append(
            IndexComparison(
                index=offset + i,
                first=a,
                second=b,
                relative_difference=difference,
                error_estimate=error,
                verdict=verdict,
            )
        )
    verdicts = {c.verdict for c in indices}
    if verdicts <= {PASS}:
        overall = PASS
    elif DISTINGUISHED in verdicts:
        overall = DISTINGUISHED
    else:
        overall = INCONCLUSIVE
    return ComparisonReport(
        first=names[0],
        second=names[1],
        rel_tol=rel_tol,
        offset=offset,
        indices=indices,
        verdict=overall,
    )


class CompareSpectra:
    """Use case for comparing the spectra of two surfaces."""

    def __init__(
        self,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize compare spectra use case.

        Args:
            logger: Optional logger function (run_id, stage, component, **kwargs)
            run_id: Run identifier passed to the logger
        """
        self._logger = logger
        self._run_id = run_id

    def _log(self, **kwargs: Any) -> None:
        if self._logger:
            self._logger(self._run_id, "spectral", "compare", **kwargs)

    def compare(
        self,
        first: SpectrumReport,
        second: SpectrumReport,
        count: int,
        rel_tol: float,
        skip: int = 0,
    ) -> ComparisonReport:
        """
        Compare eigenvalues skip..skip+count-1 of two spectra.

        Args:
            first: First spectrum
            second: Second spectrum
            count: Number of eigenvalues to compare
            rel_tol: Relative tolerance
            skip: Leading eigenvalues to ignore (e.g. the Neumann kernel)

        Returns:
            ComparisonReport

        Raises:
            MismatchedSpectraError: On different modes, refinements or too few
                eigenvalues
        """
        if (first.meta.mode, first.meta.refinement) != (second.meta.mode, second.meta.refinement):
            raise MismatchedSpectraError(
                "Spectra must share mode and refinement: "
                f"{first.meta.mode}/{first.meta.refinement} vs "
                f"{second.meta.mode}/{second.meta.refinement}"
            )
        available = min(len(first.eigenvalues), len(second.eigenvalues))
        if skip + count > available:
            raise MismatchedSpectraError(
                f"Requested {count} eigenvalues after {skip}, only {available} available"
            )
        report = compare_values(
            first.eigenvalues[skip : skip + count],
            second.eigenvalues[skip : skip + count],
            rel_tol,
            names=(first.meta.mesh, second.meta.mesh),
            offset=skip,
        )
        self._log(first=report.first, second=report.second, verdict=report.verdict)
        return report

    def compare_extrapolated(
        self,
        first: Sequence[Optional[float]],
        second: Sequence[Optional[float]],
        first_errors: Sequence[Optional[float]],
        second_errors: Sequence[Optional[float]],
        rel_tol: float,
        names: tuple[str, str] = ("first", "second"),
        offset: int = 0,
        first_finest: Optional[Sequence[float]] = None,
        second_finest: Optional[Sequence[float]] = None,
    ) -> ComparisonReport:
        """
        Compare extrapolated eigenvalues, using the larger error estimate per index.

        An index without an extrapolated value (a non-monotone sequence) is
        reported with its finest-level values, no error estimate and an
        INCONCLUSIVE verdict.

        Raises:
            MismatchedSpectraError: If an index has no extrapolated value and no
                finest-level value, or the lists differ in length
        """
        if len(first) != len(second):
            raise MismatchedSpectraError(
                f"Cannot compare {len(first)} eigenvalues with {len(second)}"
            )
        unresolved = [
            i for i, (a, b) in enumerate(zip(first, second)) if a is None or b is None
        ]
        if unresolved and (first_finest is None or second_finest is None):
            raise MismatchedSpectraError(
                f"Indices {[offset + i for i in unresolved]} have no extrapolated value"
            )
        values: list[list[float]] = [[], []]
        errors: list[Optional[float]] = []
        for i, (a, b, e1, e2) in enumerate(zip(first, second, first_errors, second_errors)):
            if i in unresolved:
                values[0].append(first_finest[i])
                values[1].append(second_finest[i])
                errors.append(None)
            else:
                values[0].append(a)
                values[1].append(b)
                errors.append(max(e1 or 0.0, e2 or 0.0))
        report = compare_values(
            values[0],
            values[1],
            rel_tol,
            errors,
            names=names,
            offset=offset,
            unresolved=unresolved,
        )
        self._log(
            first=names[0],
            second=names[1],
            verdict=report.verdict,
            extrapolated=True,
            unresolved=[offset + i for i in unresolved],
        )
        return report
