"""Spectrum DTOs."""

from typing import Optional

from pydantic import ConfigDict

from app.application.dtos.base import DTO

PASS = "PASS"
DISTINGUISHED = "DISTINGUISHED"
INCONCLUSIVE = "INCONCLUSIVE"
FAIL = "FAIL"


class SpectrumMeta(DTO):
    """Provenance of an eigenvalue computation."""

    mesh: str
    refinement: int
    bc: str
    mode: str
    dof_count: int
    solver: str
    iterations: int
    seed: int
    tolerance: float


class SpectrumReport(DTO):
    """Lowest eigenvalues with residuals and multiplicity clusters."""

    eigenvalues: list[float]
    residuals: list[float]
    clusters: list[int]
    meta: SpectrumMeta

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "eigenvalues": [0.0, 9.8697, 9.8697, 19.7392],
                "residuals": [1e-13, 2e-12, 2e-12, 3e-12],
                "clusters": [0, 1, 1, 2],
                "meta": {
                    "mesh": "square",
                    "refinement": 16,
                    "bc": "neumann",
                    "mode": "fem",
                    "dof_count": 289,
                    "solver": "dense",
                    "iterations": 0,
                    "seed": 0,
                    "tolerance": 1e-8,
                },
            }
        }
    )

    def zero_count(self, tolerance: float = 1e-8) -> int:
        """Number of eigenvalues that vanish relative to the largest one."""
        scale = max((abs(v) for v in self.eigenvalues), default=0.0)
        return sum(1 for v in self.eigenvalues if abs(v) <= tolerance * max(scale, 1.0))

    def nonzero(self, tolerance: float = 1e-8) -> list[float]:
        """Eigenvalues after the kernel."""
        return self.eigenvalues[self.zero_count(tolerance):]


class ConvergenceReport(DTO):
    """Eigenvalue sequences over refinement levels with Richardson extrapolation."""

    levels: list[int]
    sequences: list[list[float]]
    extrapolated: list[Optional[float]]
    error_estimates: list[Optional[float]]
    observed_orders: list[Optional[float]]
    monotone: list[bool]
    reports: list[SpectrumReport]


class IndexComparison(DTO):
    """Comparison of the i-th eigenvalues of two spectra."""

    index: int
    first: float
    second: float
    relative_difference: float
    error_estimate: Optional[float] = None
    verdict: str


class ComparisonReport(DTO):
    """Per-index comparison of two spectra."""

    first: str
    second: str
    rel_tol: float
    offset: int
    indices: list[IndexComparison]
    verdict: str


class FeffermanReport(DTO):
    """Lowest Dirichlet eigenvalues of the doubled domains C and S and the half tile L."""

    tile: str
    mode: str
    levels: list[int]
    lambda_c: list[float]
    lambda_s: list[float]
    lambda_l_mixed: list[float]
    extrapolated_c: Optional[float] = None
    extrapolated_s: Optional[float] = None
    error_c: Optional[float] = None
    error_s: Optional[float] = None
    observed_order_c: Optional[float] = None
    restricted_rayleigh_quotient: float
    c_matches_half_tile: bool
    congruent: bool
    verdict: str
