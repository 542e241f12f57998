"""Domain errors."""

from typing import Any, Optional


class IsospectralError(ValueError):
    """Base class for all errors raised by the isospectral surfaces toolkit."""


class NotASubgroupError(IsospectralError):
    """Raised when a set of elements is not closed under the group law."""


class NonInvolutiveGeneratorError(IsospectralError):
    """Raised when a Schreier graph is requested for a non-involutive generator."""


class UnknownTileError(IsospectralError):
    """Raised for an unknown builtin tile name."""


class DegeneratePolygonError(IsospectralError):
    """Raised when a tile polygon or one of its macro triangles has no area."""


class LabelMismatchError(IsospectralError):
    """Raised when graph labels are not carried by the tile."""


class NonConformingMeshError(IsospectralError):
    """Raised when glued edges do not carry matching node layouts."""


class NotAGraphAutomorphismError(IsospectralError):
    """Raised when a tile permutation does not preserve the labeled graph."""


class OverlappingDomainError(IsospectralError):
    """Raised when a planar half domain overlaps its image."""


class UnknownRepresentationError(IsospectralError):
    """Raised for an unknown irreducible representation name."""


class NotACharacterError(IsospectralError):
    """Raised when a class function has non-integral or negative multiplicities."""


class EmptyDofSetError(IsospectralError):
    """Raised when boundary conditions eliminate every degree of freedom."""


class ZeroDenominatorError(IsospectralError):
    """Raised when a Rayleigh quotient is requested for a zero vector."""


class MismatchedSpectraError(IsospectralError):
    """Raised when two spectra cannot be compared index by index."""


class SolverConvergenceError(IsospectralError):
    """Raised when the eigensolver exhausts its iteration budget."""

    def __init__(self, message: str, partial_eigenvalues: Optional[list[float]] = None) -> None:
        """
        Initialize solver convergence error.

        Args:
            message: Human-readable description
            partial_eigenvalues: Eigenvalues that did converge, if any
        """
        super().__init__(message)
        self.partial_eigenvalues = partial_eigenvalues or []


class GluingConsistencyError(IsospectralError):
    """Raised when a transplanted function does not respect the target gluing."""

    def __init__(self, message: str, gluing: str, residual: float) -> None:
        """
        Initialize gluing consistency error.

        Args:
            message: Human-readable description
            gluing: Description of the offending glued edge
            residual: Largest trace mismatch on that edge
        """
        super().__init__(message)
        self.gluing = gluing
        self.residual = residual


class PipelineStageError(IsospectralError):
    """Raised when a pipeline stage fails."""

    def __init__(self, stage: str, message: str, diagnostics: Optional[dict[str, Any]] = None):
        """
        Initialize pipeline stage error.

        Args:
            stage: Name of the failing stage
            message: Human-readable description
            diagnostics: Structured details for the report
        """
        super().__init__(f"stage '{stage}' failed: {message}")
        self.stage = stage
        self.diagnostics = diagnostics or {}


class NonMonotoneSequenceError(IsospectralError):
    """Raised when a refinement sequence is not monotone and cannot be extrapolated."""
