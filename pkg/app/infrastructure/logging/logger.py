"""Structured logger for pipeline stages."""

import logging
from typing import Any, Optional

from app.infrastructure.config.settings import settings

_logger = logging.getLogger("isospectral_surfaces")
_logger.setLevel(getattr(logging, settings.log_level.upper(), logging.INFO))

if not _logger.handlers:
    handler = logging.StreamHandler()
    handler.setLevel(logging.DEBUG)
    formatter = logging.Formatter(
        "%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    handler.setFormatter(formatter)
    _logger.addHandler(handler)


def log_stage(
    run_id: str,
    stage: str,
    component: str,
    level: int = logging.INFO,
    **kwargs: Any,
) -> None:
    """
    Log structured event for a pipeline stage.

    Args:
        run_id: Run identifier
        stage: Stage name (e.g., 'group', 'surfaces', 'neumann')
        component: Component name (e.g., 'solver', 'transplant')
        level: Log level (default: INFO)
        **kwargs: Additional structured fields to log
    """
    fields = {
        "run_id": run_id,
        "stage": stage,
        "component": component,
    }
    fields.update(kwargs)

    log_parts = [f"{k}={v!r}" for k, v in fields.items()]
    _logger.log(level, " | ".join(log_parts))


def log_group_check(run_id: str, h1: str, h2: str, verdict: str, **kwargs: Any) -> None:
    """
    Log a Gassmann triple check.

    Args:
        run_id: Run identifier
        h1: First subgroup
        h2: Second subgroup
        verdict: PASS or FAIL
        **kwargs: Additional fields
    """
    log_stage(run_id, "group", "triple", h1=h1, h2=h2, verdict=verdict, **kwargs)


def log_mesh_assembly(
    run_id: str,
    surface: str,
    node_count: int,
    euler_characteristic: int,
    **kwargs: Any,
) -> None:
    """
    Log a surface assembly.

    Args:
        run_id: Run identifier
        surface: Surface name
        node_count: Nodes after gluing
        euler_characteristic: V - E + F
        **kwargs: Additional fields
    """
    log_stage(
        run_id,
        "surfaces",
        "tiler",
        surface=surface,
        node_count=node_count,
        euler_characteristic=euler_characteristic,
        **kwargs,
    )


def log_solver_run(
    run_id: str,
    mesh: str,
    dof_count: int,
    solver: str,
    iterations: Optional[int] = None,
    **kwargs: Any,
) -> None:
    """
    Log an eigensolver run.

    Args:
        run_id: Run identifier
        mesh: Mesh name
        dof_count: Degrees of freedom
        solver: dense or shift_invert
        iterations: Operator applications, if counted
        **kwargs: Additional fields
    """
    fields: dict[str, Any] = {"mesh": mesh, "dof_count": dof_count, "solver": solver}
    if iterations is not None:
        fields["iterations"] = iterations
    fields.update(kwargs)
    log_stage(run_id, "spectral", "solver", **fields)


def log_spectrum_comparison(
    run_id: str, first: str, second: str, verdict: str, **kwargs: Any
) -> None:
    """
    Log a spectrum comparison.

    Args:
        run_id: Run identifier
        first: First spectrum
        second: Second spectrum
        verdict: PASS, DISTINGUISHED or INCONCLUSIVE
        **kwargs: Additional fields
    """
    log_stage(
        run_id, "spectral", "compare", first=first, second=second, verdict=verdict, **kwargs
    )


def log_transplant_check(
    run_id: str, direction: str, max_residual: float, max_edge_mismatch: float, **kwargs: Any
) -> None:
    """
    Log a transplantation check.

    Args:
        run_id: Run identifier
        direction: forward or inverse
        max_residual: Largest eigen-residual
        max_edge_mismatch: Largest glued-edge mismatch
        **kwargs: Additional fields
    """
    log_stage(
        run_id,
        "transplant",
        "transplant",
        direction=direction,
        max_residual=max_residual,
        max_edge_mismatch=max_edge_mismatch,
        **kwargs,
    )


logger = _logger
