"""Verify a Gassmann-Sunada triple use case."""

from typing import Any, Callable, Optional

from app.application.dtos.group import ClassCount, TripleReport
from app.domain.entities.finite_group import (
    FiniteGroup,
    almost_conjugate,
    are_conjugate_subgroups,
    build_gerst_group,
    conjugacy_classes,
    gerst_subgroup,
)

GROUPS: dict[str, Callable[[], FiniteGroup]] = {"gerst": build_gerst_group}


class VerifyTriple:
    """Use case for deciding whether (G, H1, H2) is a Gassmann-Sunada triple."""

    def __init__(
        self,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize verify triple use case.

        Args:
            logger: Optional logger function (run_id, stage, component, **kwargs)
            run_id: Run identifier passed to the logger
        """
        self._logger = logger
        self._run_id = run_id

    def _log(self, component: str, **kwargs: Any) -> None:
        if self._logger:
            self._logger(self._run_id, "group", component, **kwargs)

    def execute(self, h1: str, h2: str, group: str = "gerst") -> TripleReport:
        """
        Check almost conjugacy and nonconjugacy of two named subgroups.

        The verdict is PASS when the subgroups are almost conjugate; `nontrivial`
        additionally requires that they are not conjugate.

        Args:
            h1: First subgroup name (gamma1, gamma2, cyclic8)
            h2: Second subgroup name
            group: Group name

        Returns:
            TripleReport with witness bijection or failing class

        Raises:
            ValueError: For an unknown group or subgroup name
        """
        if group not in GROUPS:
            raise ValueError(f"Unknown group '{group}'; expected one of {sorted(GROUPS)}")
        g = GROUPS[group]()
        first, second = gerst_subgroup(g, h1), gerst_subgroup(g, h2)
        verdict = almost_conjugate(g, first, second)
        conjugate = are_conjugate_subgroups(g, first, second)
        sizes = {cls.representative: cls.size for cls in conjugacy_classes(g)}
        counts = [
            ClassCount(
                representative=g.name(rep), class_size=sizes[rep], h1_count=n1, h2_count=n2
            )
            for rep, n1, n2 in verdict.class_counts
        ]
        witness = {g.name(x): g.name(y) for x, y in sorted((verdict.witness or {}).items())}
        report = TripleReport(
            group=group,
            group_order=g.order,
            h1=h1,
            h2=h2,
            almost_conjugate=verdict.almost_conjugate,
            conjugate=conjugate,
            nontrivial=verdict.almost_conjugate and not conjugate,
            class_counts=counts,
            witness=witness,
            failing_class=(
                g.name(verdict.failing_class.representative) if verdict.failing_class else None
            ),
            verdict="PASS" if verdict.almost_conjugate else "FAIL",
        )
        self._log(
            "triple",
            h1=h1,
            h2=h2,
            verdict=report.verdict,
            conjugate=conjugate,
            failing_class=report.failing_class,
        )
        return report
