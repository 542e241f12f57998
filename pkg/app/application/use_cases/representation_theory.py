"""Representation-theoretic analysis of the Gerst triple."""

from collections.abc import Sequence
from typing import Any, Callable, Optional

from app.application.dtos.group import (
    CharacterRow,
    CharacterTableReport,
    DecompositionReport,
    GraphReport,
    IntertwinerReport,
)
from app.domain.entities.finite_group import (
    GERST_GENERATOR_LABELS,
    CosetAction,
    FiniteGroup,
    build_gerst_group,
    coset_action,
    generator_set,
    gerst_subgroup,
)
from app.domain.entities.representations import (
    CharacterTable,
    PermRep,
    character_table,
    decompose,
    induced_character,
    intertwiner_space,
    is_intertwiner,
)
from app.domain.entities.schreier_graph import SchreierGraph, build_schreier, is_orientable
from app.domain.value_objects.transplant_matrix import (
    TransplantMatrix,
    transplantation_matrix,
)


class RepresentationAnalysis:
    """Use case for characters, coset actions and intertwiners of the Gerst group."""

    def __init__(
        self,
        group: Optional[FiniteGroup] = None,
        logger: Optional[Callable[..., None]] = None,
        run_id: str = "local",
    ) -> None:
        """
        Initialize representation analysis.

        Args:
            group: Gerst group (built on demand when omitted)
            logger: Optional logger function (run_id, stage, component, **kwargs)
            run_id: Run identifier passed to the logger
        """
        self._group = group or build_gerst_group()
        self._logger = logger
        self._run_id = run_id
        self._table: Optional[CharacterTable] = None

    def _log(self, component: str, **kwargs: Any) -> None:
        if self._logger:
            self._logger(self._run_id, "group", component, **kwargs)

    @property
    def group(self) -> FiniteGroup:
        return self._group

    def table(self) -> CharacterTable:
        """Character table (computed once)."""
        if self._table is None:
            self._table = character_table(self._group)
        return self._table

    def action(self, subgroup: str, generators: str = "sigma_t_u") -> CosetAction:
        """Action of a named generator set on G/H, labelled Σ, T, U."""
        return coset_action(
            self._group,
            gerst_subgroup(self._group, subgroup),
            generator_set(self._group, generators),
            GERST_GENERATOR_LABELS,
        )

    def schreier_graph(self, subgroup: str, generators: str = "sigma_t_u") -> SchreierGraph:
        """Schreier graph of G/H for a named generator set."""
        return build_schreier(self.action(subgroup, generators))

    def graph_report(self, subgroup: str, generators: str = "sigma_t_u") -> GraphReport:
        """
        Build the Schreier graph of G/H and decide orientability.

        Args:
            subgroup: Subgroup name
            generators: Generator set name

        Returns:
            GraphReport with a 2-colouring or an odd-cycle witness
        """
        graph = self.schreier_graph(subgroup, generators)
        verdict = is_orientable(graph)
        self._log(
            "schreier",
            subgroup=subgroup,
            generators=generators,
            orientable=verdict.orientable,
            witness_cycle=verdict.witness_cycle,
        )
        return GraphReport(
            subgroup=subgroup,
            generator_set=generators,
            generators=[self._group.name(g) for g in generator_set(self._group, generators)],
            vertex_count=graph.vertex_count,
            full_edges=[tuple(edge) for edge in graph.full_edges],
            half_edges=[tuple(edge) for edge in graph.half_edges],
            orientable=verdict.orientable,
            coloring=list(verdict.coloring) if verdict.coloring is not None else None,
            witness_cycle=list(verdict.witness_cycle) if verdict.witness_cycle else None,
            witness_labels=list(verdict.witness_labels) if verdict.witness_labels else None,
        )

    def character_table_report(self) -> CharacterTableReport:
        """Character table in printed order with orthogonality checks."""
        table = self.table()
        rows = [
            CharacterRow(name=name, dimension=dim, values=character.as_strings())
            for (name, character), dim in zip(table.rows, table.dimensions())
        ]
        report = CharacterTableReport(
            classes=[self._group.name(rep) for rep in table.class_reps],
            class_sizes=list(table.class_sizes),
            rows=rows,
            orthonormal=table.is_orthonormal(),
            column_orthogonal=table.column_orthogonality(),
        )
        self._log("characters", orthonormal=report.orthonormal)
        return report

    def decomposition(self, subgroup: str) -> DecompositionReport:
        """
        Decompose the permutation character of C[G/H] into irreducibles.

        Args:
            subgroup: Subgroup name

        Returns:
            DecompositionReport

        Raises:
            NotACharacterError: If the induced character does not decompose
        """
        table = self.table()
        induced = induced_character(
            self._group, gerst_subgroup(self._group, subgroup), table.class_reps
        )
        multiplicities = decompose(induced, table)
        components = [name for name, m in multiplicities.items() if m > 0]
        self._log("decompose", subgroup=subgroup, components=components)
        return DecompositionReport(
            subgroup=subgroup,
            induced=induced.as_strings(),
            multiplicities=multiplicities,
            components=components,
        )

    def permutation_representations(
        self, h1: str = "gamma1", h2: str = "gamma2", generators: str = "sigma_t_u"
    ) -> tuple[PermRep, PermRep]:
        """Permutation representations of the generators on G/H1 and G/H2."""
        return (
            PermRep.from_action(self.action(h1, generators)),
            PermRep.from_action(self.action(h2, generators)),
        )

    def intertwiners(
        self,
        parameters: Sequence = (6, -2, 2, 2),
        h1: str = "gamma1",
        h2: str = "gamma2",
        generators: str = "sigma_t_u",
    ) -> tuple[IntertwinerReport, TransplantMatrix]:
        """
        Solve for all intertwiners C[G/H1] -> C[G/H2] and build the transplantation matrix.

        Args:
            parameters: (a, b, c, d) of the transplantation matrix
            h1: Source subgroup
            h2: Target subgroup
            generators: Generator set used for the permutation matrices

        Returns:
            (report, transplantation matrix)
        """
        first, second = self.permutation_representations(h1, h2, generators)
        basis = intertwiner_space(first, second)
        matrix = transplantation_matrix(*parameters)
        intertwines = is_intertwiner(matrix.entries, first, second)
        self._log(
            "intertwine",
            dimension=len(basis),
            parameters=[str(p) for p in matrix.parameters()],
            intertwines=intertwines,
        )
        report = IntertwinerReport(
            dimension=len(basis),
            basis_first_rows=[[str(v) for v in b.row(0)] for b in basis],
            parameters=[str(p) for p in matrix.parameters()],
            alpha=str(matrix.alpha),
            beta=str(matrix.beta),
            gamma=str(matrix.gamma),
            delta=str(matrix.delta),
            matrix=[[str(v) for v in row] for row in matrix.entries.tolist()],
            intertwines=intertwines,
            invertible=not matrix.singular,
        )
        return report, matrix

