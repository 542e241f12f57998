"""Unit tests for Schreier graphs and their combinatorial topology."""

import pytest

from app.domain.entities.finite_group import (
    GERST_GENERATOR_LABELS,
    CosetAction,
    build_gerst_group,
    coset_action,
    generator_set,
    gerst_subgroup,
)
from app.domain.entities.schreier_graph import (
    SchreierGraph,
    boundary_walks,
    build_schreier,
    corner_orbits,
    euler_characteristic,
    is_orientable,
)
from app.domain.errors import NonInvolutiveGeneratorError

TRIANGLE_EDGES = ("T", "Σ", "U")


def schreier(subgroup: str, generators: str = "sigma_t_u") -> SchreierGraph:
    """Schreier graph of G/H for a named subgroup."""
    group = build_gerst_group()
    action = coset_action(
        group,
        gerst_subgroup(group, subgroup),
        generator_set(group, generators),
        GERST_GENERATOR_LABELS,
    )
    return build_schreier(action)


class TestBuildSchreier:
    """Test cases for build_schreier."""

    def test_gamma1_edges(self) -> None:
        """Test full edges and half-edges of G/Γ1."""
        graph = schreier("gamma1")

        assert graph.vertex_count == 8
        assert set(graph.full_edges) == {
            (0, 1, "Σ"),
            (2, 7, "Σ"),
            (3, 6, "Σ"),
            (4, 5, "Σ"),
            (1, 7, "T"),
            (2, 6, "T"),
            (3, 5, "T"),
            (1, 3, "U"),
            (2, 6, "U"),
            (5, 7, "U"),
        }
        assert set(graph.half_edges) == {(0, "T"), (4, "T"), (0, "U"), (4, "U")}

    def test_gamma2_edges(self) -> None:
        """Test that G/Γ2 differs from G/Γ1 only in its U edges."""
        graph = schreier("gamma2")

        u_edges = {(a, b) for a, b, label in graph.full_edges if label == "U"}
        assert u_edges == {(0, 4), (1, 7), (3, 5)}
        assert {x for x, label in graph.half_edges if label == "U"} == {2, 6}

    def test_neighbors(self) -> None:
        """Test neighbor lookups, with None at half-edges."""
        graph = schreier("gamma1")

        assert graph.neighbor(1, "U") == 3
        assert graph.neighbor(0, "T") is None
        table = graph.neighbor_table()
        assert table["Σ"] == (1, 0, 7, 6, 5, 4, 3, 2)
        assert table["T"][4] is None

    def test_networkx_view(self) -> None:
        """Test the multigraph keeps parallel edges with distinct labels."""
        graph = schreier("gamma1").to_networkx()

        assert graph.number_of_nodes() == 8
        assert graph.number_of_edges() == 10
        assert graph.number_of_edges(2, 6) == 2

    def test_non_involutive_generator(self) -> None:
        """Test that a generator of order > 2 is rejected."""
        group = build_gerst_group()
        action = coset_action(group, gerst_subgroup(group, "gamma1"), [group.evaluate("s")])

        with pytest.raises(NonInvolutiveGeneratorError):
            build_schreier(action)

    def test_invalid_graph(self) -> None:
        """Test that a vertex meeting a label twice is rejected."""
        with pytest.raises(ValueError):
            SchreierGraph(
                vertex_count=2, full_edges=((0, 1, "T"),), half_edges=((0, "T"),), labels=("T",)
            )

    def test_non_bijective_action(self) -> None:
        """Test that a coset action must permute the cosets."""
        with pytest.raises(ValueError):
            CosetAction(coset_count=2, reps=(0, 1), perm=((0, 0),), generator_labels=("T",))


class TestAutomorphisms:
    """Test cases for graph automorphisms."""

    def test_central_shift_is_automorphism(self) -> None:
        """Test that x -> x + 4 preserves both graphs."""
        shift = [(x + 4) % 8 for x in range(8)]

        assert schreier("gamma1").is_automorphism(shift)
        assert schreier("gamma2").is_automorphism(shift)

    def test_rotation_is_not_automorphism(self) -> None:
        """Test that x -> x + 1 does not preserve G/Γ1."""
        assert not schreier("gamma1").is_automorphism([(x + 1) % 8 for x in range(8)])
        assert not schreier("gamma1").is_automorphism([0] * 8)


class TestOrientability:
    """Test cases for is_orientable."""

    def test_gamma1_nonorientable(self) -> None:
        """Test the least shortest odd cycle of G/Γ1."""
        verdict = is_orientable(schreier("gamma1"))

        assert not verdict.orientable
        assert verdict.coloring is None
        assert verdict.witness_cycle == (1, 3, 6, 2, 7)
        assert verdict.witness_labels == ("U", "Σ", "T", "Σ", "T")

    def test_gamma2_orientable(self) -> None:
        """Test the normalized two-colouring of G/Γ2."""
        verdict = is_orientable(schreier("gamma2"))

        assert verdict.orientable
        assert verdict.witness_cycle is None
        assert verdict.coloring == (0, 1, 1, 1, 1, 0, 0, 0)

    def test_coloring_is_proper(self) -> None:
        """Test that every full edge joins opposite colours."""
        graph = schreier("gamma2")
        coloring = is_orientable(graph).coloring

        assert all(coloring[a] != coloring[b] for a, b, _ in graph.full_edges)


class TestTopology:
    """Test cases for corner orbits, boundary walks and Euler characteristic."""

    def test_triangle_corner_orbits(self) -> None:
        """Test the corner orbits of the triangle glued along G/Γ1."""
        orbits = corner_orbits(schreier("gamma1"), TRIANGLE_EDGES)
        tu_corners = [orbit for orbit in orbits if all(c == 0 for _, c in orbit)]

        assert sorted(sorted(x for x, _ in orbit) for orbit in tu_corners) == [
            [0],
            [1, 3, 5, 7],
            [2, 6],
            [4],
        ]
        assert len(orbits) == 6

    def test_triangle_euler_characteristic(self) -> None:
        """Test that both triangle surfaces are annuli (χ = 0)."""
        for generators in ("sigma_t_u", "st_t_tu"):
            for subgroup in ("gamma1", "gamma2"):
                assert euler_characteristic(schreier(subgroup, generators), TRIANGLE_EDGES) == 0

    def test_triangle_annuli(self) -> None:
        """Test that generators st, t, tu give two annuli with two boundary curves each."""
        for subgroup in ("gamma1", "gamma2"):
            graph = schreier(subgroup, "st_t_tu")
            assert is_orientable(graph).orientable
            assert len(boundary_walks(graph, TRIANGLE_EDGES)) == 2

    def test_triangle_mobius_band(self) -> None:
        """Test that σ, t, u glue the triangle over G/Γ1 into a Möbius band."""
        walks = boundary_walks(schreier("gamma1"), TRIANGLE_EDGES)
        visited = [step for walk in walks for step in walk]

        assert len(walks) == 1
        assert sorted(visited) == [(0, 0), (0, 2), (4, 0), (4, 2)]
        assert len(boundary_walks(schreier("gamma2"), TRIANGLE_EDGES)) == 2

    def test_missing_label(self) -> None:
        """Test that a tile must carry every graph label."""
        with pytest.raises(ValueError):
            boundary_walks(schreier("gamma1"), ("T", None, "U"))

    def test_ytile_euler_characteristic(self) -> None:
        """Test χ = -2 for the Y-shaped tile on both coset graphs."""
        edges = (None, None, "Σ", None, None, None, "T", None, None, None, "U", None)

        assert euler_characteristic(schreier("gamma1"), edges) == -2
        assert euler_characteristic(schreier("gamma2"), edges) == -2
