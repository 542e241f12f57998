"""Unit tests for the BCAssignment value object."""

import pytest

from app.domain.value_objects.boundary_conditions import DIRICHLET, NEUMANN, BCAssignment


def test_uniform_assignment():
    """Test the same condition on every segment."""
    bc = BCAssignment.uniform(["0T", "0U"], DIRICHLET)

    assert bc.label == DIRICHLET
    assert bc.dirichlet_names == ("0T", "0U")
    assert bc.neumann_names == ()
    assert bc.kind_of("0U") == DIRICHLET


def test_mixed_assignment():
    """Test Neumann on listed segments and Dirichlet elsewhere."""
    bc = BCAssignment.mixed(["E", "0free1", "0free2"], ["E"])

    assert bc.label == "mixed"
    assert bc.neumann_names == ("E",)
    assert bc.dirichlet_names == ("0free1", "0free2")


def test_mixed_with_neumann_default():
    """Test that an all-Neumann mixed assignment is labelled neumann."""
    bc = BCAssignment.mixed(["a", "b"], ["a"], default=NEUMANN)

    assert bc.label == NEUMANN


def test_mixed_unknown_segment():
    """Test that Neumann segments must exist."""
    with pytest.raises(ValueError):
        BCAssignment.mixed(["a", "b"], ["c"])


def test_duplicate_segment():
    """Test that a segment cannot be assigned twice."""
    with pytest.raises(ValueError):
        BCAssignment(kinds=(("a", NEUMANN), ("a", DIRICHLET)))


def test_unknown_kind():
    """Test that only Neumann and Dirichlet conditions exist."""
    with pytest.raises(ValueError):
        BCAssignment(kinds=(("a", "robin"),))


def test_covers():
    """Test coverage of segment names."""
    bc = BCAssignment.uniform(["a", "b"], NEUMANN)

    assert bc.covers(["a"])
    assert not bc.covers(["a", "c"])
    assert BCAssignment(kinds=()).label == NEUMANN
