"""Golden tests for regression prevention."""
