"""Dependency injection and wiring."""
