"""Application ports (interfaces)."""
